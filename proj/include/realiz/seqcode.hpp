#pragma once

// Coding of finite sequences of naturals as naturals.
//
// code(<x0, ..., x(n-1)>) = sum_i 2^(x0 + ... + xi + i)
//
// i.e. the binary expansion reads 1 0^x0 1 0^x1 ... from the least significant
// bit. The map is a bijection between finite sequences and naturals, the empty
// sequence has code 0, length is the popcount, and concatenation is
// a + b * 2^bitlen(a). Codes that do not fit in 64 bits are reported as absent.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace realiz {

using Nat = std::uint64_t;

namespace seq {

std::optional<Nat> encode(std::span<const Nat> s);
std::vector<Nat> decode(Nat code);

Nat length(Nat code);
/// Number of bits used by the code; equals sum of entries plus length.
Nat bit_length(Nat code);
/// Entry i, or 0 when i is out of range.
Nat at(Nat code, Nat i);
std::optional<Nat> snoc(Nat code, Nat y);
std::optional<Nat> concat(Nat a, Nat b);
/// Code of the first n entries (n clipped to the length).
Nat take(Nat code, Nat n);

}  // namespace seq

namespace arith {

Nat add(Nat a, Nat b);  // throws ArithmeticOverflow
Nat mul(Nat a, Nat b);
Nat pow2(Nat e);

}  // namespace arith

}  // namespace realiz

#include "realiz/seqcode.hpp"

#include <bit>

#include "realiz/errors.hpp"

namespace realiz {
namespace seq {

std::optional<Nat> encode(std::span<const Nat> s) {
  Nat code = 0;
  Nat pos = 0;
  bool first = true;
  for (Nat x : s) {
    Nat p = first ? x : pos + 1 + x;
    if (p < pos || p >= 64 || (!first && x >= 64)) return std::nullopt;
    code |= Nat{1} << p;
    pos = p;
    first = false;
  }
  return code;
}

std::vector<Nat> decode(Nat code) {
  std::vector<Nat> out;
  out.reserve(std::popcount(code));
  Nat prev = 0;
  bool first = true;
  while (code != 0) {
    Nat p = static_cast<Nat>(std::countr_zero(code));
    out.push_back(first ? p : p - prev - 1);
    prev = p;
    first = false;
    code &= code - 1;
  }
  return out;
}

Nat length(Nat code) { return static_cast<Nat>(std::popcount(code)); }

Nat bit_length(Nat code) { return static_cast<Nat>(std::bit_width(code)); }

Nat at(Nat code, Nat i) {
  auto s = decode(code);
  return i < s.size() ? s[i] : 0;
}

std::optional<Nat> snoc(Nat code, Nat y) {
  Nat p = bit_length(code);
  if (y >= 64 || p + y >= 64) return std::nullopt;
  return code | (Nat{1} << (p + y));
}

std::optional<Nat> concat(Nat a, Nat b) {
  Nat shift = bit_length(a);
  if (b == 0) return a;
  if (shift + bit_length(b) > 64) return std::nullopt;
  return a | (b << shift);
}

Nat take(Nat code, Nat n) {
  Nat out = 0;
  for (Nat i = 0; i < n && code != 0; ++i) {
    Nat low = code & (~code + 1);
    out |= low;
    code &= code - 1;
  }
  return out;
}

}  // namespace seq

namespace arith {

Nat add(Nat a, Nat b) {
  Nat r = a + b;
  if (r < a) throw ArithmeticOverflow("natural addition overflow");
  return r;
}

Nat mul(Nat a, Nat b) {
  Nat r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticOverflow("natural multiplication overflow");
  return r;
}

Nat pow2(Nat e) {
  if (e >= 64) throw ArithmeticOverflow("power of two overflow");
  return Nat{1} << e;
}

}  // namespace arith
}  // namespace realiz

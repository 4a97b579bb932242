#include "realiz/symbols.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>

#include "realiz/errors.hpp"

namespace realiz {

namespace {

Nat truncated_sub(Nat a, Nat b) { return a > b ? a - b : 0; }

mpq_class rational_of(Nat code) {
  auto [num, den] = decode_rational(code);
  mpq_class q(mpz_class(static_cast<long>(num)), mpz_class(static_cast<unsigned long>(den)));
  q.canonicalize();
  return q;
}

// 2^(1-s) as a rational.
mpq_class two_pow_one_minus(Nat s) {
  if (s == 0) return mpq_class(2);
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, static_cast<unsigned long>(s - 1));
  return mpq_class(mpz_class(1), den);
}

mpq_class two_pow_minus(Nat s) {
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, static_cast<unsigned long>(s));
  return mpq_class(mpz_class(1), den);
}

}  // namespace

Nat cantor_pair(Nat a, Nat b) {
  Nat s = arith::add(a, b);
  Nat t = arith::mul(s, arith::add(s, 1)) / 2;
  return arith::add(t, b);
}

std::pair<Nat, Nat> cantor_unpair(Nat z) {
  // w = floor((sqrt(8z + 1) - 1) / 2), corrected for rounding.
  long double root = std::sqrt(8.0L * static_cast<long double>(z) + 1.0L);
  Nat w = static_cast<Nat>((root - 1.0L) / 2.0L);
  auto tri = [](Nat v) {
    unsigned __int128 x = v;
    return x * (x + 1) / 2;
  };
  while (tri(w) > z) --w;
  while (tri(w + 1) <= z) ++w;
  Nat b = z - static_cast<Nat>(tri(w));
  return {w - b, b};
}

Nat encode_rational(std::int64_t num, std::uint64_t den) {
  if (den == 0) throw InvalidArgument("rational with zero denominator");
  Nat zz = num >= 0 ? arith::mul(2, static_cast<Nat>(num)) : arith::add(arith::mul(2, static_cast<Nat>(-(num + 1))), 1);
  return cantor_pair(zz, den - 1);
}

std::pair<std::int64_t, std::uint64_t> decode_rational(Nat code) {
  auto [zz, d] = cantor_unpair(code);
  std::int64_t num = (zz % 2 == 0) ? static_cast<std::int64_t>(zz / 2) : -static_cast<std::int64_t>(zz / 2) - 1;
  return {num, d + 1};
}

const SymbolTable& SymbolTable::builtin() {
  static const SymbolTable table;
  return table;
}

void SymbolTable::add(std::string name, std::size_t arity, std::function<Nat(std::span<const Nat>)> eval,
                      std::string summary) {
  symbols_.push_back(Symbol{std::move(name), arity, std::move(eval), std::move(summary)});
}

SymbolTable::SymbolTable() {
  using A = std::span<const Nat>;
  add("add", 2, [](A a) { return arith::add(a[0], a[1]); }, "x + y");
  add("mul", 2, [](A a) { return arith::mul(a[0], a[1]); }, "x * y");
  add("sub", 2, [](A a) { return truncated_sub(a[0], a[1]); }, "truncated x - y");
  add("pred", 1, [](A a) { return truncated_sub(a[0], 1); }, "truncated x - 1");
  add("sg", 1, [](A a) -> Nat { return a[0] == 0 ? 0 : 1; }, "0 if x = 0 else 1");
  add("eq", 2, [](A a) -> Nat { return a[0] == a[1] ? 1 : 0; }, "1 if x = y else 0");
  add("le", 2, [](A a) -> Nat { return a[0] <= a[1] ? 1 : 0; }, "1 if x <= y else 0");
  add("lt", 2, [](A a) -> Nat { return a[0] < a[1] ? 1 : 0; }, "1 if x < y else 0");
  add("min", 2, [](A a) { return std::min(a[0], a[1]); }, "minimum");
  add("max", 2, [](A a) { return std::max(a[0], a[1]); }, "maximum");
  add("div", 2, [](A a) -> Nat { return a[1] == 0 ? 0 : a[0] / a[1]; }, "floor(x / y), 0 when y = 0");
  add("mod", 2, [](A a) -> Nat { return a[1] == 0 ? a[0] : a[0] % a[1]; }, "x mod y, x when y = 0");
  add("pow2", 1, [](A a) { return arith::pow2(a[0]); }, "2^x");
  add("cond", 3, [](A a) { return a[0] == 0 ? a[1] : a[2]; }, "y if x = 0 else z");
  add("pair", 2, [](A a) { return cantor_pair(a[0], a[1]); }, "Cantor pairing");
  add("left", 1, [](A a) { return cantor_unpair(a[0]).first; }, "first Cantor component");
  add("right", 1, [](A a) { return cantor_unpair(a[0]).second; }, "second Cantor component");
  add("len", 1, [](A a) { return seq::length(a[0]); }, "length of a sequence code");
  add("at", 2, [](A a) { return seq::at(a[0], a[1]); }, "entry y of sequence x, 0 out of range");
  add("snoc", 2,
      [](A a) {
        auto r = seq::snoc(a[0], a[1]);
        if (!r) throw ArithmeticOverflow("sequence code overflow in snoc");
        return *r;
      },
      "x ^ <y>");
  add("concat", 2,
      [](A a) {
        auto r = seq::concat(a[0], a[1]);
        if (!r) throw ArithmeticOverflow("sequence code overflow in concat");
        return *r;
      },
      "concatenation of sequence codes");
  add("take", 2, [](A a) { return seq::take(a[0], a[1]); }, "first y entries of sequence x");
  add("qgap", 3,
      [](A a) -> Nat { return rational_of(a[0]) - rational_of(a[1]) > two_pow_one_minus(a[2]) ? 1 : 0; },
      "1 if p - q > 2^(1-s) for rational codes p, q");
  add("qreg", 3,
      [](A a) -> Nat {
        mpq_class d = rational_of(a[0]) - rational_of(a[1]);
        return abs(d) <= two_pow_minus(a[2]) ? 1 : 0;
      },
      "1 if |p - q| <= 2^(-s) for rational codes p, q");
}

std::optional<SymbolId> SymbolTable::find(std::string_view name) const {
  for (std::size_t i = 0; i < symbols_.size(); ++i)
    if (symbols_[i].name == name) return static_cast<SymbolId>(i);
  return std::nullopt;
}

SymbolId SymbolTable::id(std::string_view name) const {
  auto found = find(name);
  if (!found) throw InvalidArgument("unknown symbol '" + std::string(name) + "'");
  return *found;
}

Nat SymbolTable::apply(SymbolId id, std::span<const Nat> args) const {
  const Symbol& s = at(id);
  if (args.size() != s.arity) throw InvalidArgument("arity mismatch for symbol '" + s.name + "'");
  return s.eval(args);
}

}  // namespace realiz

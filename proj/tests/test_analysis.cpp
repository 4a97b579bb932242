#include "doctest.h"

#include <numeric>
#include <random>
#include <set>

#include "realiz/analysis.hpp"
#include "realiz/errors.hpp"
#include "support/gen_analysis.hpp"

using namespace realiz;

namespace {

CauchyReal c(long p, long q = 1) { return CauchyReal::constant(Rat(p, q)); }

CauchyReal halvings() {
  return CauchyReal([](Nat s) { return pow2(-static_cast<long>(s)); }, "2^-s");
}

// Test-side copy of the fixed enumeration: height h = p + q, positive before negative.
std::vector<Rat> rationals(std::size_t n) {
  std::vector<Rat> out{Rat(0)};
  for (long h = 2; out.size() < n; ++h)
    for (long p = 1; p < h; ++p)
      if (std::gcd(p, h - p) == 1) {
        out.push_back(Rat(p, h - p));
        out.push_back(Rat(-p, h - p));
      }
  out.resize(n);
  return out;
}

bool R(const CauchyReal& a, const std::vector<Nat>& x) {
  auto q = rationals(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 1) return false;
    for (std::size_t s = 0; s <= x.size(); ++s) {
      Rat e = s == 0 ? Rat(2) : Rat(1, mpz_class(1) << (s - 1));
      if (q[i] < a(s) - e && x[i] != 1) return false;
      if (q[i] > a(s) + e && x[i] != 0) return false;
    }
  }
  return true;
}

Rat gap(const Gauss& a, const Gauss& b) { return std::max(abs(a.re - b.re), abs(a.im - b.im)); }

}  // namespace

TEST_CASE("rationals parse and print in lowest terms") {
  CHECK(parse_rat("6/4") == Rat(3, 2));
  CHECK(rat_string(parse_rat("-6/4")) == "-3/2");
  CHECK(parse_rat("7") == 7);
  CHECK_THROWS_AS(parse_rat("1/0"), InvalidArgument);
  CHECK_THROWS_AS(parse_rat("x"), InvalidArgument);
  CHECK_THROWS_AS(parse_rat("1/-2"), InvalidArgument);
  CHECK(pow2(-3) == Rat(1, 8));
  CHECK(pow2(1) == 2);
}

TEST_CASE("comparison of Cauchy reals") {
  auto r = compare(c(0), c(1), 10);
  CHECK(r.kind == Comparison::Kind::Lt);
  CHECK(r.stage == 2);
  CHECK(compare(c(1), c(0), 10).kind == Comparison::Kind::Gt);
  for (Nat fuel : {0, 5, 200}) {
    CHECK(compare(c(0), c(0), fuel).kind == Comparison::Kind::EqSoFar);
    CHECK(compare(c(0), c(0), fuel).stage == fuel);
    CHECK(compare(halvings(), c(0), fuel).kind == Comparison::Kind::EqSoFar);
  }
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    Rat a = gen::rat(rng), b = gen::rat(rng);
    auto v = compare(CauchyReal::constant(a), CauchyReal::constant(b), 64);
    if (a == b) CHECK(v.kind == Comparison::Kind::EqSoFar);
    if (v.kind == Comparison::Kind::Gt) CHECK(a - b > Rat(2, mpz_class(1) << v.stage));
    if (v.kind == Comparison::Kind::Lt) CHECK(b - a > Rat(2, mpz_class(1) << v.stage));
    if (a != b) CHECK(v.kind == (a > b ? Comparison::Kind::Gt : Comparison::Kind::Lt));
  }
}

TEST_CASE("sequential dichotomy") {
  CHECK(seq_dichotomy({{c(0), c(1)}, {c(1), c(0)}, {c(0), c(0)}}, 64) == std::vector<Nat>{0, 1, 0});
  CHECK(seq_dichotomy({{c(3, 7), c(3, 7)}, {c(3, 7), c(3, 7)}}, 64) == std::vector<Nat>{0, 0});
  CHECK(seq_dichotomy({{halvings(), c(0)}}, 64) == std::vector<Nat>{0});
  CHECK(seq_dichotomy({}, 64).empty());

  std::mt19937_64 rng(5);
  std::vector<std::pair<CauchyReal, CauchyReal>> pairs;
  std::vector<Nat> oracle;
  for (int i = 0; i < 60; ++i) {
    Rat a = gen::rat(rng, 3, 3), b = gen::rat(rng, 3, 3);
    pairs.emplace_back(CauchyReal::constant(a), CauchyReal::constant(b));
    oracle.push_back(a > b);
  }
  auto bits = seq_dichotomy(pairs, 64);
  CHECK(bits == oracle);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    auto later = compare(pairs[i].first, pairs[i].second, 200);
    CHECK(later.kind != (bits[i] ? Comparison::Kind::Lt : Comparison::Kind::Gt));
  }

  CauchyReal wild([](Nat s) { return Rat(s % 2 ? 10 : -10); }, "wild");
  CHECK_THROWS_AS(seq_dichotomy({{c(0), c(0)}, {wild, c(0)}}, 8), InvariantViolation);
}

TEST_CASE("rational enumeration") {
  auto mine = rationals(600);
  std::set<Rat> seen;
  for (Nat i = 0; i < 600; ++i) {
    CHECK(enumerated_rational(i) == mine[i]);
    seen.insert(mine[i]);
  }
  CHECK(seen.size() == 600);
  CHECK(mine[1] == 1);
  CHECK(mine[3] == Rat(1, 2));
}

TEST_CASE("square roots of rationals are regular") {
  for (long q : {0, 1, 2, 3, 10, 1000}) {
    CauchyReal r = CauchyReal::sqrt_of(q);
    CHECK(r.regular_to(40));
    Rat x = r(30);
    CHECK(abs(x * x - q) <= Rat(q + 2) / (mpz_class(1) << 29));
  }
  CHECK_THROWS_AS(CauchyReal::sqrt_of(-1), InvalidArgument);
  CHECK_FALSE(CauchyReal([](Nat s) { return Rat(s % 2); }, "flip").regular_to(4));
}

TEST_CASE("Cauchy to Dedekind") {
  DedekindPath half = cauchy_to_dedekind(c(1, 2), 16);
  REQUIRE(half.bits.size() == 16);
  CHECK(half.bits[0] == 1);
  CHECK(half.bits[1] == 0);
  CHECK(half.bits[3] == 0);
  CHECK(half.enumeration == "zigzag");
  CHECK(R(c(1, 2), half.bits));

  // Leftmost member of the depth-d level, by exhaustion.
  std::vector<CauchyReal> reals{c(1, 2), c(-2), c(0), CauchyReal::sqrt_of(2), halvings(), c(5, 3)};
  for (const auto& a : reals)
    for (Nat d : {4, 9, 11}) {
      std::vector<Nat> best;
      for (Nat m = 0; m < (Nat(1) << d) && best.empty(); ++m) {
        std::vector<Nat> x(d);
        for (Nat i = 0; i < d; ++i) x[i] = (m >> (d - 1 - i)) & 1;
        if (R(a, x)) best = x;
      }
      CHECK(cauchy_to_dedekind(a, d).bits == best);
    }
  for (const auto& a : reals) {
    auto p = cauchy_to_dedekind(a, 64);
    CHECK(R(a, p.bits));
    CHECK(satisfies_R(a, p.bits));
  }
  CHECK(satisfies_R(c(1, 2), {0}));
  CHECK_FALSE(satisfies_R(c(1, 2), {0, 0, 0}));
  CHECK_FALSE(satisfies_R(c(1, 2), {2}));
}

TEST_CASE("sequential square roots") {
  auto roots = seq_sqrt({ComplexC::constant({1, 0}), ComplexC::constant({-4, 0}), ComplexC::constant({0, 0})}, 20);
  REQUIRE(roots.size() == 3);
  CHECK(gap(roots[0](20), {1, 0}) <= pow2(-20));
  CHECK(gap(roots[1](20), {0, 2}) <= pow2(-20));
  CHECK(gap(roots[2](20), {0, 0}) <= pow2(-20));
  CHECK(roots[1](20).im > 0);

  std::mt19937_64 rng(9);
  std::vector<ComplexC> in;
  std::vector<Gauss> exact;
  for (int i = 0; i < 30; ++i) {
    exact.push_back(gen::gauss(rng));
    in.push_back(ComplexC::constant(exact.back()));
  }
  in.push_back(ComplexC{CauchyReal::sqrt_of(2), halvings()});
  auto out = seq_sqrt(in, 20);
  for (std::size_t i = 0; i < in.size(); ++i) {
    CHECK(out[i].re.regular_to(24));
    CHECK(out[i].im.regular_to(24));
    for (Nat t : {0, 5, 20}) {
      Gauss z = out[i](t);
      CHECK(gap(z * z, in[i](t)) <= pow2(1 - static_cast<long>(t)));
    }
    Gauss z = out[i](20);
    CHECK(z.re >= 0);
  }
  for (std::size_t i = 0; i < exact.size(); ++i)
    if (exact[i].im < 0) CHECK(out[i](20).im <= 0);
}

TEST_CASE("polynomial roots by subdivision") {
  auto eval_at = [](const Polynomial& p, const ComplexC& z, Nat s) {
    std::vector<Gauss> c;
    for (const auto& x : p.coeffs) c.push_back(x(s));
    return evaluate(c, z(s));
  };
  Polynomial lin{{ComplexC::constant({-3, 0})}};
  CHECK(gap(fta_root(lin, 20)(0), {3, 0}) <= pow2(-20));
  Polynomial ii{{ComplexC::constant({0, 0}), ComplexC::constant({1, 0})}};
  Gauss r = fta_root(ii, 20)(0);
  CHECK(norm2(evaluate({{0, 0}, {1, 0}}, r)) <= pow2(-40));
  CHECK(abs(r.re) <= pow2(-15));
  CHECK(abs(abs(r.im) - 1) <= pow2(-15));
  Polynomial sq{{ComplexC::constant({0, 0}), ComplexC::constant({0, 0})}};
  CHECK(norm2(fta_root(sq, 20)(0)) <= pow2(-19));
  CHECK_THROWS_AS(fta_root(Polynomial{}, 5), InvalidArgument);

  std::mt19937_64 rng(11);
  for (int i = 0; i < 12; ++i) {
    Polynomial p = gen::monic(rng, 1 + i % 4);
    ComplexC z = fta_root(p, 20);
    CHECK(norm2(eval_at(p, z, 0)) <= pow2(-40));
    std::vector<Gauss> c;
    for (const auto& x : p.coeffs) c.push_back(x(0));
    double best = 1e9;
    for (auto w : gen::numeric_roots(c))
      best = std::min(best, std::abs(w - std::complex<double>(z(0).re.get_d(), z(0).im.get_d())));
    CHECK(best < 1e-4);
  }
  // Coefficients known only through their stages.
  Polynomial two{{ComplexC{c(0), c(0)}, ComplexC{CauchyReal([](Nat s) -> Rat { return -2 + pow2(-static_cast<long>(s) - 1); }, "-2"), c(0)}}};
  Gauss z = fta_root(two, 20)(0);
  CHECK(abs(z.re * z.re - 2) <= pow2(-18));
}

TEST_CASE("matrix inverse by adjugate") {
  RatMatrix u(2, {1, 1, 0, 1});
  CHECK(matrix_inverse(u) == RatMatrix(2, {1, -1, 0, 1}));
  CHECK(matrix_inverse(RatMatrix(2, {2, 0, 0, 2})) == RatMatrix(2, {Rat(1, 2), 0, 0, Rat(1, 2)}));
  CHECK(matrix_inverse(RatMatrix(1, {Rat(-3, 5)}))(0, 0) == Rat(-5, 3));
  CHECK_THROWS_AS(matrix_inverse(RatMatrix(2, {1, 2, 2, 4})), InvalidArgument);
  CHECK_THROWS_AS(RatMatrix(2, {1, 2, 3}), InvalidArgument);
  CHECK(RatMatrix(3, {0, 1, 0, 1, 0, 0, 0, 0, 1}).determinant() == -1);

  std::mt19937_64 rng(13);
  for (int i = 0; i < 20; ++i) {
    RatMatrix m = gen::invertible(rng, 1 + i % 4);
    RatMatrix inv = matrix_inverse(m);
    CHECK(m * inv == RatMatrix::identity(m.size()));
    CHECK(inv * m == RatMatrix::identity(m.size()));
    CHECK(inv.determinant() * m.determinant() == 1);
  }
}

TEST_CASE("LPO probes") {
  CHECK(lpo_probe(baire::zeros(), 100).kind == LpoProbe::Kind::AllZeroSoFar);
  std::vector<Nat> t(7, 0);
  t.push_back(4);
  Baire x = baire::table(t, 1);
  auto p = lpo_probe(x, 100);
  CHECK(p.kind == LpoProbe::Kind::Found);
  CHECK(p.value == 7);
  auto q = lpo_probe(x, 5);
  CHECK(q.kind == LpoProbe::Kind::AllZeroSoFar);
  CHECK(q.value == 5);
  CHECK(lpo_probe(x, 7).kind == LpoProbe::Kind::AllZeroSoFar);
  CHECK(lpo_probe(x, 8).value == 7);
}

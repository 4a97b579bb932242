#include "realiz/analysis.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

#include "realiz/compact.hpp"
#include "realiz/errors.hpp"

namespace realiz {

Rat parse_rat(const std::string& text) {
  auto digits = [](std::string_view s, bool sign) {
    if (sign && !s.empty() && s[0] == '-') s.remove_prefix(1);
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  auto slash = text.find('/');
  std::string_view num = std::string_view(text).substr(0, slash);
  std::string_view den = slash == std::string::npos ? "1" : std::string_view(text).substr(slash + 1);
  if (!digits(num, true) || !digits(den, false)) throw InvalidArgument("not a rational: \"" + text + "\"");
  mpz_class n{std::string(num)}, d{std::string(den)};
  if (d == 0) throw InvalidArgument("zero denominator: \"" + text + "\"");
  Rat q(n, d);
  q.canonicalize();
  return q;
}

std::string rat_string(const Rat& q) { return q.get_str(); }

Rat pow2(long e) {
  mpz_class p = 1;
  p <<= static_cast<unsigned long>(e < 0 ? -e : e);
  return e < 0 ? Rat(1, p) : Rat(p);
}

namespace {

// floor(sqrt(q) 2^k) / 2^k, within 2^-k below sqrt(q).
Rat sqrt_floor(const Rat& q, Nat k) {
  if (q <= 0) return 0;
  mpz_class scaled = q.get_num();
  scaled <<= 2 * k;
  scaled /= q.get_den();
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
  Rat r(root, 1);
  r /= pow2(static_cast<long>(k));
  return r;
}

// Bits of ceil(q) for q >= 0.
Nat bits_above(const Rat& q) {
  mpz_class c = q.get_num();
  mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return c <= 0 ? 0 : mpz_sizeinbase(c.get_mpz_t(), 2);
}

Rat mag1(const Gauss& z) { return abs(z.re) + abs(z.im); }

}  // namespace

CauchyReal::CauchyReal(std::function<Rat(Nat)> approx, std::string label)
    : approx_(std::move(approx)), label_(std::move(label)) {}

CauchyReal CauchyReal::constant(const Rat& q) {
  return CauchyReal([q](Nat) { return q; }, rat_string(q));
}

CauchyReal CauchyReal::sqrt_of(const Rat& q) {
  if (q < 0) throw InvalidArgument("square root of negative " + rat_string(q));
  return CauchyReal([q](Nat s) { return sqrt_floor(q, s + 1); }, "sqrt(" + rat_string(q) + ")");
}

bool CauchyReal::regular_to(Nat depth) const {
  std::vector<Rat> v;
  for (Nat s = 0; s <= depth; ++s) v.push_back((*this)(s));
  for (Nat s = 0; s <= depth; ++s)
    for (Nat t = s + 1; t <= depth; ++t)
      if (abs(v[s] - v[t]) > pow2(-static_cast<long>(s))) return false;
  return true;
}

Gauss operator+(const Gauss& a, const Gauss& b) { return {a.re + b.re, a.im + b.im}; }
Gauss operator-(const Gauss& a, const Gauss& b) { return {a.re - b.re, a.im - b.im}; }
Gauss operator*(const Gauss& a, const Gauss& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
Rat norm2(const Gauss& z) { return z.re * z.re + z.im * z.im; }

ComplexC ComplexC::constant(const Gauss& z) { return {CauchyReal::constant(z.re), CauchyReal::constant(z.im)}; }

std::string_view comparison_name(Comparison::Kind k) {
  switch (k) {
    case Comparison::Kind::Gt: return "Gt";
    case Comparison::Kind::Lt: return "Lt";
    case Comparison::Kind::EqSoFar: return "EqSoFar";
  }
  return "?";
}

Comparison compare(const CauchyReal& a, const CauchyReal& b, Nat fuel) {
  for (Nat s = 0; s <= fuel; ++s) {
    Rat d = a(s) - b(s);
    Rat eps = pow2(1 - static_cast<long>(s));
    if (d > eps) return {Comparison::Kind::Gt, s};
    if (-d > eps) return {Comparison::Kind::Lt, s};
  }
  return {Comparison::Kind::EqSoFar, fuel};
}

std::vector<Nat> seq_dichotomy(const std::vector<std::pair<CauchyReal, CauchyReal>>& pairs, Nat depth) {
  // blocked[i][y]: bit y for pair i is refuted by some stage <= depth.
  std::vector<std::array<bool, 2>> blocked;
  for (const auto& [a, b] : pairs) {
    std::array<bool, 2> r{false, false};
    for (Nat s = 0; s <= depth && !(r[0] && r[1]); ++s) {
      Rat d = a(s) - b(s);
      Rat eps = pow2(1 - static_cast<long>(s));
      r[0] = r[0] || d > eps;
      r[1] = r[1] || -d > eps;
    }
    blocked.push_back(r);
  }
  for (std::size_t i = 0; i < blocked.size(); ++i)
    if (blocked[i][0] && blocked[i][1])
      throw InvariantViolation("pair " + std::to_string(i) + " refutes both a <= b and a >= b");
  CompactCode code = codes::make(
      baire::constant(1),
      [blocked](std::span<const Nat> x) {
        for (std::size_t i = 0; i < x.size(); ++i)
          if (i >= blocked.size() || x[i] > 1 || blocked[i][x[i]]) return true;
        return false;
      },
      "dichotomy");
  auto path = leftmost_path(code, pairs.size());
  if (!path) throw InvariantViolation("no dichotomy path");
  return *path;
}

namespace {

std::vector<Rat> first_rationals(Nat count) {
  std::vector<Rat> out{Rat(0)};
  for (Nat h = 2; out.size() < count; ++h)
    for (Nat p = 1; p < h && out.size() < count; ++p) {
      Nat q = h - p;
      if (std::gcd(p, q) != 1) continue;
      out.emplace_back(mpz_class(p), mpz_class(q));
      if (out.size() < count) out.emplace_back(-mpz_class(p), mpz_class(q));
    }
  out.resize(count);
  return out;
}

}  // namespace

Rat enumerated_rational(Nat i) { return first_rationals(i + 1)[i]; }

bool satisfies_R(const CauchyReal& a, const std::vector<Nat>& x) {
  std::vector<Rat> q = first_rationals(x.size());
  std::vector<Rat> lo, hi;
  for (Nat s = 0; s <= x.size(); ++s) {
    Rat eps = pow2(1 - static_cast<long>(s));
    lo.push_back(a(s) - eps);
    hi.push_back(a(s) + eps);
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 1) return false;
    for (std::size_t s = 0; s <= x.size(); ++s) {
      if (q[i] < lo[s] && x[i] != 1) return false;
      if (q[i] > hi[s] && x[i] != 0) return false;
    }
  }
  return true;
}

DedekindPath cauchy_to_dedekind(const CauchyReal& a, Nat depth) {
  std::vector<Rat> q = first_rationals(depth);
  std::vector<Rat> lo, hi;
  for (Nat s = 0; s <= depth; ++s) {
    Rat eps = pow2(1 - static_cast<long>(s));
    lo.push_back(a(s) - eps);
    hi.push_back(a(s) + eps);
  }
  // forced[i]: 0 or 1 when some stage <= depth forces bit i, 2 otherwise.
  std::vector<Nat> forced(depth, 2);
  for (Nat i = 0; i < depth; ++i)
    for (Nat s = 0; s <= depth; ++s) {
      if (q[i] < lo[s]) forced[i] = 1;
      if (q[i] > hi[s]) forced[i] = 0;
    }
  CompactCode tree = codes::make(
      baire::constant(1),
      [forced](std::span<const Nat> x) {
        for (std::size_t i = 0; i < x.size(); ++i)
          if (x[i] > 1 || (forced[i] != 2 && x[i] != forced[i])) return true;
        return false;
      },
      "R(" + a.label() + ")");
  auto path = leftmost_path(tree, depth);
  if (!path || !satisfies_R(a, *path)) throw InvariantViolation(a.label() + " is not a regular Cauchy real");
  return DedekindPath{"zigzag", *path, a.label()};
}

std::vector<ComplexC> seq_sqrt(const std::vector<ComplexC>& inputs, Nat s) {
  std::vector<ComplexC> out;
  for (const ComplexC& xi : inputs) {
    Gauss w = xi(s + 2);
    Nat m = bits_above(mag1(w) + 1);
    Rat r2 = norm2(w);
    bool lower = w.im < 0;
    auto part = [w, m, r2](bool real) {
      return [w, m, r2, real](Nat t) {
        Nat k = t + 5 + m;
        Rat u = sqrt_floor(r2, 2 * k);
        Rat half = real ? Rat((u + w.re) / 2) : Rat((u - w.re) / 2);
        return sqrt_floor(half, k);
      };
    };
    std::string label = "sqrt(" + rat_string(w.re) + "+" + rat_string(w.im) + "i)";
    auto im = part(false);
    out.push_back({CauchyReal(part(true), label + ".re"),
                   CauchyReal([im, lower](Nat t) { return lower ? Rat(-im(t)) : im(t); }, label + ".im")});
  }
  return out;
}

Gauss evaluate(const std::vector<Gauss>& coeffs, const Gauss& z) {
  Gauss acc{1, 0};
  for (const Gauss& c : coeffs) acc = acc * z + c;
  return acc;
}

namespace {

// Taylor coefficients of the monic polynomial at c, constant term first.
std::vector<Gauss> taylor(std::vector<Gauss> a, const Gauss& c) {
  std::size_t n = a.size();
  a.insert(a.begin(), Gauss{1, 0});
  std::vector<Gauss> out;
  for (std::size_t k = 0; k <= n; ++k) {
    for (std::size_t i = 1; i <= n - k; ++i) a[i] = a[i] + a[i - 1] * c;
    out.push_back(a[n - k]);
    a.pop_back();
  }
  return out;
}

struct Square {
  Gauss center;
  Rat half;
  Rat value;
};

}  // namespace

ComplexC fta_root(const Polynomial& p, Nat s) {
  Nat n = p.degree();
  if (n == 0) throw InvalidArgument("polynomial of degree 0");
  Rat bound = 1;
  for (const ComplexC& c : p.coeffs) bound += mag1(c(0)) + 2;
  Nat stage = s + 3 + bits_above(Rat(n)) + n * (bits_above(bound) + 1);
  std::vector<Gauss> a;
  for (const ComplexC& c : p.coeffs) a.push_back(c(stage));
  Rat target = pow2(-2 * static_cast<long>(s + 1));

  auto worse = [](const Square& x, const Square& y) {
    return x.value != y.value ? x.value > y.value : x.half < y.half;
  };
  std::priority_queue<Square, std::vector<Square>, decltype(worse)> live(worse);
  auto consider = [&](const Gauss& c, const Rat& half) {
    std::vector<Gauss> t = taylor(a, c);
    Rat v = norm2(t[0]);
    if (v <= target) return true;
    Rat rho = half * 3 / 2, power = 1, reach = 0;
    for (std::size_t k = 1; k < t.size(); ++k) {
      power *= rho;
      reach += mag1(t[k]) * power;
    }
    if (v <= reach * reach) live.push({c, half, v});
    return false;
  };
  if (consider({0, 0}, bound)) return ComplexC::constant({0, 0});
  for (std::size_t steps = 0; !live.empty(); ++steps) {
    if (steps > 1'000'000) break;
    Square sq = live.top();
    live.pop();
    Rat h = sq.half / 2;
    for (int dx : {-1, 1})
      for (int dy : {-1, 1}) {
        Gauss c{sq.center.re + dx * h, sq.center.im + dy * h};
        if (consider(c, h)) return ComplexC::constant(c);
      }
  }
  throw InvariantViolation("root search failed");
}

Rat determinant(std::size_t n, std::vector<Rat> m) {
  if (m.size() != n * n) throw InvalidArgument("matrix needs " + std::to_string(n * n) + " entries");
  Rat det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv * n + c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m[piv * n + j], m[c * n + j]);
      det = -det;
    }
    det *= m[c * n + c];
    for (std::size_t r = c + 1; r < n; ++r) {
      Rat f = m[r * n + c] / m[c * n + c];
      if (f == 0) continue;
      for (std::size_t j = c; j < n; ++j) m[r * n + j] -= f * m[c * n + j];
    }
  }
  return det;
}

RatMatrix::RatMatrix(std::size_t n, std::vector<Rat> entries) : n_(n), entries_(std::move(entries)) {
  if (n == 0) throw InvalidArgument("empty matrix");
  det_ = realiz::determinant(n, entries_);
}

RatMatrix RatMatrix::identity(std::size_t n) {
  std::vector<Rat> e(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1;
  return RatMatrix(n, std::move(e));
}

RatMatrix RatMatrix::operator*(const RatMatrix& o) const {
  if (n_ != o.n_) throw InvalidArgument("size mismatch");
  std::vector<Rat> e(n_ * n_, 0);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t k = 0; k < n_; ++k)
      for (std::size_t j = 0; j < n_; ++j) e[i * n_ + j] += (*this)(i, k) * o(k, j);
  return RatMatrix(n_, std::move(e));
}

RatMatrix matrix_inverse(const RatMatrix& m) {
  if (m.determinant() == 0) throw InvalidArgument("determinant is 0");
  std::size_t n = m.size();
  if (n == 1) return RatMatrix(1, {Rat(1) / m(0, 0)});
  std::vector<Rat> inv(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Rat> minor;
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
          if (r != i && c != j) minor.push_back(m(r, c));
      Rat cof = determinant(n - 1, std::move(minor));
      if ((i + j) % 2) cof = -cof;
      inv[j * n + i] = cof / m.determinant();
    }
  return RatMatrix(n, std::move(inv));
}

LpoProbe lpo_probe(const Baire& xi, Nat fuel) {
  for (Nat n = 0; n < fuel; ++n)
    if (xi(n) != 0) return {LpoProbe::Kind::Found, n};
  return {LpoProbe::Kind::AllZeroSoFar, fuel};
}

}  // namespace realiz

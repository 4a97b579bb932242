#pragma once

// Cauchy reals as rational streams with |a(s) - a(t)| <= 2^-s for s < t, and
// the desk-scale instances built on them.

#include <functional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "realiz/k2.hpp"

namespace realiz {

using Rat = mpq_class;

/// "p/q" or "p"; throws InvalidArgument on anything else or a zero denominator.
Rat parse_rat(const std::string& text);
std::string rat_string(const Rat& q);
/// 2^e for any integer e.
Rat pow2(long e);

class CauchyReal {
 public:
  CauchyReal(std::function<Rat(Nat)> approx, std::string label);

  static CauchyReal constant(const Rat& q);
  /// Regular stream converging to the square root of q >= 0.
  static CauchyReal sqrt_of(const Rat& q);

  Rat operator()(Nat s) const { return approx_(s); }
  const std::string& label() const { return label_; }
  /// The regularity condition for s < t <= depth.
  bool regular_to(Nat depth) const;

 private:
  std::function<Rat(Nat)> approx_;
  std::string label_;
};

struct Gauss {
  Rat re;
  Rat im;
};

Gauss operator+(const Gauss& a, const Gauss& b);
Gauss operator-(const Gauss& a, const Gauss& b);
Gauss operator*(const Gauss& a, const Gauss& b);
Rat norm2(const Gauss& z);

struct ComplexC {
  CauchyReal re;
  CauchyReal im;

  static ComplexC constant(const Gauss& z);
  Gauss operator()(Nat s) const { return {re(s), im(s)}; }
};

struct Comparison {
  enum class Kind { Gt, Lt, EqSoFar };
  Kind kind;
  /// The witness stage, or the fuel for EqSoFar.
  Nat stage;
};
std::string_view comparison_name(Comparison::Kind k);

/// Scans s <= fuel for a(s) - b(s) > 2^(1-s) or the reverse.
Comparison compare(const CauchyReal& a, const CauchyReal& b, Nat fuel);

/// Bit n is 0 when a_n <= b_n holds through stage `depth`, else 1; the
/// leftmost path through the product of the per-pair constraint trees.
/// Throws InvariantViolation when a pair refutes both.
std::vector<Nat> seq_dichotomy(const std::vector<std::pair<CauchyReal, CauchyReal>>& pairs, Nat depth);

/// q_0 = 0, then p/q and -p/q for p + q = 2, 3, ... with p, q >= 1 coprime.
Rat enumerated_rational(Nat i);

struct DedekindPath {
  std::string enumeration = "zigzag";
  std::vector<Nat> bits;
  std::string source;
};

/// R(a, x): binary, and x(i) is forced to 1 (0) when q_i lies below (above)
/// a(s) -+ 2^(1-s) for some s <= |x|.
bool satisfies_R(const CauchyReal& a, const std::vector<Nat>& x);
DedekindPath cauchy_to_dedekind(const CauchyReal& a, Nat depth);

/// Principal roots: real part >= 0, imaginary part >= 0 when the real part
/// vanishes. Each input is read once at stage s + 2 and the output is the
/// exact root of that approximation, so output^2 is within 2^(1-t) of the
/// input at every stage t <= s.
std::vector<ComplexC> seq_sqrt(const std::vector<ComplexC>& inputs, Nat s);

/// zeta^n + c_1 zeta^(n-1) + ... + c_n.
struct Polynomial {
  std::vector<ComplexC> coeffs;
  Nat degree() const { return coeffs.size(); }
};

Gauss evaluate(const std::vector<Gauss>& coeffs, const Gauss& z);

/// A Gaussian rational zeta with |p(zeta)| <= 2^-s, by subdividing the
/// square of half-width 1 + sum |c_i|.
ComplexC fta_root(const Polynomial& p, Nat s);

class RatMatrix {
 public:
  RatMatrix(std::size_t n, std::vector<Rat> entries);
  static RatMatrix identity(std::size_t n);

  std::size_t size() const { return n_; }
  const Rat& operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  const Rat& determinant() const { return det_; }
  RatMatrix operator*(const RatMatrix& o) const;
  bool operator==(const RatMatrix& o) const { return n_ == o.n_ && entries_ == o.entries_; }

 private:
  std::size_t n_;
  std::vector<Rat> entries_;
  Rat det_;
};

Rat determinant(std::size_t n, std::vector<Rat> entries);
/// Adjugate over determinant; InvalidArgument when the determinant is 0.
RatMatrix matrix_inverse(const RatMatrix& m);

struct LpoProbe {
  enum class Kind { Found, AllZeroSoFar };
  Kind kind;
  /// Least nonzero position, or the fuel.
  Nat value;
};

/// Looks at positions n < fuel.
LpoProbe lpo_probe(const Baire& xi, Nat fuel);

}  // namespace realiz

#pragma once

// The rf and lrf realizability translations and the sequential form.

#include <string>

#include "realiz/formula.hpp"

namespace realiz {

enum class Mode { Rf, Lrf };

std::string_view mode_name(Mode m);

struct TranslateOptions {
  /// Contract (lam x t)(s) in the output.
  bool beta_normalize = true;
};

/// Per-call naming state. Generated binders avoid every name of the source
/// formula and realizer, and each other.
class RealizerContext {
 public:
  RealizerContext(const FunTerm& realizer, const Formula& f, TranslateOptions options = {});

  const FunTerm& realizer() const { return realizer_; }
  const TranslateOptions& options() const { return options_; }
  /// A name derived from base avoiding all names seen so far and those of extra.
  std::string fresh(std::string_view base, const std::set<std::string>& extra = {});

 private:
  FunTerm realizer_;
  TranslateOptions options_;
  NameSupply names_;
};

Formula translate(Mode mode, const FunTerm& realizer, const Formula& f, TranslateOptions options = {});
Formula rf_translate(const FunTerm& realizer, const Formula& f, TranslateOptions options = {});
Formula lrf_translate(const FunTerm& realizer, const Formula& f, TranslateOptions options = {});

/// lam k. xi(2^n (2k+1) - 1).
FunTerm component_term(const FunTerm& xi, const NumTerm& n);

struct SequentialNames {
  std::string xi = "xi";
  std::string zeta = "zeta";
  std::string index = "n";
};

/// forall xi (forall n B(xi_n) -> exists zeta forall n A(xi_n, zeta_n)).
/// Throws InvalidArgument ("free-variable mismatch") when B has function
/// variables other than xi or A has function variables other than xi, zeta.
Formula sequential_form(const Formula& b, const Formula& a, const SequentialNames& names = {});

/// Splits forall xi (B -> exists zeta A) into (B, A, names). Throws
/// InvalidArgument if f does not have this shape.
struct SequentialParts {
  Formula hypothesis;
  Formula conclusion;
  SequentialNames names;
};
SequentialParts split_sequential(const Formula& f);

}  // namespace realiz

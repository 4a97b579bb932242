#pragma once

// Evaluation of terms and quantifier-free formulas under an assignment.

#include <map>
#include <string>

#include "realiz/formula.hpp"
#include "realiz/k2.hpp"

namespace realiz {

class Env {
 public:
  Env bind(const std::string& x, Nat v) const;
  Env bind(const std::string& xi, const Baire& b) const;

  const Nat* num(const std::string& x) const;
  const Baire* fun(const std::string& xi) const;
  const std::map<std::string, Nat>& nums() const { return nums_; }
  const std::map<std::string, Baire>& funs() const { return funs_; }
  /// Throws InvalidArgument naming the first free variable without a value.
  void require(const FreeVars& fv) const;

 private:
  std::map<std::string, Nat> nums_;
  std::map<std::string, Baire> funs_;
};

Nat eval_num(const NumTerm& t, const Env& env);
Baire eval_fun(const FunTerm& t, const Env& env);
/// Atoms, connectives and quantifier-free disjunctions. Throws
/// InvalidArgument on quantifiers and definedness atoms.
bool eval_qf(const Formula& f, const Env& env);

}  // namespace realiz

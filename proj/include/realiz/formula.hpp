#pragma once

// Abstract syntax of the two-sorted language: number terms, function terms and
// formulas. Nodes are immutable and shared; copying a term or formula is cheap.

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "realiz/seqcode.hpp"
#include "realiz/symbols.hpp"

namespace realiz {

struct NumNode;
struct FunNode;
struct FormulaNode;

enum class Sort { Num, Fun };

class NumTerm {
 public:
  explicit NumTerm(std::shared_ptr<const NumNode> node) : node_(std::move(node)) {}
  const NumNode& node() const { return *node_; }
  bool same_node(const NumTerm& other) const { return node_ == other.node_; }

 private:
  std::shared_ptr<const NumNode> node_;
};

class FunTerm {
 public:
  explicit FunTerm(std::shared_ptr<const FunNode> node) : node_(std::move(node)) {}
  const FunNode& node() const { return *node_; }
  bool same_node(const FunTerm& other) const { return node_ == other.node_; }

 private:
  std::shared_ptr<const FunNode> node_;
};

class Formula {
 public:
  explicit Formula(std::shared_ptr<const FormulaNode> node) : node_(std::move(node)) {}
  const FormulaNode& node() const { return *node_; }
  bool same_node(const Formula& other) const { return node_ == other.node_; }

 private:
  std::shared_ptr<const FormulaNode> node_;
};

namespace ast {

struct NumVar { std::string name; };
struct Zero {};
struct PrimRecApp { SymbolId symbol; std::vector<NumTerm> args; };
struct Eval { FunTerm fun; NumTerm arg; };

struct FunVar { std::string name; };
struct Succ {};
struct Lambda { std::string var; NumTerm body; };
struct Rec { NumTerm base; FunTerm step; };

struct Eq { NumTerm lhs; NumTerm rhs; };
struct DefNum { FunTerm fun; FunTerm arg; };  // fun(arg) is defined
struct DefFun { FunTerm fun; FunTerm arg; };  // fun|arg is defined
struct And { Formula lhs; Formula rhs; };
struct Imp { Formula lhs; Formula rhs; };
// Surface sugar, removed by desugar.
struct Or { Formula lhs; Formula rhs; };
struct Not { Formula body; };
struct Iff { Formula lhs; Formula rhs; };
struct ForallNum { std::string var; Formula body; };
struct ForallFun { std::string var; Formula body; };
struct ExistsNum { std::string var; Formula body; };
struct ExistsFun { std::string var; Formula body; };
// exists var <= bound. The bound is outside the scope of var.
struct ExistsNumBdd { std::string var; NumTerm bound; Formula body; };
struct ExistsFunBdd { std::string var; FunTerm bound; Formula body; };

}  // namespace ast

struct NumNode {
  std::variant<ast::NumVar, ast::Zero, ast::PrimRecApp, ast::Eval> v;
};

struct FunNode {
  std::variant<ast::FunVar, ast::Succ, ast::Lambda, ast::Rec> v;
};

struct FormulaNode {
  std::variant<ast::Eq, ast::DefNum, ast::DefFun, ast::And, ast::Imp, ast::Or, ast::Not, ast::Iff,
               ast::ForallNum, ast::ForallFun, ast::ExistsNum, ast::ExistsFun, ast::ExistsNumBdd,
               ast::ExistsFunBdd>
      v;
};

template <class T>
const T* as(const Formula& f) { return std::get_if<T>(&f.node().v); }
template <class T>
const T* as(const NumTerm& t) { return std::get_if<T>(&t.node().v); }
template <class T>
const T* as(const FunTerm& t) { return std::get_if<T>(&t.node().v); }

/// Structural equality (bound names must match; see alpha_equal).
bool operator==(const NumTerm& a, const NumTerm& b);
bool operator==(const FunTerm& a, const FunTerm& b);
bool operator==(const Formula& a, const Formula& b);

bool alpha_equal(const Formula& a, const Formula& b);
bool alpha_equal(const NumTerm& a, const NumTerm& b);
bool alpha_equal(const FunTerm& a, const FunTerm& b);

// Smart constructors.
namespace mk {

NumTerm num_var(std::string name);
NumTerm zero();
NumTerm numeral(Nat k);
NumTerm app(SymbolId symbol, std::vector<NumTerm> args);
/// Looks the symbol up in the builtin table; throws on unknown name or arity.
NumTerm app(std::string_view symbol, std::vector<NumTerm> args);
NumTerm ev(FunTerm fun, NumTerm arg);
NumTerm succ_of(NumTerm t);

FunTerm fun_var(std::string name);
FunTerm succ();
FunTerm lam(std::string var, NumTerm body);
FunTerm rec(NumTerm base, FunTerm step);

Formula eq(NumTerm a, NumTerm b);
Formula def_num(FunTerm f, FunTerm g);
Formula def_fun(FunTerm f, FunTerm g);
Formula conj(Formula a, Formula b);
Formula imp(Formula a, Formula b);
Formula disj(Formula a, Formula b);
Formula neg(Formula a);
Formula iff(Formula a, Formula b);
Formula forall_num(std::string var, Formula body);
Formula forall_fun(std::string var, Formula body);
Formula exists_num(std::string var, Formula body);
Formula exists_fun(std::string var, Formula body);
Formula exists_num_bdd(std::string var, NumTerm bound, Formula body);
Formula exists_fun_bdd(std::string var, FunTerm bound, Formula body);

/// 0 = 1, the encoding of falsum.
Formula falsum();
/// a = b -> falsum, i.e. the desugared form of a != b.
Formula neq(NumTerm a, NumTerm b);
/// sub(a, b) = 0.
Formula le(NumTerm a, NumTerm b);

}  // namespace mk

/// If t is succ^k(0) returns k.
std::optional<Nat> numeral_value(const NumTerm& t);

// Printing: canonical single-spaced s-expressions.
std::string print(const Formula& f);
std::string print(const NumTerm& t);
std::string print(const FunTerm& t);

// Parsing. Throws ParseError with line/column on malformed input, unknown
// symbols, arity mismatches and bounded binders occurring in their bound.
Formula parse(std::string_view text);
std::vector<Formula> parse_all(std::string_view text);
NumTerm parse_num_term(std::string_view text);
FunTerm parse_fun_term(std::string_view text);

struct FreeVars {
  std::set<std::string> num;
  std::set<std::string> fun;
  bool operator==(const FreeVars&) const = default;
};

FreeVars free_vars(const Formula& f);
FreeVars free_vars(const NumTerm& t);
FreeVars free_vars(const FunTerm& t);

/// Every variable name (free or bound, either sort) occurring in f.
std::set<std::string> all_names(const Formula& f);
std::set<std::string> all_names(const NumTerm& t);
std::set<std::string> all_names(const FunTerm& t);

/// Deterministic supply of names avoiding a growing set.
class NameSupply {
 public:
  NameSupply() = default;
  explicit NameSupply(std::set<std::string> used) : used_(std::move(used)) {}
  /// Returns base itself when unused, otherwise base_k with the least k >= 1.
  std::string fresh(std::string_view base);
  void reserve(const std::string& name) { used_.insert(name); }
  void reserve(const std::set<std::string>& names) { used_.insert(names.begin(), names.end()); }
  bool used(const std::string& name) const { return used_.count(name) != 0; }

 private:
  std::set<std::string> used_;
};

/// A fresh name derived from base avoiding every name in avoid.
std::string fresh_name(std::string_view base, const std::set<std::string>& avoid);

// Capture-avoiding substitution.
Formula substitute(const Formula& f, const std::string& var, const NumTerm& term);
Formula substitute(const Formula& f, const std::string& var, const FunTerm& term);
NumTerm substitute(const NumTerm& t, const std::string& var, const NumTerm& term);
NumTerm substitute(const NumTerm& t, const std::string& var, const FunTerm& term);
FunTerm substitute(const FunTerm& t, const std::string& var, const NumTerm& term);
FunTerm substitute(const FunTerm& t, const std::string& var, const FunTerm& term);

using AnyTerm = std::variant<NumTerm, FunTerm>;
/// Sort-checked substitution; throws SortError if term's sort differs.
Formula substitute(const Formula& f, Sort sort, const std::string& var, const AnyTerm& term);

/// Expands or/not/iff, bounded quantifiers and definedness atoms everywhere.
Formula desugar(const Formula& f);
/// Expands only the top node when it is sugar, bounded or a definedness atom;
/// returns f unchanged otherwise.
Formula desugar_step(const Formula& f);
bool is_sugar_free(const Formula& f);

/// Contracts (lam x t)(s) to t[x/s] everywhere.
Formula beta_normalize(const Formula& f);
NumTerm beta_normalize(const NumTerm& t);
FunTerm beta_normalize(const FunTerm& t);

/// Number of nodes (formulas and terms).
std::size_t size(const Formula& f);

}  // namespace realiz

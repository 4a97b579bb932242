#include "realiz/classifier.hpp"

#include "realiz/symbols.hpp"

namespace realiz {

std::string_view class_name(FormulaClass c) {
  switch (c) {
    case FormulaClass::QuantifierFree: return "QF";
    case FormulaClass::ExistsFree: return "ExistsFree";
    case FormulaClass::NK: return "NK";
    case FormulaClass::GammaK: return "GammaK";
    case FormulaClass::NL: return "NL";
    case FormulaClass::GammaL: return "GammaL";
    case FormulaClass::Gamma1: return "Gamma1";
  }
  return "?";
}

std::optional<FormulaClass> class_from_name(std::string_view name) {
  for (FormulaClass c : kAllClasses)
    if (class_name(c) == name) return c;
  return std::nullopt;
}

namespace {

using Path = std::vector<std::size_t>;
using Result = std::optional<Rejection>;

bool is_var(const NumTerm& t, const std::string& name) {
  auto* v = as<ast::NumVar>(t);
  return v && v->name == name;
}

bool is_fun_var(const FunTerm& t, const std::string& name) {
  auto* v = as<ast::FunVar>(t);
  return v && v->name == name;
}

// lhs is sub(a, b) and rhs is 0; returns (a, b).
std::optional<std::pair<NumTerm, NumTerm>> as_le(const Formula& f) {
  auto* e = as<ast::Eq>(f);
  if (!e || !as<ast::Zero>(e->rhs)) return std::nullopt;
  auto* app = as<ast::PrimRecApp>(e->lhs);
  if (!app || SymbolTable::builtin().at(app->symbol).name != "sub") return std::nullopt;
  return std::make_pair(app->args[0], app->args[1]);
}

class Checker {
 public:
  Result check(const Formula& f, FormulaClass c) {
    switch (c) {
      case FormulaClass::QuantifierFree: return qf(f);
      case FormulaClass::ExistsFree: return exists_free(f);
      case FormulaClass::NK: return negative(f, false);
      case FormulaClass::NL: return negative(f, true);
      case FormulaClass::GammaK: return gamma(f, FormulaClass::GammaK, FormulaClass::NK);
      case FormulaClass::GammaL: return gamma(f, FormulaClass::GammaL, FormulaClass::NL);
      case FormulaClass::Gamma1: return gamma(f, FormulaClass::Gamma1, FormulaClass::ExistsFree);
    }
    return std::nullopt;
  }

 private:
  Result fail(FormulaClass c, const Formula& f, std::string clause) {
    return Rejection{c, path_, f, std::move(clause)};
  }

  template <class Fn>
  Result child(std::size_t index, Fn&& fn) {
    path_.push_back(index);
    Result r = fn();
    path_.pop_back();
    return r;
  }

  Result both(const Formula& a, const Formula& b, FormulaClass c) {
    if (auto r = child(0, [&] { return check(a, c); })) return r;
    return child(1, [&] { return check(b, c); });
  }

  Result body(const Formula& b, FormulaClass c) {
    return child(0, [&] { return check(b, c); });
  }

  bool is_qf(const Formula& f) { return !Checker().qf(f).has_value(); }

  // Quantifier-free, or forall z with quantifier-free scope.
  bool is_pi1_matrix(const Formula& f) {
    if (is_qf(f)) return true;
    auto* a = as<ast::ForallNum>(f);
    return a && is_qf(a->body);
  }

  Result qf(const Formula& f) {
    constexpr auto C = FormulaClass::QuantifierFree;
    return std::visit(
        [&](const auto& n) -> Result {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, ast::Eq>) {
            return std::nullopt;
          } else if constexpr (std::is_same_v<T, ast::And> || std::is_same_v<T, ast::Imp> ||
                               std::is_same_v<T, ast::Iff>) {
            return both(n.lhs, n.rhs, C);
          } else if constexpr (std::is_same_v<T, ast::Not>) {
            return body(n.body, C);
          } else if constexpr (std::is_same_v<T, ast::Or>) {
            return fail(C, f, "quantifier-free: a disjunction abbreviates an existential");
          } else if constexpr (std::is_same_v<T, ast::DefNum> || std::is_same_v<T, ast::DefFun>) {
            return fail(C, f, "quantifier-free: a definedness atom abbreviates an existential");
          } else {
            return fail(C, f, "quantifier-free: quantifier not allowed");
          }
        },
        f.node().v);
  }

  Result exists_free(const Formula& f) {
    constexpr auto C = FormulaClass::ExistsFree;
    return std::visit(
        [&](const auto& n) -> Result {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, ast::Eq>) {
            return std::nullopt;
          } else if constexpr (std::is_same_v<T, ast::And> || std::is_same_v<T, ast::Imp> ||
                               std::is_same_v<T, ast::Iff>) {
            return both(n.lhs, n.rhs, C);
          } else if constexpr (std::is_same_v<T, ast::Not> || std::is_same_v<T, ast::ForallNum> ||
                               std::is_same_v<T, ast::ForallFun>) {
            return body(n.body, C);
          } else if constexpr (std::is_same_v<T, ast::Or>) {
            return fail(C, f, "exists-free: disjunction not allowed");
          } else if constexpr (std::is_same_v<T, ast::DefNum> || std::is_same_v<T, ast::DefFun>) {
            return fail(C, f, "exists-free: definedness atom hides an existential");
          } else {
            return fail(C, f, "exists-free: existential quantifier not allowed");
          }
        },
        f.node().v);
  }

  // exists x (sub(x, t) = 0 and P) with x not in t and P a Pi-1 matrix, i.e.
  // the expansion of a bounded existential.
  bool is_expanded_bounded_num(const ast::ExistsNum& n) {
    auto* a = as<ast::And>(n.body);
    if (!a) return false;
    auto le = as_le(a->lhs);
    if (!le || !is_var(le->first, n.var) || all_names(le->second).count(n.var)) return false;
    return is_pi1_matrix(a->rhs);
  }

  // exists xi (forall k sub(xi(k), tau(k)) = 0 and P).
  bool is_expanded_bounded_fun(const ast::ExistsFun& n) {
    auto* a = as<ast::And>(n.body);
    if (!a) return false;
    auto* all = as<ast::ForallNum>(a->lhs);
    if (!all) return false;
    auto le = as_le(all->body);
    if (!le) return false;
    auto* lhs = as<ast::Eval>(le->first);
    auto* rhs = as<ast::Eval>(le->second);
    if (!lhs || !rhs || !is_fun_var(lhs->fun, n.var) || !is_var(lhs->arg, all->var) || !is_var(rhs->arg, all->var))
      return false;
    auto names = all_names(rhs->fun);
    if (names.count(n.var) || names.count(all->var)) return false;
    return is_pi1_matrix(a->rhs);
  }

  Result negative(const Formula& f, bool lifschitz) {
    const FormulaClass C = lifschitz ? FormulaClass::NL : FormulaClass::NK;
    const std::string label = lifschitz ? "N_L" : "N_K";
    if (is_qf(f)) return std::nullopt;
    return std::visit(
        [&](const auto& n) -> Result {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, ast::ExistsNum> || std::is_same_v<T, ast::ExistsFun>) {
            if (is_qf(n.body)) return std::nullopt;
            if constexpr (std::is_same_v<T, ast::ExistsNum>) {
              if (lifschitz && is_expanded_bounded_num(n)) return std::nullopt;
            } else {
              if (lifschitz && is_expanded_bounded_fun(n)) return std::nullopt;
            }
            return fail(C, f, label + ": existential scope must be quantifier-free");
          } else if constexpr (std::is_same_v<T, ast::DefNum> || std::is_same_v<T, ast::DefFun>) {
            return std::nullopt;
          } else if constexpr (std::is_same_v<T, ast::ExistsNumBdd> || std::is_same_v<T, ast::ExistsFunBdd>) {
            if (all_names(n.bound).count(n.var)) return fail(C, f, label + ": bound variable occurs in bound term");
            if (lifschitz && is_pi1_matrix(n.body)) return std::nullopt;
            if constexpr (std::is_same_v<T, ast::ExistsNumBdd>) {
              if (is_qf(n.body)) return std::nullopt;
            }
            return fail(C, f,
                        lifschitz ? label + ": bounded existential scope must be forall z with quantifier-free scope"
                                  : label + ": a bounded existential needs a number bound and quantifier-free scope");
          } else if constexpr (std::is_same_v<T, ast::Or>) {
            if (is_qf(n.lhs) && is_qf(n.rhs)) return std::nullopt;
            return fail(C, f, label + ": disjunction is an existential whose scope must be quantifier-free");
          } else if constexpr (std::is_same_v<T, ast::And> || std::is_same_v<T, ast::Imp> ||
                               std::is_same_v<T, ast::Iff>) {
            return both(n.lhs, n.rhs, C);
          } else if constexpr (std::is_same_v<T, ast::Not> || std::is_same_v<T, ast::ForallNum> ||
                               std::is_same_v<T, ast::ForallFun>) {
            return body(n.body, C);
          } else {
            return std::nullopt;
          }
        },
        f.node().v);
  }

  Result gamma(const Formula& f, FormulaClass C, FormulaClass H) {
    const std::string label(class_name(C));
    if (is_qf(f)) return std::nullopt;
    return std::visit(
        [&](const auto& n) -> Result {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, ast::And> || std::is_same_v<T, ast::Or>) {
            return both(n.lhs, n.rhs, C);
          } else if constexpr (std::is_same_v<T, ast::ForallNum> || std::is_same_v<T, ast::ForallFun> ||
                               std::is_same_v<T, ast::ExistsNum> || std::is_same_v<T, ast::ExistsFun> ||
                               std::is_same_v<T, ast::ExistsNumBdd> || std::is_same_v<T, ast::ExistsFunBdd>) {
            return body(n.body, C);
          } else if constexpr (std::is_same_v<T, ast::DefNum> || std::is_same_v<T, ast::DefFun>) {
            return std::nullopt;
          } else if constexpr (std::is_same_v<T, ast::Imp>) {
            if (auto r = child(0, [&] { return check(n.lhs, H); })) {
              r->clause = label + ": implication hypothesis must be in " + std::string(class_name(H)) + " (" +
                          r->clause + ")";
              return r;
            }
            return child(1, [&] { return check(n.rhs, C); });
          } else if constexpr (std::is_same_v<T, ast::Not>) {
            if (auto r = child(0, [&] { return check(n.body, H); })) {
              r->clause = label + ": negated formula must be in " + std::string(class_name(H)) + " (" + r->clause + ")";
              return r;
            }
            return std::nullopt;
          } else if constexpr (std::is_same_v<T, ast::Iff>) {
            if (auto r = both(n.lhs, n.rhs, H)) {
              r->clause = label + ": both sides of an equivalence must be in " + std::string(class_name(H)) + " (" +
                          r->clause + ")";
              return r;
            }
            return both(n.lhs, n.rhs, C);
          } else {
            return std::nullopt;
          }
        },
        f.node().v);
  }

  Path path_;
};

}  // namespace

std::optional<Rejection> reject_reason(const Formula& f, FormulaClass c) { return Checker().check(f, c); }

bool in_class(const Formula& f, FormulaClass c) { return !reject_reason(f, c).has_value(); }

ClassReport classify_report(const Formula& f) {
  ClassReport report{f, {}, {}};
  for (FormulaClass c : kAllClasses) {
    auto r = reject_reason(f, c);
    report.member[c] = !r.has_value();
    if (r) report.rejections.push_back(std::move(*r));
  }
  return report;
}

}  // namespace realiz

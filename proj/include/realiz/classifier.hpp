#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "realiz/formula.hpp"

namespace realiz {

enum class FormulaClass { QuantifierFree, ExistsFree, NK, GammaK, NL, GammaL, Gamma1 };

inline constexpr FormulaClass kAllClasses[] = {FormulaClass::QuantifierFree, FormulaClass::ExistsFree,
                                               FormulaClass::NK,             FormulaClass::GammaK,
                                               FormulaClass::NL,             FormulaClass::GammaL,
                                               FormulaClass::Gamma1};

std::string_view class_name(FormulaClass c);
std::optional<FormulaClass> class_from_name(std::string_view name);

/// Why a formula is not in a class: the offending subformula, reached from
/// the root by child indices (0 = left/body, 1 = right), and the clause that
/// failed.
struct Rejection {
  FormulaClass cls;
  std::vector<std::size_t> path;
  Formula subformula;
  std::string clause;
};

struct ClassReport {
  Formula formula;
  std::map<FormulaClass, bool> member;
  std::vector<Rejection> rejections;
};

bool in_class(const Formula& f, FormulaClass c);
/// nullopt when f is in c.
std::optional<Rejection> reject_reason(const Formula& f, FormulaClass c);
ClassReport classify_report(const Formula& f);

}  // namespace realiz

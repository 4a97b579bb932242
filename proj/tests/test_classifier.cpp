#include "doctest.h"

#include <fstream>
#include <sstream>

#include "realiz/classifier.hpp"
#include "realiz/formula.hpp"
#include "support/corpus.hpp"
#include "support/gen_formula.hpp"

using namespace realiz;

TEST_CASE("classify examples") {
  CHECK(in_class(parse("(exists-num x (= (ev xi x) 0))"), FormulaClass::NK));

  Formula markov = parse("(imp (not (not (exists-num x (= (ev a x) 0)))) (exists-num x (= (ev a x) 0)))");
  CHECK(in_class(markov, FormulaClass::NK));
  CHECK_FALSE(in_class(markov, FormulaClass::ExistsFree));

  Formula llpo_conclusion = parse(
      "(exists-num-bdd y 1 (forall-num n (and (imp (= y 0) (= (ev xi n) 0)) (imp (not (= y 0)) (= (ev zeta n) 0)))))");
  CHECK(in_class(llpo_conclusion, FormulaClass::NL));
  CHECK_FALSE(in_class(llpo_conclusion, FormulaClass::NK));
}

TEST_CASE("atomic formula is in every class") {
  auto report = classify_report(parse("(= 0 0)"));
  for (FormulaClass c : kAllClasses) CHECK(report.member.at(c));
  CHECK(report.rejections.empty());
}

TEST_CASE("existential rejection path") {
  auto report = classify_report(parse("(exists-fun xi (= (ev xi 0) 0))"));
  CHECK_FALSE(report.member.at(FormulaClass::ExistsFree));
  CHECK(report.member.at(FormulaClass::NK));
  bool found = false;
  for (const auto& r : report.rejections) {
    if (r.cls != FormulaClass::ExistsFree) continue;
    found = true;
    CHECK(r.path.empty());
    CHECK(r.clause.find("existential") != std::string::npos);
  }
  CHECK(found);

  auto deep = reject_reason(parse("(and (= 0 0) (forall-num y (exists-num x (forall-num z (= x z)))))"),
                            FormulaClass::NK);
  REQUIRE(deep);
  CHECK(deep->path == std::vector<std::size_t>{1, 0});
  CHECK(print(deep->subformula) == "(exists-num x (forall-num z (= x z)))");
}

TEST_CASE("corpus statements") {
  Formula tri = corpus::load("trichotomy.sexp").at(0);
  CHECK(in_class(tri, FormulaClass::GammaL));
  CHECK(in_class(tri, FormulaClass::GammaK));
  CHECK_FALSE(in_class(tri, FormulaClass::NL));

  Formula dich = corpus::load("dichotomy.sexp").at(0);
  CHECK(in_class(dich, FormulaClass::GammaK));
  CHECK(in_class(dich, FormulaClass::Gamma1));

  Formula llpo = corpus::load("llpo.sexp").at(0);
  CHECK(in_class(llpo, FormulaClass::NL));
  CHECK_FALSE(in_class(llpo, FormulaClass::NK));

  Formula lpo = corpus::load("lpo.sexp").at(0);
  CHECK_FALSE(in_class(lpo, FormulaClass::NL));
  CHECK(in_class(lpo, FormulaClass::GammaK));
}

TEST_CASE("Gamma_1 restricts hypotheses to exists-free formulas") {
  Formula f = parse("(imp (exists-num s (= (ev xi s) 1)) (exists-fun zeta (= (ev zeta 0) 0)))");
  CHECK(in_class(f, FormulaClass::GammaK));
  CHECK_FALSE(in_class(f, FormulaClass::Gamma1));
  auto r = reject_reason(f, FormulaClass::Gamma1);
  REQUIRE(r);
  CHECK(r->path == std::vector<std::size_t>{0});
}

TEST_CASE("definedness atoms are qf-scoped existentials") {
  Formula d = parse("(def-fun a xi)");
  CHECK(in_class(d, FormulaClass::NK));
  CHECK_FALSE(in_class(d, FormulaClass::ExistsFree));
  CHECK_FALSE(in_class(d, FormulaClass::QuantifierFree));
  CHECK(in_class(desugar(d), FormulaClass::NK));
  CHECK(in_class(desugar(parse("(def-num a xi)")), FormulaClass::NK));
}

TEST_CASE("class inclusions on generated formulas") {
  gen::FormulaGen g(2024);
  int members = 0;
  for (int i = 0; i < 500; ++i) {
    Formula f = g.formula(6);
    auto r = classify_report(f);
    auto m = [&](FormulaClass c) { return r.member.at(c); };
    CHECK((!m(FormulaClass::ExistsFree) || m(FormulaClass::NK)));
    CHECK((!m(FormulaClass::NK) || m(FormulaClass::NL)));
    CHECK((!m(FormulaClass::NK) || m(FormulaClass::GammaK)));
    CHECK((!m(FormulaClass::NL) || m(FormulaClass::GammaL)));
    CHECK((!m(FormulaClass::GammaK) || m(FormulaClass::GammaL)));
    CHECK((!m(FormulaClass::Gamma1) || m(FormulaClass::GammaK)));
    CHECK((!m(FormulaClass::QuantifierFree) || m(FormulaClass::ExistsFree)));
    if (m(FormulaClass::NL)) {
      ++members;
      CHECK(in_class(desugar(f), FormulaClass::GammaL));
      CHECK(in_class(desugar(f), FormulaClass::NL));
    }
    if (m(FormulaClass::NK)) CHECK(in_class(desugar(f), FormulaClass::NK));
    if (m(FormulaClass::GammaK)) CHECK(in_class(desugar(f), FormulaClass::GammaK));
  }
  CHECK(members > 20);
}

TEST_CASE("class names") {
  for (FormulaClass c : kAllClasses) CHECK(class_from_name(class_name(c)) == c);
  CHECK_FALSE(class_from_name("nope"));
}

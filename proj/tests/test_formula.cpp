#include "doctest.h"

#include "realiz/encodings.hpp"
#include "realiz/errors.hpp"
#include "realiz/formula.hpp"
#include "support/gen_formula.hpp"

using namespace realiz;

namespace {

bool has_def_or_bdd(const Formula& f) {
  return std::visit(
      [](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ast::DefNum> || std::is_same_v<T, ast::DefFun> ||
                      std::is_same_v<T, ast::ExistsNumBdd> || std::is_same_v<T, ast::ExistsFunBdd> ||
                      std::is_same_v<T, ast::Or> || std::is_same_v<T, ast::Not> || std::is_same_v<T, ast::Iff>)
          return true;
        else if constexpr (std::is_same_v<T, ast::Eq>)
          return false;
        else if constexpr (requires { n.lhs; })
          return has_def_or_bdd(n.lhs) || has_def_or_bdd(n.rhs);
        else
          return has_def_or_bdd(n.body);
      },
      f.node().v);
}

}  // namespace

TEST_CASE("parse atoms and quantifiers") {
  Formula f = parse("(= 0 0)");
  auto* e = as<ast::Eq>(f);
  REQUIRE(e);
  CHECK(as<ast::Zero>(e->lhs));
  CHECK(as<ast::Zero>(e->rhs));

  Formula g = parse("(exists-num x (= (ev xi x) 0))");
  Formula expected = mk::exists_num("x", mk::eq(mk::ev(mk::fun_var("xi"), mk::num_var("x")), mk::zero()));
  CHECK(g == expected);
}

TEST_CASE("bounded binder may not occur in its bound") {
  try {
    parse("(exists-fun-bdd zeta (lam n (ev zeta n)) (forall-num z (= z z)))");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("bound variable occurs in bound term") != std::string::npos);
    CHECK(e.line() == 1);
    CHECK(e.column() == 22);
  }
  CHECK_THROWS_AS(parse("(exists-num-bdd x (app add x 1) (= x x))"), ParseError);
  CHECK_NOTHROW(parse("(exists-num-bdd x (app add y 1) (= x x))"));
}

TEST_CASE("parse errors carry positions") {
  CHECK_THROWS_AS(parse("(= 0"), ParseError);
  CHECK_THROWS_AS(parse("(= 0 0))"), ParseError);
  try {
    parse("(and (= 0 0)\n  (= (app frob 1) 0))");
    FAIL("expected unknown symbol");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("unknown symbol") != std::string::npos);
  }
  try {
    parse("(= (app add 1) 0)");
    FAIL("expected arity mismatch");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("arity mismatch") != std::string::npos);
  }
  CHECK_THROWS_AS(parse("(forall-num 3 (= 0 0))"), ParseError);
  CHECK_THROWS_AS(parse("(exists-num x (ev xi x))"), ParseError);
}

TEST_CASE("comments and multiple formulas") {
  auto fs = parse_all("; header\n(= 0 0) ; trailing\n(= x 1)\n");
  REQUIRE(fs.size() == 2);
  CHECK(print(fs[1]) == "(= x 1)");
}

TEST_CASE("print canonical forms") {
  CHECK(print(mk::eq(mk::zero(), mk::zero())) == "(= 0 0)");
  CHECK(print(mk::conj(mk::eq(mk::zero(), mk::zero()), mk::eq(mk::zero(), mk::zero()))) ==
        "(and (= 0 0) (= 0 0))");
  CHECK(print(mk::eq(mk::succ_of(mk::num_var("x")), mk::numeral(3))) == "(= (succ x) 3)");
  CHECK(print(mk::falsum()) == "(= 0 1)");
  CHECK(print(parse("(=   (ev (lam k (app add k 1))   (succ (succ 0))) 2)")) ==
        "(= (ev (lam k (app add k 1)) 2) 2)");
}

TEST_CASE("round trip over generated formulas") {
  gen::FormulaGen g(7);
  for (int i = 0; i < 300; ++i) {
    Formula f = g.formula(6);
    std::string text = print(f);
    Formula back = parse(text);
    CHECK(back == f);
    CHECK(print(back) == text);
  }
}

TEST_CASE("substitute") {
  Formula f = mk::eq(mk::num_var("x"), mk::zero());
  CHECK(substitute(f, "x", mk::zero()) == mk::eq(mk::zero(), mk::zero()));

  Formula g = parse("(forall-num x (= x y))");
  Formula r = substitute(g, "y", mk::num_var("x"));
  auto* q = as<ast::ForallNum>(r);
  REQUIRE(q);
  CHECK(q->var != "x");
  CHECK(alpha_equal(r, parse("(forall-num x1 (= x1 x))")));
  CHECK(free_vars(r).num == std::set<std::string>{"x"});

  // A[x/a(0)] against a hand unfolding.
  Formula a = parse("(and (= (ev xi x) 0) (forall-num y (imp (= x y) (exists-fun a (= (ev a x) y)))))");
  Formula hand = parse(
      "(and (= (ev xi (ev a 0)) 0) (forall-num y (imp (= (ev a 0) y) (exists-fun a1 (= (ev a1 (ev a 0)) y)))))");
  CHECK(alpha_equal(substitute(a, "x", mk::ev(mk::fun_var("a"), mk::zero())), hand));

  // Shadowed occurrences are untouched.
  Formula sh = parse("(and (= x 0) (exists-num x (= x 1)))");
  CHECK(substitute(sh, "x", mk::numeral(5)) == parse("(and (= 5 0) (exists-num x (= x 1)))"));

  // Lambda binders are renamed too.
  Formula lam = parse("(= (ev (lam k (app add k y)) 0) 0)");
  Formula lr = substitute(lam, "y", mk::num_var("k"));
  CHECK(alpha_equal(lr, parse("(= (ev (lam j (app add j k)) 0) 0)")));

  CHECK_THROWS_AS(substitute(f, Sort::Num, "x", AnyTerm{mk::fun_var("xi")}), SortError);
  CHECK(substitute(f, Sort::Num, "x", AnyTerm{mk::numeral(2)}) == parse("(= 2 0)"));
}

TEST_CASE("substitution composition") {
  gen::FormulaGen g(11);
  for (int i = 0; i < 200; ++i) {
    Formula f = g.formula(4);
    NumTerm t = g.num(2);
    NumTerm s = g.num(2);
    if (free_vars(s).num.count("x")) continue;
    Formula lhs = substitute(substitute(f, "x", t), "y", s);
    Formula rhs = substitute(substitute(f, "y", s), "x", substitute(t, "y", s));
    CHECK(alpha_equal(lhs, rhs));
  }
}

TEST_CASE("desugar disjunction and bounded quantifiers") {
  Formula a = parse("(= y 0)");
  Formula b = parse("(= y 1)");
  Formula d = desugar(mk::disj(a, b));
  Formula hand = parse("(exists-num x (and (imp (= x 0) (= y 0)) (imp (imp (= x 0) (= 0 1)) (= y 1))))");
  CHECK(d == hand);

  Formula bdd = parse("(exists-fun-bdd xi tau (forall-num z (= (ev xi z) z)))");
  Formula hand2 = parse(
      "(exists-fun xi (and (forall-num n (= (app sub (ev xi n) (ev tau n)) 0)) (forall-num z (= (ev xi z) z))))");
  CHECK(desugar(bdd) == hand2);

  Formula nb = parse("(exists-num-bdd y 1 (= y 0))");
  CHECK(desugar(nb) == parse("(exists-num y (and (= (app sub y 1) 0) (= y 0)))"));

  CHECK(desugar(parse("(not (= 0 0))")) == parse("(imp (= 0 0) (= 0 1))"));
  CHECK(desugar(parse("(iff (= 0 0) (= 1 1))")) == parse("(and (imp (= 0 0) (= 1 1)) (imp (= 1 1) (= 0 0)))"));
}

TEST_CASE("desugar definedness atoms") {
  Formula d = desugar(parse("(def-num alpha beta)"));
  auto* ex = as<ast::ExistsNum>(d);
  REQUIRE(ex);
  CHECK(is_sugar_free(d));
  Formula hand = parse(
      "(exists-num m (and (imp (= (ev alpha (ev (rec 0 (lam c (app snoc c (ev beta (app len c))))) m)) 0) (= 0 1))"
      " (= (app mod (ev (rec 0 (lam s (app add (app mul 2 (app add (app div s 2) 1))"
      " (app max (app mod s 2) (app sg (ev alpha (ev (rec 0 (lam c (app snoc c (ev beta (app len c)))))"
      " (app div s 2)))))))) m) 2) 0)))");
  CHECK(d == hand);

  Formula df = desugar(parse("(def-fun alpha beta)"));
  auto* fa = as<ast::ForallNum>(df);
  REQUIRE(fa);
  CHECK(as<ast::ExistsNum>(fa->body));
  CHECK(free_vars(df) == FreeVars{{}, {"alpha", "beta"}});
}

TEST_CASE("desugar is idempotent and removes sugar") {
  gen::FormulaGen g(3);
  for (int i = 0; i < 300; ++i) {
    Formula f = g.formula(5);
    Formula d = desugar(f);
    CHECK_FALSE(has_def_or_bdd(d));
    CHECK(desugar(d) == d);
    CHECK(free_vars(d) == free_vars(f));
  }
}

TEST_CASE("free variables") {
  CHECK(free_vars(parse("(= x 0)")) == FreeVars{{"x"}, {}});
  CHECK(free_vars(parse("(forall-num x (= x (ev xi 0)))")) == FreeVars{{}, {"xi"}});
  CHECK(free_vars(parse("(exists-num-bdd x y (= x (ev (lam k (app add k z)) 0)))")) == FreeVars{{"y", "z"}, {}});
}

TEST_CASE("alpha equality") {
  CHECK(alpha_equal(parse("(forall-num x (= x y))"), parse("(forall-num z (= z y))")));
  CHECK_FALSE(alpha_equal(parse("(forall-num x (= x y))"), parse("(forall-num y (= y y))")));
  CHECK_FALSE(alpha_equal(parse("(forall-num x (= x 0))"), parse("(forall-fun x (= 0 0))")));
}

TEST_CASE("beta normalization") {
  Formula f = parse("(= (ev (lam k (app add k 1)) (ev (lam j j) 4)) 5)");
  CHECK(beta_normalize(f) == parse("(= (app add 4 1) 5)"));
}

TEST_CASE("fresh names") {
  CHECK(fresh_name("x", {"y"}) == "x");
  CHECK(fresh_name("x", {"x", "x_1"}) == "x_2");
  NameSupply s({"b"});
  CHECK(s.fresh("b") == "b_1");
  CHECK(s.fresh("b") == "b_2");
}

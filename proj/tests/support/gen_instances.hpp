#pragma once

#include <random>
#include <string>
#include <vector>

#include "realiz/formula.hpp"
#include "realiz/semantics.hpp"

namespace gen {

namespace mk = realiz::mk;

struct Instance {
  realiz::Formula formula;
  realiz::Env env;
};

// Random formulas of the negative classes over a table xi with small values.
// With lifschitz set, every formula contains a bounded existential whose scope
// is universal.
class InstanceGen {
 public:
  InstanceGen(std::uint64_t seed, bool lifschitz) : rng_(seed), lifschitz_(lifschitz) {}

  Instance next() {
    std::vector<realiz::Nat> values(12);
    for (auto& v : values) v = pick(4);
    realiz::Env env = realiz::Env().bind("xi", realiz::baire::table(values, pick(4)));
    counter_ = 0;
    realiz::Formula f = lifschitz_ ? mk::conj(bounded({}), negative({}, 2)) : negative({}, 3);
    if (lifschitz_ && pick(2)) f = negative_around(f);
    return {f, env};
  }

 private:
  using Vars = std::vector<std::string>;

  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

  std::string fresh(const char* base) { return base + std::to_string(counter_++); }

  realiz::NumTerm term(const Vars& vars, const std::string& fun = "xi") {
    std::size_t k = vars.empty() ? 0 : pick(4);
    switch (k) {
      case 0: return mk::numeral(pick(4));
      case 1: return mk::num_var(vars[pick(vars.size())]);
      case 2: return mk::ev(mk::fun_var(fun), mk::num_var(vars[pick(vars.size())]));
      default: return mk::app("add", {mk::num_var(vars[pick(vars.size())]), mk::numeral(1)});
    }
  }

  realiz::Formula atom(const Vars& vars, const std::string& fun = "xi") {
    if (pick(3) == 0) return mk::le(term(vars, fun), mk::numeral(1 + pick(3)));
    return mk::eq(term(vars, fun), term(vars, fun));
  }

  realiz::Formula qf(const Vars& vars, int depth, const std::string& fun = "xi") {
    if (depth <= 0) return atom(vars, fun);
    switch (pick(5)) {
      case 0: return mk::conj(qf(vars, depth - 1, fun), qf(vars, depth - 1, fun));
      case 1: return mk::imp(qf(vars, depth - 1, fun), qf(vars, depth - 1, fun));
      case 2: return mk::neg(qf(vars, depth - 1, fun));
      default: return atom(vars, fun);
    }
  }

  Vars with(Vars vars, const std::string& v) {
    vars.push_back(v);
    return vars;
  }

  realiz::Formula negative(const Vars& vars, int depth) {
    if (depth <= 0) return qf(vars, 1);
    switch (pick(9)) {
      case 0: return mk::conj(negative(vars, depth - 1), negative(vars, depth - 1));
      case 1: return mk::imp(negative(vars, depth - 1), negative(vars, depth - 1));
      case 2:
      case 3: {
        std::string x = fresh("x");
        return mk::forall_num(x, negative(with(vars, x), depth - 1));
      }
      case 4:
      case 5: {
        std::string x = fresh("y");
        return mk::exists_num(x, qf(with(vars, x), 1));
      }
      case 6: return mk::disj(qf(vars, 0), qf(vars, 0));
      case 7: {
        std::string z = fresh("zeta");
        std::string y = fresh("y");
        // forall zeta (zeta(c) = 0 -> exists y zeta(y) = 0) or a quantifier-free statement about zeta.
        if (pick(2))
          return mk::forall_fun(z, mk::imp(mk::eq(mk::ev(mk::fun_var(z), mk::numeral(pick(3))), mk::zero()),
                                           mk::exists_num(y, mk::eq(mk::ev(mk::fun_var(z), mk::num_var(y)), mk::zero()))));
        return mk::forall_fun(z, qf(vars, 1, z));
      }
      default: {
        std::string x = fresh("b");
        return mk::exists_num_bdd(x, mk::numeral(pick(4)), qf(with(vars, x), 1));
      }
    }
  }

  // exists x <= c forall z P(x, z), or exists zeta <= 1 forall z P(zeta, z).
  realiz::Formula bounded(const Vars& vars) {
    std::string z = fresh("z");
    if (pick(2)) {
      std::string x = fresh("x");
      Vars inner = with(with(vars, x), z);
      realiz::Formula p = pick(2) ? mk::le(mk::ev(mk::fun_var("xi"), mk::app("add", {mk::num_var(x), mk::num_var(z)})),
                                           mk::numeral(1 + pick(3)))
                                  : qf(inner, 1);
      return mk::exists_num_bdd(x, mk::numeral(pick(5)), mk::forall_num(z, p));
    }
    std::string zeta = fresh("zeta");
    auto zv = mk::fun_var(zeta);
    auto zn = mk::ev(zv, mk::num_var(z));
    auto zs = mk::ev(zv, mk::succ_of(mk::num_var(z)));
    std::size_t k = pick(3);
    realiz::Formula p = k == 0   ? mk::eq(zn, zs)
                        : k == 1 ? mk::imp(mk::eq(mk::ev(mk::fun_var("xi"), mk::num_var(z)), mk::zero()),
                                           mk::eq(zn, mk::numeral(1)))
                                 : mk::neq(zn, zs);
    return mk::exists_fun_bdd(zeta, mk::lam("k", mk::numeral(1)), mk::forall_num(z, p));
  }

  realiz::Formula negative_around(const realiz::Formula& f) {
    if (pick(2)) return mk::imp(qf({}, 1), f);
    std::string x = fresh("x");
    return mk::forall_num(x, f);
  }

  std::mt19937_64 rng_;
  bool lifschitz_;
  int counter_ = 0;
};

}  // namespace gen

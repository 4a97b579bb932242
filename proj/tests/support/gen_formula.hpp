#pragma once

#include <random>
#include <string>
#include <vector>

#include "realiz/formula.hpp"

namespace gen {

using realiz::Formula;
using realiz::FunTerm;
using realiz::NumTerm;
namespace mk = realiz::mk;

class FormulaGen {
 public:
  explicit FormulaGen(std::uint64_t seed) : rng_(seed) {}

  NumTerm num(int depth) {
    int pick = depth <= 0 ? below(3) : below(6);
    switch (pick) {
      case 0: return mk::num_var(one_of(num_names_));
      case 1: return mk::numeral(below(3));
      case 2: return mk::num_var(one_of(num_names_));
      case 3: {
        static const char* syms[] = {"add", "sub", "mul", "max", "pair", "len"};
        std::string s = syms[below(6)];
        if (s == "len") return mk::app(s, {num(depth - 1)});
        return mk::app(s, {num(depth - 1), num(depth - 1)});
      }
      case 4: return mk::ev(fun(depth - 1), num(depth - 1));
      default: return mk::succ_of(num(depth - 1));
    }
  }

  FunTerm fun(int depth) {
    int pick = depth <= 0 ? below(2) : below(5);
    switch (pick) {
      case 0: return mk::fun_var(one_of(fun_names_));
      case 1: return mk::fun_var(one_of(fun_names_));
      case 2: return mk::succ();
      case 3: return mk::lam(one_of(num_names_), num(depth - 1));
      default: return mk::rec(num(depth - 1), fun(depth - 1));
    }
  }

  Formula atom(int term_depth) {
    int pick = below(10);
    if (pick == 0) return mk::def_num(fun(term_depth), fun(term_depth));
    if (pick == 1) return mk::def_fun(fun(term_depth), fun(term_depth));
    return mk::eq(num(term_depth), num(term_depth));
  }

  /// Random formula of nesting depth at most depth, every node kind reachable.
  Formula formula(int depth) {
    if (depth <= 0) return atom(1);
    switch (below(15)) {
      case 0: return atom(2);
      case 1: return mk::conj(formula(depth - 1), formula(depth - 1));
      case 2: return mk::imp(formula(depth - 1), formula(depth - 1));
      case 3: return mk::disj(formula(depth - 1), formula(depth - 1));
      case 4: return mk::neg(formula(depth - 1));
      case 5: return mk::iff(formula(depth - 1), formula(depth - 1));
      case 6: return mk::forall_num(one_of(num_names_), formula(depth - 1));
      case 7: return mk::forall_fun(one_of(fun_names_), formula(depth - 1));
      case 8: return mk::exists_num(one_of(num_names_), formula(depth - 1));
      case 9: return mk::exists_fun(one_of(fun_names_), formula(depth - 1));
      case 10: {
        NumTerm bound = num(1);
        auto used = realiz::all_names(bound);
        for (const auto& v : num_names_)
          if (!used.count(v)) return mk::exists_num_bdd(v, bound, formula(depth - 1));
        return mk::exists_num_bdd("w", bound, formula(depth - 1));
      }
      case 11: {
        FunTerm bound = fun(1);
        auto used = realiz::all_names(bound);
        for (const auto& v : fun_names_)
          if (!used.count(v)) return mk::exists_fun_bdd(v, bound, formula(depth - 1));
        return mk::exists_fun_bdd("omega", bound, formula(depth - 1));
      }
      case 12: return mk::forall_num(one_of(num_names_), mk::imp(atom(1), formula(depth - 1)));
      case 13: return mk::exists_num_bdd("v", mk::numeral(1), mk::forall_num("z", atom(1)));
      default: return atom(2);
    }
  }

  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

 private:
  const std::string& one_of(const std::vector<std::string>& v) { return v[below(v.size())]; }

  std::mt19937_64 rng_;
  std::vector<std::string> num_names_{"x", "y", "z", "n"};
  std::vector<std::string> fun_names_{"xi", "zeta", "alpha"};
};

}  // namespace gen

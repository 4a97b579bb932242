#include "realiz/semantics.hpp"

#include <mutex>

#include "realiz/errors.hpp"
#include "realiz/symbols.hpp"

namespace realiz {

Env Env::bind(const std::string& x, Nat v) const {
  Env e = *this;
  e.nums_[x] = v;
  return e;
}

Env Env::bind(const std::string& xi, const Baire& b) const {
  Env e = *this;
  e.funs_.insert_or_assign(xi, b);
  return e;
}

const Nat* Env::num(const std::string& x) const {
  auto it = nums_.find(x);
  return it == nums_.end() ? nullptr : &it->second;
}

const Baire* Env::fun(const std::string& xi) const {
  auto it = funs_.find(xi);
  return it == funs_.end() ? nullptr : &it->second;
}

void Env::require(const FreeVars& fv) const {
  for (const auto& x : fv.num)
    if (!num(x)) throw InvalidArgument("no value for number variable '" + x + "'");
  for (const auto& xi : fv.fun)
    if (!fun(xi)) throw InvalidArgument("no value for function variable '" + xi + "'");
}

Nat eval_num(const NumTerm& t, const Env& env) {
  return std::visit(
      [&](const auto& n) -> Nat {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ast::NumVar>) {
          const Nat* v = env.num(n.name);
          if (!v) throw InvalidArgument("no value for number variable '" + n.name + "'");
          return *v;
        } else if constexpr (std::is_same_v<T, ast::Zero>) {
          return 0;
        } else if constexpr (std::is_same_v<T, ast::PrimRecApp>) {
          std::vector<Nat> args;
          for (const auto& a : n.args) args.push_back(eval_num(a, env));
          return SymbolTable::builtin().apply(n.symbol, args);
        } else {
          return eval_fun(n.fun, env)(eval_num(n.arg, env));
        }
      },
      t.node().v);
}

Baire eval_fun(const FunTerm& t, const Env& env) {
  return std::visit(
      [&](const auto& n) -> Baire {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ast::FunVar>) {
          const Baire* b = env.fun(n.name);
          if (!b) throw InvalidArgument("no value for function variable '" + n.name + "'");
          return *b;
        } else if constexpr (std::is_same_v<T, ast::Succ>) {
          return baire::successor();
        } else if constexpr (std::is_same_v<T, ast::Lambda>) {
          return baire::from_function([var = n.var, body = n.body, env](Nat k) { return eval_num(body, env.bind(var, k)); },
                                      "lam");
        } else {
          // (R t tau)(0) = t, (R t tau)(n + 1) = tau((R t tau)(n)).
          struct State {
            std::mutex mu;
            std::vector<Nat> values;
          };
          auto state = std::make_shared<State>();
          state->values.push_back(eval_num(n.base, env));
          Baire step = eval_fun(n.step, env);
          return baire::from_function(
              [state, step](Nat k) {
                std::lock_guard<std::mutex> lock(state->mu);
                while (state->values.size() <= k) state->values.push_back(step(state->values.back()));
                return state->values[k];
              },
              "rec");
        }
      },
      t.node().v);
}

bool eval_qf(const Formula& f, const Env& env) {
  return std::visit(
      [&](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ast::Eq>) {
          return eval_num(n.lhs, env) == eval_num(n.rhs, env);
        } else if constexpr (std::is_same_v<T, ast::And>) {
          return eval_qf(n.lhs, env) && eval_qf(n.rhs, env);
        } else if constexpr (std::is_same_v<T, ast::Or>) {
          return eval_qf(n.lhs, env) || eval_qf(n.rhs, env);
        } else if constexpr (std::is_same_v<T, ast::Imp>) {
          return !eval_qf(n.lhs, env) || eval_qf(n.rhs, env);
        } else if constexpr (std::is_same_v<T, ast::Iff>) {
          return eval_qf(n.lhs, env) == eval_qf(n.rhs, env);
        } else if constexpr (std::is_same_v<T, ast::Not>) {
          return !eval_qf(n.body, env);
        } else {
          throw InvalidArgument("eval_qf: not quantifier-free: " + print(f));
        }
      },
      f.node().v);
}

}  // namespace realiz

#include "realiz/witness.hpp"

#include <mutex>
#include <random>

#include "realiz/classifier.hpp"
#include "realiz/errors.hpp"
#include "realiz/symbols.hpp"

namespace realiz {

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Verified: return "verified";
    case Verdict::Refuted: return "refuted";
    case Verdict::Unknown: return "unknown";
  }
  return "?";
}

Budget default_budget(std::uint64_t seed) {
  Budget b;
  b.seed = seed;
  b.battery = {baire::zeros(), baire::constant(1), baire::identity()};
  for (std::uint64_t i = 0; i < 3; ++i) {
    std::mt19937_64 rng(seed * 1000003 + i);
    std::vector<Nat> values(16);
    for (auto& v : values) v = rng() % 4;
    b.battery.push_back(baire::table(values, 0));
  }
  return b;
}

Baire fst_associate() {
  return associate_of(pointwise_map("fst", [](const Baire& x, Nat n) { return x(2 * n); },
                                    [](Nat n) { return 2 * n + 1; }));
}

Baire choice_realizer(std::function<Baire(const Baire&)> choice, std::function<Baire(const Baire&)> inner) {
  ContinuousMap m{"choice",
                  [choice, inner](const Baire& xi, const Key& n) {
                    Baire offer = baire::pair_fun(choice(xi), inner ? inner(xi) : baire::zeros());
                    return associate_of(constant_map("offer", offer)).at(n);
                  },
                  {}};
  return associate_of(m);
}

Baire set_realizer(std::function<CompactCode(const Baire&)> set) {
  ContinuousMap m{"offer-set",
                  [set](const Baire& xi, const Key& n) {
                    return associate_of(constant_map("offer", set(xi).code())).at(n);
                  },
                  {}};
  return associate_of(m);
}

namespace {

CheckResult verified(std::string detail = {}) { return {Verdict::Verified, {}, std::move(detail)}; }
CheckResult refuted(std::string detail) { return {Verdict::Refuted, {}, std::move(detail)}; }
CheckResult unknown(std::string detail) { return {Verdict::Unknown, {}, std::move(detail)}; }

CheckResult under(std::size_t index, CheckResult r) {
  r.path.insert(r.path.begin(), index);
  return r;
}

// Universal aggregation: the first refutation wins, then the first unknown.
struct Tally {
  std::optional<CheckResult> refuted;
  std::optional<CheckResult> unknown;

  bool add(CheckResult r) {
    if (r.verdict == Verdict::Refuted) {
      refuted = std::move(r);
      return true;
    }
    if (r.verdict == Verdict::Unknown && !unknown) unknown = std::move(r);
    return false;
  }
  CheckResult result(std::string detail = {}) const {
    if (refuted) return *refuted;
    if (unknown) return *unknown;
    return verified(std::move(detail));
  }
};

bool is_qf(const Formula& f) { return in_class(f, FormulaClass::QuantifierFree); }

// Reading a partially known function past what is known.
struct Beyond {};

Baire partial(std::vector<Nat> known, std::string label) {
  return Baire(
      [known = std::move(known)](const Key& k) -> Nat {
        if (!k.is_small() || k.small() >= known.size()) throw Beyond{};
        return known[k.small()];
      },
      std::move(label));
}

// A realizer of a true quantifier-free formula that depends only on its shape.
Baire shape_realizer(const Formula& f) {
  if (as<ast::Eq>(f)) return baire::zeros();
  if (auto* a = as<ast::And>(f)) return baire::pair_fun(shape_realizer(a->lhs), shape_realizer(a->rhs));
  if (auto* i = as<ast::Imp>(f)) return associate_of(constant_map("const", shape_realizer(i->rhs)));
  if (as<ast::Not>(f) || as<ast::Iff>(f)) return shape_realizer(desugar_step(f));
  throw InvalidArgument("not quantifier-free: " + print(f));
}

std::optional<std::pair<NumTerm, NumTerm>> as_le(const Formula& f) {
  auto* e = as<ast::Eq>(f);
  if (!e || !as<ast::Zero>(e->rhs)) return std::nullopt;
  auto* app = as<ast::PrimRecApp>(e->lhs);
  if (!app || SymbolTable::builtin().at(app->symbol).name != "sub") return std::nullopt;
  return std::make_pair(app->args[0], app->args[1]);
}

bool is_pi1(const Formula& p) {
  if (is_qf(p)) return true;
  auto* a = as<ast::ForallNum>(p);
  return a && is_qf(a->body);
}

// exists x (sub(x, t) = 0 and P).
struct BoundedNum {
  NumTerm bound;
  Formula matrix;
};

std::optional<BoundedNum> bounded_num(const ast::ExistsNum& n) {
  auto* a = as<ast::And>(n.body);
  if (!a) return std::nullopt;
  auto le = as_le(a->lhs);
  if (!le) return std::nullopt;
  auto* v = as<ast::NumVar>(le->first);
  if (!v || v->name != n.var || all_names(le->second).count(n.var) || !is_pi1(a->rhs)) return std::nullopt;
  return BoundedNum{le->second, a->rhs};
}

// exists xi (forall k sub(xi(k), tau(k)) = 0 and P).
struct BoundedFun {
  FunTerm bound;
  Formula matrix;
};

std::optional<BoundedFun> bounded_fun(const ast::ExistsFun& n) {
  auto* a = as<ast::And>(n.body);
  auto* all = a ? as<ast::ForallNum>(a->lhs) : nullptr;
  auto le = all ? as_le(all->body) : std::nullopt;
  if (!le) return std::nullopt;
  auto* lhs = as<ast::Eval>(le->first);
  auto* rhs = as<ast::Eval>(le->second);
  if (!lhs || !rhs) return std::nullopt;
  auto* xv = as<ast::FunVar>(lhs->fun);
  auto* kl = as<ast::NumVar>(lhs->arg);
  auto* kr = as<ast::NumVar>(rhs->arg);
  if (!xv || xv->name != n.var || !kl || kl->name != all->var || !kr || kr->name != all->var) return std::nullopt;
  auto names = all_names(rhs->fun);
  if (names.count(n.var) || names.count(all->var) || !is_pi1(a->rhs)) return std::nullopt;
  return BoundedFun{rhs->fun, a->rhs};
}

// Functions below tau, as long as the fan at the chosen depth stays within the limit.
std::vector<Baire> below(const Baire& tau, const Budget& budget) {
  Nat d = budget.depth;
  while (d > 0) {
    double count = 1;
    for (Nat n = 0; n < d; ++n) count *= double(tau(n)) + 1;
    if (count <= double(budget.fan_limit)) break;
    --d;
  }
  auto all = codes::make(tau, [](std::span<const Nat>) { return false; }, "below");
  std::vector<Baire> out;
  for (const Node& p : fan(all, d, budget.fan_limit)) out.push_back(baire::table(p, 0));
  return out;
}

std::vector<Baire> fun_candidates(const ast::ExistsFun& n, const Env& env, const Budget& budget) {
  std::vector<Baire> out;
  if (auto bf = bounded_fun(n)) out = below(eval_fun(bf->bound, env), budget);
  out.insert(out.end(), budget.battery.begin(), budget.battery.end());
  for (Nat c = 1; c <= budget.depth; ++c) out.push_back(baire::constant(c));
  return out;
}

// P fails at one of its first `stage` instances. A partially known function
// that is read too far does not refute.
bool refuted_at(const Formula& p, const Env& env, Nat stage) {
  auto fails = [](const Formula& q, const Env& e) {
    try {
      return !eval_qf(q, e);
    } catch (const Beyond&) {
      return false;
    }
  };
  if (auto* a = as<ast::ForallNum>(p)) {
    for (Nat z = 0; z < stage; ++z)
      if (fails(a->body, env.bind(a->var, z))) return true;
    return false;
  }
  return fails(p, env);
}

bool defined_at(const Baire& alpha, const Baire& beta, Nat m) {
  for (Nat j = 0; j <= m; ++j) {
    Nat v = alpha.at(Key::of_nats(beta.prefix(j)));
    if ((v != 0) != (j == m)) return false;
  }
  return true;
}

class Decider {
 public:
  explicit Decider(const Budget& budget) : b_(budget) {}

  CheckResult run(const Formula& f, const Env& env) {
    try {
      return step(f, env);
    } catch (const Error& e) {
      return unknown(e.what());
    }
  }

 private:
  CheckResult step(const Formula& f, const Env& env) {
    return std::visit(
        [&](const auto& n) -> CheckResult {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, ast::Eq>) {
            Nat l = eval_num(n.lhs, env);
            Nat r = eval_num(n.rhs, env);
            std::string d = print(f) + ": " + std::to_string(l) + " vs " + std::to_string(r);
            return l == r ? verified(d) : refuted(d);
          } else if constexpr (std::is_same_v<T, ast::And>) {
            Tally t;
            if (!t.add(under(0, run(n.lhs, env)))) t.add(under(1, run(n.rhs, env)));
            return t.result();
          } else if constexpr (std::is_same_v<T, ast::Imp>) {
            CheckResult a = run(n.lhs, env);
            if (a.verdict == Verdict::Refuted) return verified("hypothesis false");
            CheckResult c = under(1, run(n.rhs, env));
            if (c.verdict == Verdict::Verified) return c;
            if (a.verdict == Verdict::Verified) return c;
            return under(0, a);
          } else if constexpr (std::is_same_v<T, ast::Or>) {
            CheckResult l = run(n.lhs, env);
            if (l.verdict == Verdict::Verified) return under(0, l);
            CheckResult r = run(n.rhs, env);
            if (r.verdict == Verdict::Verified) return under(1, r);
            if (l.verdict == Verdict::Refuted && r.verdict == Verdict::Refuted) return under(1, r);
            return l.verdict == Verdict::Unknown ? under(0, l) : under(1, r);
          } else if constexpr (std::is_same_v<T, ast::Not>) {
            CheckResult r = under(0, run(n.body, env));
            if (r.verdict == Verdict::Verified) r.verdict = Verdict::Refuted;
            else if (r.verdict == Verdict::Refuted) r.verdict = Verdict::Verified;
            return r;
          } else if constexpr (std::is_same_v<T, ast::Iff>) {
            CheckResult l = run(n.lhs, env);
            CheckResult r = run(n.rhs, env);
            if (l.verdict == Verdict::Unknown) return under(0, l);
            if (r.verdict == Verdict::Unknown) return under(1, r);
            return l.verdict == r.verdict ? verified() : refuted("sides differ: " + print(f));
          } else if constexpr (std::is_same_v<T, ast::ForallNum>) {
            Tally t;
            for (Nat k = 0; k < b_.depth; ++k)
              if (t.add(under(0, run(n.body, env.bind(n.var, k))))) break;
            return t.result("checked below " + std::to_string(b_.depth));
          } else if constexpr (std::is_same_v<T, ast::ForallFun>) {
            Tally t;
            for (const Baire& xi : b_.battery)
              if (t.add(under(0, run(n.body, env.bind(n.var, xi))))) break;
            return t.result("checked on battery");
          } else if constexpr (std::is_same_v<T, ast::ExistsNum>) {
            Nat reach = is_qf(n.body) ? b_.search : b_.depth;
            for (Nat k = 0; k < reach; ++k)
              if (run(n.body, env.bind(n.var, k)).verdict == Verdict::Verified)
                return verified(n.var + " = " + std::to_string(k));
            return unknown("no witness below " + std::to_string(reach));
          } else if constexpr (std::is_same_v<T, ast::ExistsFun>) {
            for (const Baire& zeta : fun_candidates(n, env, b_))
              if (run(n.body, env.bind(n.var, zeta)).verdict == Verdict::Verified)
                return verified(n.var + " = " + zeta.label());
            return unknown("no witness among candidates");
          } else if constexpr (std::is_same_v<T, ast::ExistsNumBdd>) {
            Nat t = eval_num(n.bound, env);
            std::optional<CheckResult> open;
            for (Nat k = 0; k <= t; ++k) {
              if (k >= b_.fuel) return unknown("bound " + std::to_string(t) + " beyond fuel");
              CheckResult r = run(n.body, env.bind(n.var, k));
              if (r.verdict == Verdict::Verified) return verified(n.var + " = " + std::to_string(k));
              if (r.verdict == Verdict::Unknown && !open) open = under(0, r);
            }
            if (open) return *open;
            return refuted("no witness up to " + std::to_string(t));
          } else if constexpr (std::is_same_v<T, ast::ExistsFunBdd>) {
            for (const Baire& zeta : below(eval_fun(n.bound, env), b_))
              if (run(n.body, env.bind(n.var, zeta)).verdict == Verdict::Verified)
                return verified(n.var + " = " + print_prefix(zeta));
            return unknown("no witness in the bounded fan");
          } else if constexpr (std::is_same_v<T, ast::DefNum>) {
            auto r = apply_num(eval_fun(n.fun, env), eval_fun(n.arg, env), b_.fuel);
            if (std::holds_alternative<Defined>(r)) return verified();
            return unknown("application undefined within fuel");
          } else {
            Baire a = eval_fun(n.fun, env);
            Baire x = eval_fun(n.arg, env);
            if (auto p = undefined_position(a, x, b_.depth, b_.fuel))
              return unknown("application undefined at " + std::to_string(*p) + " within fuel");
            return verified("defined below " + std::to_string(b_.depth));
          }
        },
        f.node().v);
  }

  std::string print_prefix(const Baire& b) {
    std::string s = "<";
    for (Nat n = 0; n < b_.depth; ++n) s += (n ? " " : "") + std::to_string(b(n));
    return s + " ...>";
  }

  const Budget& b_;
};

class Builder {
 public:
  /// An optimistic builder treats undecided hypotheses as false.
  Builder(Mode mode, const Budget& budget, bool optimistic = false)
      : mode_(mode), b_(budget), optimistic_(optimistic) {}

  Baire build(const Formula& f, const Env& env) {
    if (is_qf(f)) return shape_realizer(f);
    return std::visit(
        [&](const auto& n) -> Baire {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, ast::And>) {
            return baire::pair_fun(build(n.lhs, env), build(n.rhs, env));
          } else if constexpr (std::is_same_v<T, ast::Imp>) {
            Verdict h = Decider(b_).run(n.lhs, env).verdict;
            if (h == Verdict::Refuted) return baire::zeros();
            if (Decider(b_).run(n.rhs, env).verdict == Verdict::Verified)
              return associate_of(constant_map("const", build(n.rhs, env)));
            if (optimistic_ && h == Verdict::Unknown) return baire::zeros();
            throw NotCertifiable("implication not certifiable: " + print(f));
          } else if constexpr (std::is_same_v<T, ast::ForallNum>) {
            Builder self = *this;
            return baire::pack_seq([self, var = n.var, body = n.body, env](Nat k) mutable {
              return self.build(body, env.bind(var, k));
            }, "omega-all");
          } else if constexpr (std::is_same_v<T, ast::ForallFun>) {
            Builder self = *this;
            ContinuousMap m{"omega-all-fun",
                            [self, var = n.var, body = n.body, env](const Baire& xi, const Key& k) mutable {
                              return self.build(body, env.bind(var, xi)).at(k);
                            },
                            {}};
            return associate_of(m);
          } else if constexpr (std::is_same_v<T, ast::ExistsNum>) {
            if (mode_ == Mode::Lrf && !is_qf(n.body))
              if (auto bn = bounded_num(n)) return number_tree(n.var, *bn, env);
            if (!is_qf(n.body)) throw ClassificationError("existential scope not quantifier-free: " + print(f));
            for (Nat w = 0; w < b_.search; ++w)
              if (eval_qf(n.body, env.bind(n.var, w))) return offer(baire::cons(w, shape_realizer(n.body)));
            throw NotCertifiable("no witness below " + std::to_string(b_.search) + " for " + print(f));
          } else if constexpr (std::is_same_v<T, ast::ExistsFun>) {
            if (mode_ == Mode::Lrf && !is_qf(n.body))
              if (auto bf = bounded_fun(n)) return function_tree(n.var, *bf, env);
            if (!is_qf(n.body)) throw ClassificationError("existential scope not quantifier-free: " + print(f));
            for (const Baire& zeta : fun_candidates(n, env, b_))
              if (eval_qf(n.body, env.bind(n.var, zeta)))
                return offer(baire::pair_fun(zeta, shape_realizer(n.body)));
            throw NotCertifiable("no witness among candidates for " + print(f));
          } else if constexpr (std::is_same_v<T, ast::DefNum>) {
            auto r = apply_num(eval_fun(n.fun, env), eval_fun(n.arg, env), b_.fuel);
            if (auto* d = std::get_if<Defined>(&r)) return offer(baire::cons(d->use, baire::zeros()));
            throw NotCertifiable("application undefined within fuel: " + print(f));
          } else if constexpr (std::is_same_v<T, ast::Eq>) {
            return baire::zeros();
          } else {
            return build(desugar_step(f), env);
          }
        },
        f.node().v);
  }

 private:
  Baire offer(const Baire& r) { return mode_ == Mode::Rf ? r : codes::singleton(r).code(); }

  Baire certified(const CompactCode& code) {
    if (!leftmost_path(code, b_.depth, b_.fan_limit))
      throw NotCertifiable(code.name + " has no node at depth " + std::to_string(b_.depth));
    return code.code();
  }

  // Members cons(x, r) for x <= t with P(x) not yet refuted, r realizing
  // the scope uniformly in x.
  Baire number_tree(const std::string& var, const BoundedNum& bn, const Env& env) {
    Nat t = eval_num(bn.bound, env);
    Baire rest = baire::pair_fun(baire::zeros(), matrix_realizer(bn.matrix));
    auto code = codes::make(
        baire::cons(t, rest),
        [t, rest, var, p = bn.matrix, env, depth = b_.depth](std::span<const Nat> s) {
          if (s.empty()) return false;
          if (s[0] > t) return true;
          for (std::size_t i = 1; i < s.size(); ++i)
            if (s[i] != rest(i - 1)) return true;
          return refuted_at(p, env.bind(var, s[0]), std::min<Nat>(s.size(), depth));
        },
        "witness-tree(" + var + ")");
    return certified(code);
  }

  // Members pair(xi, r) for xi <= tau with P(xi) not yet refuted.
  Baire function_tree(const std::string& var, const BoundedFun& bf, const Env& env) {
    Baire tau = eval_fun(bf.bound, env);
    Baire rest = baire::pair_fun(baire::pack_seq([](Nat) { return baire::zeros(); }), matrix_realizer(bf.matrix));
    auto code = codes::make(
        baire::pair_fun(tau, rest),
        [tau, rest, var, p = bf.matrix, env, depth = b_.depth](std::span<const Nat> s) {
          std::vector<Nat> known;
          for (std::size_t i = 0; i < s.size(); ++i) {
            if (i % 2 == 1 && s[i] != rest(i / 2)) return true;
            if (i % 2 == 0) {
              if (s[i] > tau(i / 2)) return true;
              known.push_back(s[i]);
            }
          }
          Nat stage = std::min<Nat>(known.size(), depth);
          return refuted_at(p, env.bind(var, partial(std::move(known), var)), stage);
        },
        "witness-tree(" + var + ")");
    return certified(code);
  }

  Baire matrix_realizer(const Formula& p) {
    if (auto* a = as<ast::ForallNum>(p)) {
      Baire q = shape_realizer(a->body);
      return baire::pack_seq([q](Nat) { return q; });
    }
    return shape_realizer(p);
  }

  Mode mode_;
  Budget b_;
  bool optimistic_;
};

// A member of [code] extending `ext`: leftmost values up to `window`, the
// bound beyond it. The bound is exact for singletons and for the witness
// trees built above, whose members agree with it past the witness entries.
Baire member(const CompactCode& code, Node ext, Nat window, std::size_t limit) {
  struct State {
    std::mutex mu;
    Node path;
  };
  auto st = std::make_shared<State>();
  st->path = std::move(ext);
  return Baire(
      [code, st, window, limit](const Key& k) -> Nat {
        if (!k.is_small() || k.small() >= window) return code.bound.at(k);
        Nat n = k.small();
        std::lock_guard<std::mutex> lock(st->mu);
        while (st->path.size() <= n) {
          Nat pos = st->path.size();
          Nat b = code.bound(pos);
          bool ok = false;
          for (Nat y = 0; y <= b && y < limit; ++y) {
            st->path.push_back(y);
            if (!code.rejects(st->path)) {
              ok = true;
              break;
            }
            st->path.pop_back();
          }
          if (!ok) throw EvaluationFault(pos, "no admissible extension in " + code.name);
        }
        return st->path[n];
      },
      "member(" + code.name + ")");
}

class Checker {
 public:
  Checker(Mode mode, const Budget& budget) : mode_(mode), b_(budget) {}

  CheckResult run(const Baire& a, const Formula& f, const Env& env) {
    try {
      return step(a, f, env);
    } catch (const Error& e) {
      return unknown(e.what());
    }
  }

 private:
  FormulaClass cls() const { return mode_ == Mode::Rf ? FormulaClass::NK : FormulaClass::NL; }

  CheckResult step(const Baire& a, const Formula& f, const Env& env) {
    return std::visit(
        [&](const auto& n) -> CheckResult {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, ast::Eq>) {
            return Decider(b_).run(f, env);
          } else if constexpr (std::is_same_v<T, ast::And>) {
            Tally t;
            if (!t.add(under(0, run(baire::proj(a, Side::Fst), n.lhs, env))))
              t.add(under(1, run(baire::proj(a, Side::Snd), n.rhs, env)));
            return t.result();
          } else if constexpr (std::is_same_v<T, ast::Imp>) {
            return implication(a, n, env);
          } else if constexpr (std::is_same_v<T, ast::ForallNum>) {
            Tally t;
            for (Nat k = 0; k < b_.depth; ++k)
              if (t.add(under(0, run(baire::component(a, k), n.body, env.bind(n.var, k))))) break;
            return t.result("checked below " + std::to_string(b_.depth));
          } else if constexpr (std::is_same_v<T, ast::ForallFun>) {
            Tally t;
            for (const Baire& xi : b_.battery)
              if (t.add(under(0, applied(a, xi, n.body, env.bind(n.var, xi))))) break;
            return t.result("checked on battery");
          } else if constexpr (std::is_same_v<T, ast::ExistsNum>) {
            return witnessed(a, [&](const Baire& b) {
              return under(0, run(baire::tail(b), n.body, env.bind(n.var, b(0))));
            });
          } else if constexpr (std::is_same_v<T, ast::ExistsFun>) {
            return witnessed(a, [&](const Baire& b) {
              return under(0, run(baire::proj(b, Side::Snd), n.body, env.bind(n.var, baire::proj(b, Side::Fst))));
            });
          } else if constexpr (std::is_same_v<T, ast::DefNum>) {
            Baire fun = eval_fun(n.fun, env);
            Baire arg = eval_fun(n.arg, env);
            return witnessed(a, [&](const Baire& b) {
              Nat m = b(0);
              if (defined_at(fun, arg, m)) return verified("defined with use " + std::to_string(m));
              return refuted("use " + std::to_string(m) + " is not where " + print(f) + " is defined");
            });
          } else {
            return run(a, desugar_step(f), env);
          }
        },
        f.node().v);
  }

  // a|b is defined and realizes g.
  CheckResult applied(const Baire& a, const Baire& b, const Formula& g, const Env& env) {
    if (auto p = undefined_position(a, b, b_.depth, b_.fuel))
      return unknown("application undefined at " + std::to_string(*p) + " within fuel");
    return run(apply_fun(a, b, b_.fuel), g, env);
  }

  CheckResult implication(const Baire& a, const ast::Imp& n, const Env& env) {
    if (in_class(n.lhs, cls())) {
      CheckResult h = Decider(b_).run(n.lhs, env);
      if (h.verdict == Verdict::Refuted) return verified("hypothesis false");
      if (h.verdict == Verdict::Verified) return under(1, applied(a, Builder(mode_, b_).build(n.lhs, env), n.rhs, env));
      return undecided(a, n, env, h);
    }
    Tally t;
    for (const Baire& b : b_.battery) {
      if (run(b, n.lhs, env).verdict != Verdict::Verified) continue;
      if (t.add(under(1, applied(a, b, n.rhs, env)))) break;
    }
    return t.result("checked on battery");
  }

  // The hypothesis may or may not hold: a is tested against the realizer it
  // would have, or against the battery when there is none, and only a pass counts.
  CheckResult undecided(const Baire& a, const ast::Imp& n, const Env& env, const CheckResult& h) {
    std::vector<Baire> probes;
    try {
      probes.push_back(Builder(mode_, b_, true).build(n.lhs, env));
    } catch (const NotCertifiable&) {
      probes = b_.battery;
    }
    for (const Baire& b : probes) {
      CheckResult r = applied(a, b, n.rhs, env);
      if (r.verdict != Verdict::Verified) {
        r = under(1, r);
        r.verdict = Verdict::Unknown;
        r.detail = "hypothesis undecided (" + h.detail + "); " + r.detail;
        return r;
      }
    }
    return verified("hypothesis undecided; conclusion holds for every probe");
  }

  template <class Clause>
  CheckResult witnessed(const Baire& a, Clause&& clause) {
    if (mode_ == Mode::Rf) return clause(a);
    CompactCode code = CompactCode::from_code(a, "witnesses");
    Nat d = b_.depth;
    std::vector<Node> nodes = fan(code, d, b_.fan_limit);
    Tally t;
    bool any = false;
    for (const Node& p : nodes) {
      auto ext = leftmost_extension(code, p, 2 * d, b_.fan_limit);
      if (!ext) continue;
      any = true;
      if (t.add(clause(member(code, std::move(*ext), 8 * d + 32, b_.fan_limit)))) break;
    }
    if (!any) return refuted("empty witness set at depth " + std::to_string(2 * d));
    return t.result();
  }

  Mode mode_;
  const Budget& b_;
};

FormulaClass class_of(Mode mode) { return mode == Mode::Rf ? FormulaClass::NK : FormulaClass::NL; }

}  // namespace

CheckResult decide(const Formula& f, const Env& env, const Budget& budget) { return Decider(budget).run(f, env); }

CheckResult realizes(Mode mode, const Baire& alpha, const Formula& f, const Env& env, const Budget& budget) {
  return Checker(mode, budget).run(alpha, f, env);
}

Baire build_omega(Mode mode, const Formula& f, const Env& env, const Budget& budget) {
  if (auto r = reject_reason(f, class_of(mode))) throw ClassificationError(r->clause);
  env.require(free_vars(f));
  CheckResult d = decide(f, env, budget);
  if (d.verdict == Verdict::Refuted) throw NotCertifiable("formula is false: " + d.detail);
  if (d.verdict == Verdict::Unknown) throw NotCertifiable("truth not certified: " + d.detail);
  return Builder(mode, budget).build(f, env);
}

Baire extract_choice(const Baire& beta, const Formula& b, const std::string& xi_name, const Baire& xi,
                     const Env& env, const Budget& budget) {
  Env e = env.bind(xi_name, xi);
  Baire omega = build_omega(Mode::Rf, b, e, budget);
  Baire r = apply_fun(apply_fun(beta, xi, budget.fuel), omega, budget.fuel);
  return baire::proj(r, Side::Fst);
}

ImageCode extract_choice_lrf(const Baire& beta, const Formula& b, const std::string& xi_name, const Baire& xi,
                             const Env& env, const Budget& budget) {
  Env e = env.bind(xi_name, xi);
  Baire omega = build_omega(Mode::Lrf, b, e, budget);
  Baire r = apply_fun(apply_fun(beta, xi, budget.fuel), omega, budget.fuel);
  ImageCode img = image_code(fst_associate(), CompactCode::from_code(r, "witnesses"), 2 * budget.depth, budget.fan_limit);
  if (img.prefixes.empty()) throw EmptyCode(0, "empty witness set at depth " + std::to_string(2 * budget.depth));
  return img;
}

}  // namespace realiz

#include "realiz/translate.hpp"

#include "realiz/encodings.hpp"
#include "realiz/errors.hpp"

namespace realiz {

std::string_view mode_name(Mode m) { return m == Mode::Rf ? "rf" : "lrf"; }

RealizerContext::RealizerContext(const FunTerm& realizer, const Formula& f, TranslateOptions options)
    : realizer_(realizer), options_(options) {
  names_.reserve(all_names(f));
  names_.reserve(all_names(realizer));
}

std::string RealizerContext::fresh(std::string_view base, const std::set<std::string>& extra) {
  names_.reserve(extra);
  return names_.fresh(base);
}

namespace {

std::set<std::string> names_in(const FunTerm& a, const Formula& f) {
  auto n = all_names(a);
  auto m = all_names(f);
  n.insert(m.begin(), m.end());
  return n;
}

class Translator {
 public:
  Translator(Mode mode, RealizerContext& ctx) : mode_(mode), ctx_(ctx) {}

  Formula run(const FunTerm& a, const Formula& f) {
    return std::visit(
        [&](const auto& n) -> Formula {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, ast::Eq>) {
            return f;
          } else if constexpr (std::is_same_v<T, ast::And>) {
            return mk::conj(run(enc::fst_fun(a), n.lhs), run(enc::snd_fun(a), n.rhs));
          } else if constexpr (std::is_same_v<T, ast::Imp>) {
            std::string b = ctx_.fresh("b", names_in(a, f));
            FunTerm bv = mk::fun_var(b);
            return mk::forall_fun(b, mk::imp(run(bv, n.lhs), mk::conj(mk::def_fun(a, bv), applied(a, bv, n.rhs))));
          } else if constexpr (std::is_same_v<T, ast::ForallNum>) {
            auto [x, body] = unclash(Sort::Num, n.var, n.body, a);
            return mk::forall_num(x, run(enc::component_fun(a, mk::num_var(x)), body));
          } else if constexpr (std::is_same_v<T, ast::ForallFun>) {
            auto [xi, body] = unclash(Sort::Fun, n.var, n.body, a);
            FunTerm xv = mk::fun_var(xi);
            return mk::forall_fun(xi, mk::conj(mk::def_fun(a, xv), applied(a, xv, body)));
          } else if constexpr (std::is_same_v<T, ast::ExistsNum>) {
            if (mode_ == Mode::Rf) return run(enc::shift_fun(a), substitute(n.body, n.var, mk::ev(a, mk::zero())));
            return over_members(a, f, [&](const FunTerm& b) {
              return run(enc::shift_fun(b), substitute(n.body, n.var, mk::ev(b, mk::zero())));
            });
          } else if constexpr (std::is_same_v<T, ast::ExistsFun>) {
            if (mode_ == Mode::Rf) return run(enc::snd_fun(a), substitute(n.body, n.var, enc::fst_fun(a)));
            return over_members(a, f, [&](const FunTerm& b) {
              return run(enc::snd_fun(b), substitute(n.body, n.var, enc::fst_fun(b)));
            });
          } else {
            return run(a, desugar_step(f));
          }
        },
        f.node().v);
  }

 private:
  // a|beta tr B, through the graph of a|beta when the result is used.
  Formula applied(const FunTerm& a, const FunTerm& beta, const Formula& b) {
    auto avoid = names_in(a, b);
    auto more = all_names(beta);
    avoid.insert(more.begin(), more.end());
    std::string g = ctx_.fresh("g", avoid);
    Formula body = run(mk::fun_var(g), b);
    if (!free_vars(body).fun.count(g)) return body;
    return mk::forall_fun(g, mk::imp(enc::app_graph(a, beta, mk::fun_var(g)), body));
  }

  // [a] nonempty and every member b satisfies clause(b).
  template <class Clause>
  Formula over_members(const FunTerm& a, const Formula& f, Clause clause) {
    auto avoid = names_in(a, f);
    std::string xi = ctx_.fresh("xi", avoid);
    std::string n = ctx_.fresh("n", avoid);
    FunTerm xv = mk::fun_var(xi);
    Formula nonempty = mk::exists_fun_bdd(
        xi, enc::fst_fun(a), mk::forall_num(n, mk::eq(mk::ev(enc::snd_fun(a), enc::prefix(xv, mk::num_var(n))), mk::zero())));
    std::string b = ctx_.fresh("b", avoid);
    FunTerm bv = mk::fun_var(b);
    return mk::conj(nonempty, mk::forall_fun(b, mk::imp(enc::member(bv, a), clause(bv))));
  }

  // Renames a binder that occurs free in the realizer term.
  std::pair<std::string, Formula> unclash(Sort s, const std::string& v, const Formula& body, const FunTerm& a) {
    FreeVars fv = free_vars(a);
    if (!(s == Sort::Num ? fv.num : fv.fun).count(v)) return {v, body};
    std::string nv = ctx_.fresh(v, names_in(a, body));
    if (s == Sort::Num) return {nv, substitute(body, v, mk::num_var(nv))};
    return {nv, substitute(body, v, mk::fun_var(nv))};
  }

  Mode mode_;
  RealizerContext& ctx_;
};

}  // namespace

Formula translate(Mode mode, const FunTerm& realizer, const Formula& f, TranslateOptions options) {
  RealizerContext ctx(realizer, f, options);
  Formula out = Translator(mode, ctx).run(realizer, f);
  return options.beta_normalize ? beta_normalize(out) : out;
}

Formula rf_translate(const FunTerm& realizer, const Formula& f, TranslateOptions options) {
  return translate(Mode::Rf, realizer, f, options);
}

Formula lrf_translate(const FunTerm& realizer, const Formula& f, TranslateOptions options) {
  return translate(Mode::Lrf, realizer, f, options);
}

FunTerm component_term(const FunTerm& xi, const NumTerm& n) { return enc::component_fun(xi, n); }

Formula sequential_form(const Formula& b, const Formula& a, const SequentialNames& names) {
  for (const auto& v : free_vars(b).fun)
    if (v != names.xi) throw InvalidArgument("free-variable mismatch: hypothesis mentions function variable '" + v + "'");
  for (const auto& v : free_vars(a).fun)
    if (v != names.xi && v != names.zeta)
      throw InvalidArgument("free-variable mismatch: conclusion mentions function variable '" + v + "'");
  if (names.xi == names.zeta) throw InvalidArgument("free-variable mismatch: xi and zeta must differ");

  std::set<std::string> avoid = all_names(b);
  auto more = all_names(a);
  avoid.insert(more.begin(), more.end());
  avoid.insert(names.xi);
  avoid.insert(names.zeta);
  std::string n = fresh_name(names.index, avoid);
  NumTerm nv = mk::num_var(n);
  FunTerm xi = mk::fun_var(names.xi);
  FunTerm zeta = mk::fun_var(names.zeta);

  Formula hyp = mk::forall_num(n, substitute(b, names.xi, component_term(xi, nv)));
  Formula body = substitute(substitute(a, names.xi, component_term(xi, nv)), names.zeta, component_term(zeta, nv));
  return mk::forall_fun(names.xi, mk::imp(hyp, mk::exists_fun(names.zeta, mk::forall_num(n, body))));
}

SequentialParts split_sequential(const Formula& f) {
  auto* all = as<ast::ForallFun>(f);
  const ast::Imp* imp = all ? as<ast::Imp>(all->body) : nullptr;
  const ast::ExistsFun* ex = imp ? as<ast::ExistsFun>(imp->rhs) : nullptr;
  if (!ex) throw InvalidArgument("expected a formula of the shape (forall-fun xi (imp B (exists-fun zeta A)))");
  return SequentialParts{imp->lhs, ex->body, SequentialNames{all->var, ex->var, "n"}};
}

}  // namespace realiz

#include "realiz/encodings.hpp"

namespace realiz::enc {

namespace {

std::set<std::string> names_of(std::initializer_list<FunTerm> funs, std::initializer_list<NumTerm> nums = {}) {
  std::set<std::string> out;
  for (const auto& f : funs) {
    auto n = all_names(f);
    out.insert(n.begin(), n.end());
  }
  for (const auto& t : nums) {
    auto n = all_names(t);
    out.insert(n.begin(), n.end());
  }
  return out;
}

NumTerm app(std::string_view s, std::vector<NumTerm> args) { return mk::app(s, std::move(args)); }
NumTerm num(Nat k) { return mk::numeral(k); }

}  // namespace

FunTerm prefix_fun(const FunTerm& beta) {
  std::string c = fresh_name("c", names_of({beta}));
  auto cv = mk::num_var(c);
  return mk::rec(mk::zero(), mk::lam(c, app("snoc", {cv, mk::ev(beta, app("len", {cv}))})));
}

NumTerm prefix(const FunTerm& beta, const NumTerm& n) { return mk::ev(prefix_fun(beta), n); }

FunTerm flag_fun(const FunTerm& alpha, const FunTerm& beta) {
  std::string s = fresh_name("s", names_of({alpha, beta}));
  auto sv = mk::num_var(s);
  auto index = app("div", {sv, num(2)});
  auto flag = app("mod", {sv, num(2)});
  auto hit = app("sg", {mk::ev(alpha, prefix(beta, index))});
  auto next = app("add", {app("mul", {num(2), app("add", {index, num(1)})}), app("max", {flag, hit})});
  return mk::rec(mk::zero(), mk::lam(s, next));
}

Formula defined_at(const FunTerm& alpha, const FunTerm& beta, const NumTerm& m) {
  return mk::conj(mk::neq(mk::ev(alpha, prefix(beta, m)), mk::zero()),
                  mk::eq(app("mod", {mk::ev(flag_fun(alpha, beta), m), num(2)}), mk::zero()));
}

FunTerm cons_fun(const NumTerm& k, const FunTerm& beta) {
  std::string j = fresh_name("j", names_of({beta}, {k}));
  auto jv = mk::num_var(j);
  return mk::lam(j, app("cond", {jv, k, mk::ev(beta, app("pred", {jv}))}));
}

FunTerm fst_fun(const FunTerm& alpha) {
  std::string n = fresh_name("n", names_of({alpha}));
  return mk::lam(n, mk::ev(alpha, app("mul", {num(2), mk::num_var(n)})));
}

FunTerm snd_fun(const FunTerm& alpha) {
  std::string n = fresh_name("n", names_of({alpha}));
  return mk::lam(n, mk::ev(alpha, app("add", {app("mul", {num(2), mk::num_var(n)}), num(1)})));
}

FunTerm shift_fun(const FunTerm& alpha) {
  std::string n = fresh_name("n", names_of({alpha}));
  return mk::lam(n, mk::ev(alpha, mk::succ_of(mk::num_var(n))));
}

FunTerm component_fun(const FunTerm& alpha, const NumTerm& m) {
  std::string k = fresh_name("k", names_of({alpha}, {m}));
  auto kv = mk::num_var(k);
  auto index = app("sub", {app("mul", {app("pow2", {m}), app("add", {app("mul", {num(2), kv}), num(1)})}), num(1)});
  return mk::lam(k, mk::ev(alpha, index));
}

Formula def_num_expansion(const FunTerm& alpha, const FunTerm& beta) {
  std::string m = fresh_name("m", names_of({alpha, beta}));
  return mk::exists_num(m, defined_at(alpha, beta, mk::num_var(m)));
}

Formula def_fun_expansion(const FunTerm& alpha, const FunTerm& beta) {
  std::string k = fresh_name("k", names_of({alpha, beta}));
  return mk::forall_num(k, def_num_expansion(alpha, cons_fun(mk::num_var(k), beta)));
}

Formula app_graph(const FunTerm& alpha, const FunTerm& beta, const FunTerm& g) {
  auto avoid = names_of({alpha, beta, g});
  std::string k = fresh_name("k", avoid);
  avoid.insert(k);
  std::string m = fresh_name("m", avoid);
  auto kv = mk::num_var(k);
  auto mv = mk::num_var(m);
  FunTerm input = cons_fun(kv, beta);
  auto value = app("pred", {mk::ev(alpha, prefix(input, mv))});
  return mk::forall_num(k, mk::forall_num(m, mk::imp(defined_at(alpha, input, mv), mk::eq(mk::ev(g, kv), value))));
}

Formula member(const FunTerm& xi, const FunTerm& alpha) {
  std::string n = fresh_name("n", names_of({xi, alpha}));
  auto nv = mk::num_var(n);
  return mk::forall_num(n, mk::conj(mk::le(mk::ev(xi, nv), mk::ev(fst_fun(alpha), nv)),
                                    mk::eq(mk::ev(snd_fun(alpha), prefix(xi, nv)), mk::zero())));
}

}  // namespace realiz::enc

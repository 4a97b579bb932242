#include "realiz/service.hpp"

#include <optional>

#include "json.hpp"
#include "realiz/analysis.hpp"
#include "realiz/classifier.hpp"
#include "realiz/compact.hpp"
#include "realiz/errors.hpp"
#include "realiz/formula.hpp"
#include "realiz/semantics.hpp"
#include "realiz/translate.hpp"
#include "realiz/witness.hpp"

namespace realiz::service {

using json = nlohmann::json;

namespace {

struct Report {
  json result = json::object();
  std::string summary;
  Outcome outcome = kOk;
  std::string status = "ok";
};

const json& need(const json& req, const char* key) {
  if (!req.contains(key)) throw InvalidArgument(std::string("missing field \"") + key + "\"");
  return req.at(key);
}

Nat nat_field(const json& req, const char* key, Nat fallback) {
  if (!req.contains(key) || req.at(key).is_null()) return fallback;
  const json& v = req.at(key);
  if (!v.is_number_unsigned()) throw InvalidArgument(std::string("\"") + key + "\" must be a natural number");
  return v.get<Nat>();
}

std::string str_field(const json& req, const char* key, const std::string& fallback) {
  if (!req.contains(key) || req.at(key).is_null()) return fallback;
  if (!req.at(key).is_string()) throw InvalidArgument(std::string("\"") + key + "\" must be a string");
  return req.at(key).get<std::string>();
}

Mode mode_of(const json& req) {
  std::string m = str_field(req, "mode", "rf");
  if (m == "rf") return Mode::Rf;
  if (m == "lrf") return Mode::Lrf;
  throw InvalidArgument("mode must be rf or lrf, not \"" + m + "\"");
}

Formula formula_of(const json& req) {
  const json& f = need(req, "formula");
  if (!f.is_string()) throw InvalidArgument("\"formula\" must be a string");
  return parse(f.get<std::string>());
}

std::vector<Nat> nats(const json& j) {
  if (!j.is_array()) throw InvalidArgument("expected an array of naturals");
  std::vector<Nat> out;
  for (const json& v : j) {
    if (!v.is_number_unsigned()) throw InvalidArgument("expected an array of naturals");
    out.push_back(v.get<Nat>());
  }
  return out;
}

std::optional<Baire> associate_named(const std::string& name) {
  if (name == "assoc:identity")
    return associate_of(pointwise_map("identity", [](const Baire& x, Nat n) { return x(n); },
                                      [](Nat n) { return n + 1; }));
  if (name == "assoc:fst") return fst_associate();
  if (name == "assoc:sum")
    return associate_of(pointwise_map("sum", [](const Baire& x, Nat n) {
      Nat s = 0;
      for (Nat i = 0; i <= n; ++i) s += x(i);
      return s;
    }));
  if (name == "assoc:head")
    return associate_of(pointwise_map("head", [](const Baire& x, Nat) { return x(0); }, [](Nat) { return 1; }));
  return std::nullopt;
}

// A number, an array (table with default 0), {"table": [...], "default": d}
// or a built-in name.
Baire baire_of(const json& j) {
  if (j.is_number_unsigned()) return baire::constant(j.get<Nat>());
  if (j.is_array()) return baire::table(nats(j), 0);
  if (j.is_object()) return baire::table(nats(need(j, "table")), nat_field(j, "default", 0));
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "zeros") return baire::zeros();
    if (s == "ones") return baire::constant(1);
    if (s == "identity") return baire::identity();
    if (s == "successor") return baire::successor();
    if (s.rfind("const-", 0) == 0) return baire::constant(std::stoull(s.substr(6)));
    if (auto a = associate_named(s)) return *a;
    throw InvalidArgument("unknown element \"" + s + "\"");
  }
  throw InvalidArgument("cannot read an element from " + j.dump());
}

Env env_of(const json& req, const Formula* f) {
  Env env;
  if (!req.contains("env")) return env;
  const json& e = req.at("env");
  if (!e.is_object()) throw InvalidArgument("\"env\" must be an object");
  FreeVars fv = f ? free_vars(*f) : FreeVars{};
  for (const auto& [name, v] : e.items()) {
    if (v.is_number_unsigned() && !fv.fun.count(name))
      env = env.bind(name, v.get<Nat>());
    else
      env = env.bind(name, baire_of(v));
  }
  return env;
}

Budget budget_of(const json& req, Nat fuel, Nat depth) {
  Budget b = default_budget(nat_field(req, "seed", 1));
  b.fuel = nat_field(req, "fuel", fuel);
  b.depth = nat_field(req, "depth", depth);
  b.search = std::min(b.search, b.fuel);
  return b;
}

json class_json(const ClassReport& r) {
  json classes = json::object();
  for (const auto& [c, v] : r.member) classes[std::string(class_name(c))] = v;
  json rejections = json::array();
  for (const Rejection& x : r.rejections)
    rejections.push_back({{"class", std::string(class_name(x.cls))},
                          {"path", x.path},
                          {"clause", x.clause},
                          {"subformula", print(x.subformula)}});
  return {{"formula", print(r.formula)}, {"classes", classes}, {"rejections", rejections}};
}

std::string class_summary(const ClassReport& r) {
  std::string out;
  for (const auto& [c, v] : r.member) {
    if (!out.empty()) out += " ";
    out += std::string(class_name(c)) + "=" + (v ? "yes" : "no");
  }
  return out;
}

Report cmd_parse(const json& req) {
  Formula f = formula_of(req);
  FreeVars fv = free_vars(f);
  Report r;
  r.result = {{"formula", print(f)},
              {"free", {{"num", fv.num}, {"fun", fv.fun}}},
              {"size", size(f)},
              {"desugared", print(desugar(f))}};
  r.summary = print(f);
  return r;
}

Report cmd_classify(const json& req) {
  ClassReport cr = classify_report(formula_of(req));
  Report r;
  r.result = class_json(cr);
  r.summary = class_summary(cr);
  return r;
}

Report cmd_translate(const json& req) {
  Formula f = formula_of(req);
  Mode m = mode_of(req);
  std::string name = str_field(req, "realizer", "a");
  Formula out = translate(m, mk::fun_var(name), f);
  Report r;
  r.result = {{"mode", std::string(mode_name(m))},
              {"realizer", name},
              {"translation", print(out)},
              {"report", class_json(classify_report(out))}};
  r.summary = print(out);
  return r;
}

Report cmd_seqform(const json& req) {
  SequentialParts parts = split_sequential(formula_of(req));
  Formula out = sequential_form(parts.hypothesis, parts.conclusion, parts.names);
  Report r;
  r.result = {{"sequential", print(out)},
              {"hypothesis", print(parts.hypothesis)},
              {"conclusion", print(parts.conclusion)},
              {"report", class_json(classify_report(out))}};
  r.summary = print(out);
  return r;
}

Report partial_report(const PartialResult& p) {
  Report r;
  if (auto d = std::get_if<Defined>(&p)) {
    r.result = {{"value", d->value}, {"use", d->use}};
    r.summary = "value " + std::to_string(d->value) + " use " + std::to_string(d->use);
  } else {
    Nat fuel = std::get<FuelExhausted>(p).fuel;
    r.result = {{"fuel_exhausted", fuel}};
    r.summary = "FuelExhausted at fuel " + std::to_string(fuel);
    r.outcome = kUnknown;
    r.status = "unknown";
  }
  return r;
}

Report cmd_eval_app(const json& req) {
  Baire alpha = baire_of(need(req, "alpha"));
  Baire beta = baire_of(need(req, "beta"));
  Nat fuel = nat_field(req, "fuel", kDefaultFuel);
  if (req.contains("head")) return partial_report(apply_at(alpha, Key(nat_field(req, "head", 0)), beta, fuel));
  return partial_report(apply_num(alpha, beta, fuel));
}

// A built-in name, {"bound": e, "test": e} or {"bound": e, "reject": [nodes]}.
CompactCode code_of(const json& j) {
  if (j.is_string()) {
    if (auto c = codes::named(j.get<std::string>())) return *c;
    throw InvalidArgument("unknown code \"" + j.get<std::string>() + "\"");
  }
  if (!j.is_object()) throw InvalidArgument("cannot read a code from " + j.dump());
  Baire bound = baire_of(need(j, "bound"));
  if (j.contains("test")) return CompactCode{bound, baire_of(j.at("test")), "code"};
  std::vector<Node> rejected;
  for (const json& n : need(j, "reject")) rejected.push_back(nats(n));
  return codes::make(
      bound,
      [rejected](std::span<const Nat> s) {
        for (const Node& r : rejected)
          if (r.size() <= s.size() && std::equal(r.begin(), r.end(), s.begin())) return true;
        return false;
      },
      "code");
}

Report cmd_compact(const json& req) {
  std::string op = str_field(req, "op", "");
  Nat depth = nat_field(req, "depth", 8);
  Report r;
  if (op == "member") {
    bool m = member_at_depth(baire_of(need(req, "xi")), code_of(need(req, "code")), depth);
    r.result = {{"member", m}, {"depth", depth}};
    r.summary = m ? "member at depth " + std::to_string(depth) : "not a member";
  } else if (op == "path") {
    NonemptyStatus st = nonempty_status(code_of(need(req, "code")), depth);
    r.result = {{"nonempty_at_depth", st.nonempty}, {"depth", depth}, {"path", st.witness ? json(*st.witness) : json()}};
    r.summary = st.nonempty ? "path " + json(*st.witness).dump() : "no node at depth " + std::to_string(depth);
  } else if (op == "image") {
    std::string map = str_field(req, "map", "assoc:identity");
    auto phi = associate_named(map);
    if (!phi) throw InvalidArgument("unknown map \"" + map + "\"");
    ImageCode img = image_code(*phi, code_of(need(req, "code")), depth);
    r.result = {{"map", map}, {"depth", img.depth}, {"images", fan(img.code, img.depth)}};
    r.summary = std::to_string(r.result["images"].size()) + " images at depth " + std::to_string(img.depth);
  } else if (op == "select") {
    std::vector<CompactCode> cs;
    for (const json& c : need(req, "codes")) cs.push_back(code_of(c));
    auto paths = select_across([&](Nat n) { return cs.at(n); }, cs.size(), depth);
    r.result = {{"paths", paths}, {"depth", depth}};
    r.summary = json(paths).dump();
  } else if (op == "tree") {
    bool t = is_tree(code_of(need(req, "code")), depth);
    r.result = {{"is_tree", t}, {"depth", depth}};
    r.summary = t ? "tree" : "not a tree";
  } else {
    throw InvalidArgument("compact op must be member, path, image, select or tree");
  }
  return r;
}

Report verdict_report(const CheckResult& c) {
  Report r;
  r.result = {{"verdict", std::string(verdict_name(c.verdict))}, {"path", c.path}, {"detail", c.detail}};
  r.summary = std::string(verdict_name(c.verdict)) + (c.detail.empty() ? "" : ": " + c.detail);
  if (c.verdict == Verdict::Refuted) {
    r.outcome = kFailed;
    r.status = "refuted";
  } else if (c.verdict == Verdict::Unknown) {
    r.outcome = kUnknown;
    r.status = "unknown";
  }
  return r;
}

Report cmd_check(const json& req) {
  Formula f = formula_of(req);
  Mode m = mode_of(req);
  Env env = env_of(req, &f);
  Budget b = budget_of(req, 512, 8);
  const json& spec = need(req, "realizer");
  Baire alpha = spec == "omega" ? build_omega(m, f, env, b) : baire_of(spec);
  Report r = verdict_report(realizes(m, alpha, f, env, b));
  r.result["mode"] = std::string(mode_name(m));
  return r;
}

Report cmd_omega(const json& req) {
  Formula f = formula_of(req);
  Mode m = mode_of(req);
  Env env = env_of(req, &f);
  Budget b = budget_of(req, 512, 8);
  Baire omega = build_omega(m, f, env, b);
  Nat shown = nat_field(req, "show", 16);
  CheckResult c = realizes(m, omega, f, env, b);
  Report r = verdict_report(c);
  r.result = {{"mode", std::string(mode_name(m))},
              {"prefix", omega.prefix(shown)},
              {"check", r.result}};
  r.summary = "omega " + json(omega.prefix(shown)).dump() + ", check " + r.summary;
  return r;
}

Report cmd_extract(const json& req) {
  Formula f = formula_of(req);
  Mode m = mode_of(req);
  SequentialParts parts = split_sequential(f);
  Env env = env_of(req, &f);
  Budget b = budget_of(req, 512, 8);
  Baire xi = baire_of(need(req, "xi"));
  Nat depth = nat_field(req, "show", 16);
  auto choice_of = [&](const json& t) {
    if (!t.is_string()) throw InvalidArgument("choices are function terms");
    FunTerm term = parse_fun_term(t.get<std::string>());
    std::string name = parts.names.xi;
    return [term, name, env](const Baire& x) { return eval_fun(term, env.bind(name, x)); };
  };
  Report r;
  if (m == Mode::Rf) {
    Baire beta = choice_realizer(choice_of(need(req, "choice")));
    Baire zeta = extract_choice(beta, parts.hypothesis, parts.names.xi, xi, env, b);
    Report check = verdict_report(realizes(m, beta, f, env, b));
    r.result = {{"zeta", zeta.prefix(depth)}, {"check", check.result}};
    r.summary = "zeta " + json(zeta.prefix(depth)).dump() + ", check " + check.summary;
    r.outcome = check.outcome;
    r.status = check.status;
  } else {
    std::vector<std::function<Baire(const Baire&)>> choices;
    for (const json& t : need(req, "choices")) choices.push_back(choice_of(t));
    Nat width = 2 * b.depth + 2;
    Baire beta = set_realizer([choices, width](const Baire& x) {
      std::vector<Baire> members;
      for (const auto& c : choices) members.push_back(baire::pair_fun(c(x), baire::zeros()));
      return codes::finite_set(members, width);
    });
    ImageCode img = extract_choice_lrf(beta, parts.hypothesis, parts.names.xi, xi, env, b);
    r.result = {{"depth", img.depth}, {"images", img.prefixes}};
    r.summary = std::to_string(img.prefixes.size()) + " witnesses at depth " + std::to_string(img.depth);
  }
  r.result["mode"] = std::string(mode_name(m));
  return r;
}

CauchyReal real_of(const json& j) {
  if (j.is_number_integer()) return CauchyReal::constant(Rat(j.get<long>()));
  if (!j.is_string()) throw InvalidArgument("a real is \"p/q\" or \"sqrt(p/q)\", not " + j.dump());
  std::string s = j.get<std::string>();
  if (s.rfind("sqrt(", 0) == 0 && s.back() == ')') return CauchyReal::sqrt_of(parse_rat(s.substr(5, s.size() - 6)));
  return CauchyReal::constant(parse_rat(s));
}

ComplexC complex_of(const json& j) {
  if (j.is_array() && j.size() == 2) return {real_of(j[0]), real_of(j[1])};
  return {real_of(j), CauchyReal::constant(0)};
}

json gauss_json(const Gauss& z) { return json::array({rat_string(z.re), rat_string(z.im)}); }

Report cmd_demo(const json& req) {
  std::string demo = str_field(req, "demo", "");
  Report r;
  if (demo == "dichotomy" || demo == "trichotomy") {
    std::vector<std::pair<CauchyReal, CauchyReal>> pairs;
    if (req.contains("pairs"))
      for (const json& p : req.at("pairs")) {
        if (!p.is_array() || p.size() != 2) throw InvalidArgument("pairs are [a, b]");
        pairs.emplace_back(real_of(p[0]), real_of(p[1]));
      }
    if (demo == "dichotomy") {
      Nat depth = nat_field(req, "depth", 64);
      auto bits = seq_dichotomy(pairs, depth);
      r.result = {{"bits", bits}, {"depth", depth}};
      r.summary = json(bits).dump();
      return r;
    }
    Nat fuel = nat_field(req, "fuel", 64);
    json verdicts = json::array();
    for (const auto& [a, b] : pairs) {
      Comparison c = compare(a, b, fuel);
      verdicts.push_back({{"verdict", std::string(comparison_name(c.kind))}, {"stage", c.stage}});
      r.summary += (r.summary.empty() ? "" : " ") + std::string(comparison_name(c.kind));
      if (c.kind == Comparison::Kind::EqSoFar) r.outcome = kUnknown;
    }
    r.result = {{"verdicts", verdicts}, {"fuel", fuel}};
    if (req.contains("xi")) {
      LpoProbe p = lpo_probe(baire_of(req.at("xi")), fuel);
      bool found = p.kind == LpoProbe::Kind::Found;
      r.result["lpo"] = found ? json{{"found", p.value}} : json{{"all_zero_so_far", p.value}};
      r.summary += std::string(r.summary.empty() ? "" : " ") + (found ? "Found(" : "AllZeroSoFar(") +
                   std::to_string(p.value) + ")";
      if (!found) r.outcome = kUnknown;
    }
    if (r.outcome == kUnknown) r.status = "unknown";
  } else if (demo == "dedekind") {
    Nat depth = nat_field(req, "depth", 64);
    json paths = json::array();
    for (const json& x : need(req, "reals")) {
      CauchyReal a = real_of(x);
      DedekindPath p = cauchy_to_dedekind(a, depth);
      paths.push_back({{"source", p.source}, {"enumeration", p.enumeration}, {"bits", p.bits},
                       {"satisfies_R", satisfies_R(a, p.bits)}});
      r.summary += (r.summary.empty() ? "" : "\n") + p.source + " ";
      for (Nat bit : p.bits) r.summary += char('0' + bit);
    }
    r.result = {{"paths", paths}, {"depth", depth}};
  } else if (demo == "sqrt") {
    Nat stage = nat_field(req, "stage", 20);
    std::vector<ComplexC> in;
    for (const json& z : need(req, "inputs")) in.push_back(complex_of(z));
    json roots = json::array();
    for (const ComplexC& z : seq_sqrt(in, stage)) {
      roots.push_back(gauss_json(z(stage)));
      r.summary += (r.summary.empty() ? "" : " ") + roots.back().dump();
    }
    r.result = {{"roots", roots}, {"stage", stage}};
  } else if (demo == "fta") {
    Nat stage = nat_field(req, "stage", 20);
    Polynomial p;
    for (const json& c : need(req, "coeffs")) p.coeffs.push_back(complex_of(c));
    Gauss z = fta_root(p, stage)(0);
    r.result = {{"root", gauss_json(z)}, {"stage", stage}};
    r.summary = gauss_json(z).dump();
  } else if (demo == "cramer") {
    const json& rows = need(req, "matrix");
    std::vector<Rat> e;
    for (const json& row : rows) {
      if (!row.is_array() || row.size() != rows.size()) throw InvalidArgument("matrix must be square");
      for (const json& x : row) e.push_back(x.is_string() ? parse_rat(x.get<std::string>()) : Rat(x.get<long>()));
    }
    RatMatrix m(rows.size(), e);
    RatMatrix inv = matrix_inverse(m);
    json out = json::array();
    for (std::size_t i = 0; i < inv.size(); ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < inv.size(); ++j) row.push_back(rat_string(inv(i, j)));
      out.push_back(row);
    }
    r.result = {{"inverse", out}, {"determinant", rat_string(m.determinant())}};
    r.summary = out.dump();
  } else {
    throw InvalidArgument("demo must be dichotomy, trichotomy, dedekind, sqrt, fta or cramer");
  }
  return r;
}

std::string error_kind(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e)) return "ParseError";
  if (dynamic_cast<const SortError*>(&e)) return "SortError";
  if (dynamic_cast<const ClassificationError*>(&e)) return "ClassificationError";
  if (dynamic_cast<const NotCertifiable*>(&e)) return "NotCertifiable";
  if (dynamic_cast<const EmptyCode*>(&e)) return "EmptyCode";
  if (dynamic_cast<const EvaluationFault*>(&e)) return "EvaluationFault";
  if (dynamic_cast<const ModulusViolation*>(&e)) return "ModulusViolation";
  if (dynamic_cast<const InvariantViolation*>(&e)) return "InvariantViolation";
  if (dynamic_cast<const ArithmeticOverflow*>(&e)) return "ArithmeticOverflow";
  if (dynamic_cast<const InvalidArgument*>(&e)) return "InvalidArgument";
  if (dynamic_cast<const json::exception*>(&e)) return "InvalidRequest";
  return "InternalError";
}

}  // namespace

Response run(const std::string& request) {
  json out = json::object();
  Report r;
  try {
    json req = json::parse(request);
    if (!req.is_object()) throw InvalidArgument("request must be a JSON object");
    std::string cmd = str_field(req, "command", "");
    out["command"] = cmd;
    out["seed"] = nat_field(req, "seed", 1);
    if (cmd == "parse") r = cmd_parse(req);
    else if (cmd == "classify") r = cmd_classify(req);
    else if (cmd == "translate") r = cmd_translate(req);
    else if (cmd == "seqform") r = cmd_seqform(req);
    else if (cmd == "eval-app") r = cmd_eval_app(req);
    else if (cmd == "compact") r = cmd_compact(req);
    else if (cmd == "check") r = cmd_check(req);
    else if (cmd == "omega") r = cmd_omega(req);
    else if (cmd == "extract") r = cmd_extract(req);
    else if (cmd == "demo") r = cmd_demo(req);
    else throw InvalidArgument("unknown command \"" + cmd + "\"");
  } catch (const std::exception& e) {
    std::string kind = error_kind(e);
    json err = {{"kind", kind}, {"message", e.what()}};
    if (auto p = dynamic_cast<const ParseError*>(&e)) {
      err["line"] = p->line();
      err["column"] = p->column();
    }
    if (auto c = dynamic_cast<const EmptyCode*>(&e)) err["index"] = c->index();
    r = Report{};
    r.result = json::object();
    r.summary = kind + ": " + e.what();
    // An uncertified truth value is a "not yet known", not a failure.
    if (kind == "NotCertifiable") {
      r.outcome = kUnknown;
      r.status = "unknown";
    } else {
      r.outcome = kFailed;
      r.status = "error";
    }
    out["error"] = err;
  }
  out["result"] = r.result;
  out["status"] = r.status;
  out["summary"] = r.summary;
  return {r.outcome, out.dump()};
}

}  // namespace realiz::service

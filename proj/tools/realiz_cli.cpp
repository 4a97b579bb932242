#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "realiz/realiz.h"

using json = nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// "@file" reads the file; text that is not JSON is taken as a string.
json spec(const std::string& text) {
  std::string body = !text.empty() && text[0] == '@' ? slurp(text.substr(1)) : text;
  json j = json::parse(body, nullptr, false);
  return j.is_discarded() ? json(body) : j;
}

struct Options {
  std::string format = "json";
  std::string output;
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> fuel, depth, stage, show, head;
  std::string file, mode = "rf", realizer = "a", env, alpha, beta, code, xi, map, choice, op, demo, input;
  std::vector<std::string> codes, choices;
};

void put_budget(json& req, const Options& o) {
  req["seed"] = o.seed;
  if (o.fuel) req["fuel"] = *o.fuel;
  if (o.depth) req["depth"] = *o.depth;
  if (o.stage) req["stage"] = *o.stage;
  if (o.show) req["show"] = *o.show;
}

json request_for(const std::string& cmd, const Options& o) {
  json req = {{"command", cmd}};
  put_budget(req, o);
  if (!o.file.empty()) req["formula"] = slurp(o.file);
  if (cmd == "translate" || cmd == "check" || cmd == "omega" || cmd == "extract") req["mode"] = o.mode;
  if (cmd == "translate") req["realizer"] = o.realizer;
  if (cmd == "check") req["realizer"] = spec(o.realizer);
  if (!o.env.empty()) req["env"] = spec(o.env);
  if (cmd == "eval-app") {
    req["alpha"] = spec(o.alpha);
    req["beta"] = spec(o.beta);
    if (o.head) req["head"] = *o.head;
  }
  if (cmd == "compact") {
    req["op"] = o.op;
    if (!o.code.empty()) req["code"] = spec(o.code);
    if (!o.map.empty()) req["map"] = o.map;
    if (!o.codes.empty()) {
      req["codes"] = json::array();
      for (const auto& c : o.codes) req["codes"].push_back(spec(c));
    }
  }
  if (!o.xi.empty()) req["xi"] = spec(o.xi);
  if (cmd == "extract") {
    if (!o.choice.empty()) req["choice"] = o.choice;
    if (!o.choices.empty()) req["choices"] = o.choices;
  }
  if (cmd == "demo") {
    req["demo"] = o.demo;
    if (!o.input.empty()) {
      json in = spec(o.input);
      if (!in.is_object()) throw std::runtime_error("demo input must be a JSON object");
      for (auto& [k, v] : in.items()) req[k] = v;
    }
  }
  return req;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Realizability workbench"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--format", o.format, "Report format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("-o,--output", o.output, "Write the report to a file");
  app.add_option("--seed", o.seed, "Seed for test batteries");
  app.add_option("--fuel", o.fuel, "Fuel for applications and probes");
  app.add_option("--depth", o.depth, "Depth for quantifiers, trees and codes");
  app.add_option("--stage", o.stage, "Stage for real-number outputs");

  auto formula_cmd = [&](const char* name, const char* help) {
    auto* s = app.add_subcommand(name, help);
    s->add_option("file", o.file, "Formula file, - for stdin")->required();
    return s;
  };
  formula_cmd("parse", "Parse and print a formula");
  formula_cmd("classify", "Report class membership");
  auto* tr = formula_cmd("translate", "rf or lrf translation");
  tr->add_option("--mode", o.mode)->check(CLI::IsMember({"rf", "lrf"}));
  tr->add_option("--realizer", o.realizer, "Realizer variable name");
  formula_cmd("seqform", "Sequential form of forall xi (B -> exists zeta A)");

  auto* ev = app.add_subcommand("eval-app", "Apply alpha to beta");
  ev->add_option("--alpha", o.alpha)->required();
  ev->add_option("--beta", o.beta)->required();
  ev->add_option("--head", o.head, "Evaluate position head of alpha|beta");

  auto* cp = app.add_subcommand("compact", "Compact codes");
  cp->add_option("op", o.op)->required()->check(CLI::IsMember({"member", "path", "image", "select", "tree"}));
  cp->add_option("--code", o.code);
  cp->add_option("--codes", o.codes);
  cp->add_option("--xi", o.xi);
  cp->add_option("--map", o.map);

  auto* ck = formula_cmd("check", "Check that an element realizes a formula");
  ck->add_option("--mode", o.mode)->check(CLI::IsMember({"rf", "lrf"}));
  ck->add_option("--realizer", o.realizer, "Element, or omega")->required();
  ck->add_option("--env", o.env);

  auto* om = formula_cmd("omega", "Canonical realizer");
  om->add_option("--mode", o.mode)->check(CLI::IsMember({"rf", "lrf"}));
  om->add_option("--env", o.env);
  om->add_option("--show", o.show, "Positions to print");

  auto* ex = formula_cmd("extract", "Choice function from a choice realizer");
  ex->add_option("--mode", o.mode)->check(CLI::IsMember({"rf", "lrf"}));
  ex->add_option("--xi", o.xi)->required();
  ex->add_option("--choice", o.choice, "Function term in xi (rf)");
  ex->add_option("--choices", o.choices, "Function terms in xi (lrf)");
  ex->add_option("--env", o.env);
  ex->add_option("--show", o.show, "Positions to print");

  auto* dm = app.add_subcommand("demo", "Analysis demos");
  dm->add_option("name", o.demo)
      ->required()
      ->check(CLI::IsMember({"dichotomy", "trichotomy", "dedekind", "sqrt", "fta", "cramer"}));
  dm->add_option("input", o.input, "JSON object, or @file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  std::string cmd = app.get_subcommands().front()->get_name();
  char* out = nullptr;
  int outcome;
  try {
    outcome = rlz_run(request_for(cmd, o).dump().c_str(), &out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  json report = json::parse(out);
  rlz_string_free(out);

  std::string text = o.format == "json" ? report.dump(2) + "\n" : report["summary"].get<std::string>() + "\n";
  if (report.contains("error")) {
    std::cerr << "error: " << report["summary"].get<std::string>() << "\n";
    if (o.format == "text") return outcome;
  }
  if (o.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(o.output, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot write " << o.output << "\n";
      return 1;
    }
    f << text;
  }
  return outcome;
}

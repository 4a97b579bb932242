#include "doctest.h"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

fs::path scratch() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("realiz_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string read(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path write(const std::string& name, const std::string& text) {
  fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p;
}

// Arguments are passed through the shell in single quotes.
Run cli(const std::string& args) {
  fs::path out = scratch() / "out.txt", err = scratch() / "err.txt";
  std::string cmd = std::string(REALIZ_CLI) + " " + args + " >" + out.string() + " 2>" + err.string();
  int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, read(out), read(err)};
}

}  // namespace

TEST_CASE("classify prints a JSON report") {
  fs::path f = write("eq.sexp", "(= 0 0)");
  Run r = cli("classify " + f.string());
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  for (auto& [k, v] : j["result"]["classes"].items()) CHECK_MESSAGE(v == true, k);
  CHECK(j["seed"] == 1);
}

TEST_CASE("exit codes") {
  Run fuel = cli("eval-app --fuel 10 --alpha zeros --beta zeros");
  CHECK(fuel.code == 2);
  CHECK(json::parse(fuel.out)["result"]["fuel_exhausted"] == 10);

  Run cramer = cli("--format text demo cramer '{\"matrix\":[[1,1],[0,1]]}'");
  CHECK(cramer.code == 0);
  CHECK(cramer.out == "[[\"1\",\"-1\"],[\"0\",\"1\"]]\n");

  CHECK(cli("").code == 1);
  CHECK(cli("frobnicate").code == 1);
  CHECK(cli("parse").code == 1);
  CHECK(cli("parse /nonexistent/file.sexp").code == 1);
  CHECK(cli("demo nosuch").code == 1);
  Run bad = cli("--format text parse " + write("bad.sexp", "(= 0").string());
  CHECK(bad.code == 1);
  CHECK(bad.err.find("ParseError") != std::string::npos);
  CHECK(bad.out.empty());
  CHECK(cli("--help").code == 0);

  fs::path e = write("ex.sexp", "(exists-num y (= (ev xi y) 0))");
  CHECK(cli("check " + e.string() + " --realizer omega --env '{\"xi\":[3,1,0,2]}'").code == 0);
  CHECK(cli("check " + e.string() + " --realizer '[1]' --env '{\"xi\":[3,1,0,2]}'").code == 1);
  CHECK(cli("omega " + e.string() + " --env '{\"xi\":\"ones\"}'").code == 2);
  CHECK(cli("omega " + e.string() + " --mode lrf --env '{\"xi\":[3,1,0,2]}'").code == 0);
}

TEST_CASE("every subcommand runs") {
  fs::path e = write("ex2.sexp", "(exists-num y (= (ev xi y) 0))");
  fs::path c = write("choice.sexp",
                     "(forall-fun xi (imp (= 0 0) (exists-fun zeta (forall-num n (= (ev zeta n) (ev xi n))))))");
  CHECK(cli("parse " + e.string()).code == 0);
  CHECK(cli("translate " + e.string() + " --mode lrf --realizer b").code == 0);
  CHECK(cli("seqform " + c.string()).code == 0);
  CHECK(cli("compact path --code full-binary --depth 4").code == 0);
  CHECK(cli("compact select --codes full-binary reject-at-2 --depth 3").code == 1);
  Run ex = cli("--format text extract " + c.string() + " --xi '[4,5,6]' --choice '(lam k (ev xi k))' --show 4");
  CHECK(ex.code == 0);
  CHECK(ex.out.rfind("zeta [4,5,6,0]", 0) == 0);
  fs::path in = write("pairs.json", "{\"pairs\":[[\"0\",\"1\"],[\"1\",\"0\"],[\"0\",\"0\"]]}");
  Run d = cli("--format text demo dichotomy @" + in.string());
  CHECK(d.code == 0);
  CHECK(d.out == "[0,1,0]\n");
  fs::path rep = scratch() / "report.json";
  CHECK(cli("demo dichotomy @" + in.string() + " -o " + rep.string()).code == 0);
  CHECK(json::parse(read(rep))["result"]["bits"] == json::array({0, 1, 0}));
}

TEST_CASE("exit codes over the demo corpus") {
  int seen = 0;
  for (const auto& entry : fs::directory_iterator(REALIZ_DEMO_DIR)) {
    json demo = json::parse(read(entry.path()));
    fs::path in = write("input.json", demo["input"].dump());
    Run r = cli("demo " + demo["demo"].get<std::string>() + " @" + in.string());
    CHECK_MESSAGE(r.code == demo["expect"].get<int>(), entry.path().filename().string());
    if (r.code != 1) {
      json j = json::parse(r.out);
      CHECK(j["status"] == (r.code == 0 ? "ok" : "unknown"));
    }
    ++seen;
  }
  CHECK(seen >= 10);
}

TEST_CASE("reports are byte-identical across runs") {
  fs::path f = write("all.sexp", "(forall-fun zeta (imp (= (ev zeta 0) 0) (exists-num y (= (ev zeta y) 0))))");
  for (std::string args : std::vector<std::string>{"classify " + f.string(), "omega " + f.string() + " --seed 9",
                           "check " + f.string() + " --realizer omega --seed 3",
                           "demo dedekind '{\"reals\":[\"sqrt(2)\",\"1/3\"]}'",
                           "demo fta '{\"coeffs\":[[\"1/2\",\"1\"],0,\"-3\"]}'"}) {
    Run a = cli(args), b = cli(args);
    CHECK(a.code == b.code);
    CHECK_MESSAGE(a.out == b.out, args);
    CHECK(!a.out.empty());
  }
  json s9 = json::parse(cli("omega " + f.string() + " --seed 9").out);
  CHECK(s9["seed"] == 9);
}

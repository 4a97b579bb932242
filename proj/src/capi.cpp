#include "realiz/realiz.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "json.hpp"
#include "realiz/classifier.hpp"
#include "realiz/errors.hpp"
#include "realiz/formula.hpp"
#include "realiz/service.hpp"
#include "realiz/translate.hpp"

struct rlz_formula {
  realiz::Formula f;
};

struct rlz_session {
  uint64_t seed;
  uint64_t fuel = 0;
  uint64_t depth = 0;
};

namespace {

thread_local std::string last_error;

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

rlz_status fail(rlz_status st, const std::string& what) {
  last_error = what;
  return st;
}

template <class F>
rlz_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return RLZ_OK;
  } catch (const realiz::ParseError& e) {
    return fail(RLZ_ERR_PARSE, e.what());
  } catch (const realiz::SortError& e) {
    return fail(RLZ_ERR_SORT, e.what());
  } catch (const realiz::ClassificationError& e) {
    return fail(RLZ_ERR_CLASS, e.what());
  } catch (const realiz::InvalidArgument& e) {
    return fail(RLZ_ERR_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(RLZ_ERR_INTERNAL, e.what());
  }
}

int run_request(const std::string& request, char** out) {
  auto r = realiz::service::run(request);
  last_error.clear();
  if (r.outcome != realiz::service::kOk) {
    auto j = nlohmann::json::parse(r.report, nullptr, false);
    if (j.is_object() && j.contains("summary")) last_error = j["summary"].get<std::string>();
  }
  if (out) *out = dup(r.report);
  return r.outcome;
}

}  // namespace

extern "C" {

const char* rlz_version(void) { return "0.1.0"; }

const char* rlz_last_error(void) { return last_error.c_str(); }

void rlz_string_free(char* s) { std::free(s); }

rlz_status rlz_formula_parse(const char* text, rlz_formula** out) {
  if (!text || !out) return fail(RLZ_ERR_NULL, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new rlz_formula{realiz::parse(text)}; });
}

void rlz_formula_free(rlz_formula* f) { delete f; }

rlz_status rlz_formula_print(const rlz_formula* f, char** out) {
  if (!f || !out) return fail(RLZ_ERR_NULL, "null argument");
  return guarded([&] { *out = dup(realiz::print(f->f)); });
}

rlz_status rlz_formula_in_class(const rlz_formula* f, const char* cls, int* out) {
  if (!f || !cls || !out) return fail(RLZ_ERR_NULL, "null argument");
  return guarded([&] {
    auto c = realiz::class_from_name(cls);
    if (!c) throw realiz::InvalidArgument(std::string("unknown class \"") + cls + "\"");
    *out = realiz::in_class(f->f, *c) ? 1 : 0;
  });
}

rlz_status rlz_formula_translate(const rlz_formula* f, const char* mode, const char* realizer, rlz_formula** out) {
  if (!f || !mode || !realizer || !out) return fail(RLZ_ERR_NULL, "null argument");
  *out = nullptr;
  return guarded([&] {
    std::string m = mode;
    if (m != "rf" && m != "lrf") throw realiz::InvalidArgument("mode must be rf or lrf");
    auto t = realiz::translate(m == "rf" ? realiz::Mode::Rf : realiz::Mode::Lrf, realiz::mk::fun_var(realizer), f->f);
    *out = new rlz_formula{t};
  });
}

int rlz_run(const char* request, char** out) {
  if (!request) {
    fail(RLZ_ERR_NULL, "null request");
    if (out) *out = nullptr;
    return RLZ_OUTCOME_FAILED;
  }
  return run_request(request, out);
}

rlz_session* rlz_session_new(uint64_t seed) { return new rlz_session{seed}; }

void rlz_session_free(rlz_session* s) { delete s; }

rlz_status rlz_session_set_budget(rlz_session* s, uint64_t fuel, uint64_t depth) {
  if (!s) return fail(RLZ_ERR_NULL, "null session");
  s->fuel = fuel;
  s->depth = depth;
  return RLZ_OK;
}

int rlz_session_run(rlz_session* s, const char* request, char** out) {
  if (!s || !request) {
    fail(RLZ_ERR_NULL, "null argument");
    if (out) *out = nullptr;
    return RLZ_OUTCOME_FAILED;
  }
  auto j = nlohmann::json::parse(request, nullptr, false);
  if (j.is_object()) {
    if (!j.contains("seed")) j["seed"] = s->seed;
    if (s->fuel && !j.contains("fuel")) j["fuel"] = s->fuel;
    if (s->depth && !j.contains("depth")) j["depth"] = s->depth;
    return run_request(j.dump(), out);
  }
  return run_request(request, out);
}

}  // extern "C"

#ifndef REALIZ_H
#define REALIZ_H

/* C interface to the realizability workbench. Strings returned through out
   parameters are owned by the caller and released with rlz_string_free. */

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define RLZ_API __declspec(dllexport)
#else
#define RLZ_API __attribute__((visibility("default")))
#endif

typedef enum {
  RLZ_OK = 0,
  RLZ_ERR_NULL = 1,
  RLZ_ERR_PARSE = 2,
  RLZ_ERR_SORT = 3,
  RLZ_ERR_ARGUMENT = 4,
  RLZ_ERR_CLASS = 5,
  RLZ_ERR_INTERNAL = 6
} rlz_status;

/* Outcome of rlz_run: 0 definite success, 1 error or refutation, 2 not yet known. */
typedef enum { RLZ_OUTCOME_OK = 0, RLZ_OUTCOME_FAILED = 1, RLZ_OUTCOME_UNKNOWN = 2 } rlz_outcome;

typedef struct rlz_formula rlz_formula;
typedef struct rlz_session rlz_session;

RLZ_API const char* rlz_version(void);
/* Message of the last failed call on this thread, or "". */
RLZ_API const char* rlz_last_error(void);
RLZ_API void rlz_string_free(char* s);

RLZ_API rlz_status rlz_formula_parse(const char* text, rlz_formula** out);
RLZ_API void rlz_formula_free(rlz_formula* f);
RLZ_API rlz_status rlz_formula_print(const rlz_formula* f, char** out);
/* Class names: QF, ExistsFree, NK, GammaK, NL, GammaL, Gamma1. */
RLZ_API rlz_status rlz_formula_in_class(const rlz_formula* f, const char* cls, int* out);
/* mode is "rf" or "lrf"; realizer is a function variable name. */
RLZ_API rlz_status rlz_formula_translate(const rlz_formula* f, const char* mode, const char* realizer,
                                         rlz_formula** out);

/* JSON request in, JSON report out. The report is always set when out is
   non-null. */
RLZ_API int rlz_run(const char* request, char** out);

/* A session supplies seed, fuel and depth to requests that do not set them. */
RLZ_API rlz_session* rlz_session_new(uint64_t seed);
RLZ_API void rlz_session_free(rlz_session* s);
RLZ_API rlz_status rlz_session_set_budget(rlz_session* s, uint64_t fuel, uint64_t depth);
RLZ_API int rlz_session_run(rlz_session* s, const char* request, char** out);

#ifdef __cplusplus
}
#endif

#endif

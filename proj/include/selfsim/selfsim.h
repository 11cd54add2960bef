/* C interface to the self-similar action workbench. All strings are UTF-8;
 * strings returned in selfsim_output are owned by the caller and released with
 * selfsim_output_free. Error messages are kept per thread. */
#ifndef SELFSIM_SELFSIM_H
#define SELFSIM_SELFSIM_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(SELFSIM_BUILDING_LIBRARY)
#define SELFSIM_API __attribute__((visibility("default")))
#else
#define SELFSIM_API
#endif

typedef struct selfsim_problem selfsim_problem;

typedef enum selfsim_status {
  SELFSIM_OK = 0,
  SELFSIM_CHECK_FAILED = 1,
  SELFSIM_ERR_USAGE,
  SELFSIM_ERR_PARSE,
  SELFSIM_ERR_MODEL_MISMATCH,
  SELFSIM_ERR_INVALID_SUBGROUP,
  SELFSIM_ERR_NOT_IN_LATTICE,
  SELFSIM_ERR_DOMAIN,
  SELFSIM_ERR_INVALID_TRANSVERSAL,
  SELFSIM_ERR_INCONSISTENT_ENDOMORPHISM,
  SELFSIM_ERR_NOT_AN_AUTOMORPHISM,
  SELFSIM_ERR_UNSUPPORTED,
  SELFSIM_ERR_NO_FIXED_ELEMENT,
  SELFSIM_ERR_SEARCH_EXHAUSTED,
  SELFSIM_ERR_INVALID_K,
  SELFSIM_ERR_RESOURCE_CAP,
  SELFSIM_ERR_INSUFFICIENT_RANGE,
  SELFSIM_ERR_INTERNAL
} selfsim_status;

/* Written only when a call returns SELFSIM_OK or SELFSIM_CHECK_FAILED. */
typedef struct selfsim_output {
  char* text; /* report for standard output */
  char* dot;  /* Graphviz text, or NULL */
  char* csv;  /* CSV text, or NULL */
} selfsim_output;

SELFSIM_API const char* selfsim_status_name(selfsim_status status);
/* Message of the last failing call on this thread ("" if none). */
SELFSIM_API const char* selfsim_last_error(void);

SELFSIM_API selfsim_status selfsim_problem_load_file(const char* path, selfsim_problem** out);
SELFSIM_API selfsim_status selfsim_problem_load_json(const char* json, selfsim_problem** out);
/* "heisenberg" or "odometer" */
SELFSIM_API selfsim_status selfsim_problem_load_bundled(const char* name, selfsim_problem** out);
SELFSIM_API void selfsim_problem_free(selfsim_problem* problem);

/* Elements are registered names ("a") or coordinate lists ("1,0,0"). */
SELFSIM_API selfsim_status selfsim_act(const selfsim_problem* p, const char* element, const char* word,
                                       selfsim_output* out);
SELFSIM_API selfsim_status selfsim_state(const selfsim_problem* p, const char* element, const char* word,
                                         selfsim_output* out);
SELFSIM_API selfsim_status selfsim_automaton(const selfsim_problem* p, const char* const* seeds, size_t seed_count,
                                             size_t max_states, size_t max_depth, selfsim_output* out);
/* Empty name list means every registered element. */
SELFSIM_API selfsim_status selfsim_recursion(const selfsim_problem* p, const char* const* names, size_t name_count,
                                             selfsim_output* out);
SELFSIM_API selfsim_status selfsim_classify(const selfsim_problem* p, int json, selfsim_output* out);
/* mode is "finite" or "nonfinite" */
SELFSIM_API selfsim_status selfsim_digits(const selfsim_problem* p, const char* mode, long k, selfsim_output* out);
SELFSIM_API selfsim_status selfsim_schreier(const selfsim_problem* p, size_t level, const char* basepoint, int want_dot,
                                            selfsim_output* out);
SELFSIM_API selfsim_status selfsim_reproduction_suite(selfsim_output* out);

SELFSIM_API void selfsim_output_free(selfsim_output* out);

#ifdef __cplusplus
}
#endif

#endif

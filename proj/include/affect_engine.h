/* affect_engine.h — C interface to the affect-engine simulator.
 *
 * The library simulates an agent searching a small location graph for an
 * object, planning by expected free energy, and maps the agent's surprise
 * and uncertainty onto a two-dimensional emotion space each step.
 *
 * Usage sketch:
 *
 *   ae_suite* suite = NULL;
 *   if (ae_suite_builtin(&suite) != AE_OK) { ... ae_last_error() ... }
 *   ae_result* result = NULL;
 *   ae_status rc = ae_suite_run(suite, &result);
 *   for (size_t i = 0; i < ae_result_count(result); ++i) {
 *       if (ae_result_status(result, i) == AE_OK) {
 *           char* csv = NULL;
 *           ae_result_csv(result, i, &csv);
 *           ...
 *           ae_string_free(csv);
 *       }
 *   }
 *   ae_result_free(result);
 *   ae_suite_free(suite);
 *
 * All functions returning ae_status leave outputs untouched on failure.
 * Strings returned through char** outputs are heap-allocated and must be
 * released with ae_string_free. Handles are not thread-safe; the error
 * message store is thread-local.
 */

#ifndef AFFECT_ENGINE_H
#define AFFECT_ENGINE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(AFFECT_ENGINE_BUILD)
#    define AE_API __declspec(dllexport)
#  else
#    define AE_API __declspec(dllimport)
#  endif
#else
#  define AE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ae_status {
    AE_OK = 0,
    AE_ERR_NULL_ARGUMENT = 1,          /* a required pointer was NULL */
    AE_ERR_INVALID_ARGUMENT = 2,       /* value out of range / empty input */
    AE_ERR_PARSE = 3,                  /* malformed configuration JSON */
    AE_ERR_VALIDATION = 4,             /* configuration violates an invariant */
    AE_ERR_IMPOSSIBLE_OBSERVATION = 5, /* observation has zero model probability */
    AE_ERR_IO = 6,                     /* file could not be read or written */
    AE_ERR_INDEX = 7,                  /* episode index out of range */
    AE_ERR_RUNTIME = 8                 /* any other failure */
} ae_status;

/* A loaded set of scenario configurations. */
typedef struct ae_suite ae_suite;

/* The outcome of running a suite: one episode record per configuration. */
typedef struct ae_result ae_result;

/* --- Suite construction ------------------------------------------------ */

/* Loads scenario configurations from a JSON file. */
AE_API ae_status ae_suite_load_file(const char* path, ae_suite** out);

/* Parses scenario configurations from JSON text. */
AE_API ae_status ae_suite_load_json(const char* text, ae_suite** out);

/* The five built-in scenarios. */
AE_API ae_status ae_suite_builtin(ae_suite** out);

/* Narrows a suite to the single built-in scenario with this id (1..5). */
AE_API ae_status ae_suite_select_scenario(ae_suite* suite, int scenario_id);

/* --- Suite overrides (applied to every episode) ------------------------ */

AE_API ae_status ae_suite_set_seed(ae_suite* suite, uint64_t seed);
AE_API ae_status ae_suite_set_horizon(ae_suite* suite, int horizon);
AE_API ae_status ae_suite_set_policy_precision(ae_suite* suite, double gamma);
AE_API ae_status ae_suite_set_max_steps(ae_suite* suite, int max_steps);

/* Forces deterministic action selection (highest-probability policy). */
AE_API ae_status ae_suite_force_argmax(ae_suite* suite, int enabled);

/* --- Suite inspection --------------------------------------------------- */

AE_API size_t ae_suite_count(const ae_suite* suite);

/* Serializes the suite with all defaults resolved. */
AE_API ae_status ae_suite_resolved_json(const ae_suite* suite, char** out);

/* --- Running ------------------------------------------------------------ */

/* Runs every episode. Per-episode failures are recorded in the result
 * rather than aborting the remainder; the call itself fails only when the
 * suite is empty or an argument is NULL. */
AE_API ae_status ae_suite_run(const ae_suite* suite, ae_result** out);

/* --- Result access ------------------------------------------------------ */

AE_API size_t ae_result_count(const ae_result* result);

/* Status of episode i (AE_OK when it ran to completion). */
AE_API ae_status ae_result_status(const ae_result* result, size_t i);

/* Error message for a failed episode ("" when it succeeded). */
AE_API ae_status ae_result_error(const ae_result* result, size_t i, char** out);

AE_API ae_status ae_result_scenario_id(const ae_result* result, size_t i, int* out);
AE_API ae_status ae_result_step_count(const ae_result* result, size_t i, size_t* out);

/* 1 when the object was found, 0 when the step budget ran out. */
AE_API ae_status ae_result_found(const ae_result* result, size_t i, int* out);

/* Renderings of episode i. */
AE_API ae_status ae_result_csv(const ae_result* result, size_t i, char** out);
AE_API ae_status ae_result_json(const ae_result* result, size_t i, char** out);
AE_API ae_status ae_result_svg(const ae_result* result, size_t i, char** out);

/* Renderings written straight to a file. */
AE_API ae_status ae_result_write_csv(const ae_result* result, size_t i, const char* path);
AE_API ae_status ae_result_write_json(const ae_result* result, size_t i, const char* path);
AE_API ae_status ae_result_write_svg(const ae_result* result, size_t i, const char* path);

/* --- Lifetime / diagnostics --------------------------------------------- */

AE_API void ae_string_free(char* s);
AE_API void ae_suite_free(ae_suite* suite);
AE_API void ae_result_free(ae_result* result);

/* Stable name for a status code ("AE_OK", ...). */
AE_API const char* ae_status_name(ae_status status);

/* Message of the most recent failure on this thread ("" when none). The
 * pointer stays valid until the next failing call on the same thread. */
AE_API const char* ae_last_error(void);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* AFFECT_ENGINE_H */

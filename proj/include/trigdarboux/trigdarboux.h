#ifndef TRIGDARBOUX_H
#define TRIGDARBOUX_H

/* C interface to the trigdarboux library.
 *
 * Objects are opaque handles released with their _free function. Strings
 * returned through char** are heap allocated and released with
 * td_string_free. Every function returning td_status records a message for
 * failures, readable with td_last_error() on the same thread until the next
 * call. Exact scalars inside JSON are always strings such as "3/4".
 */

#include <stddef.h>
#include <stdint.h>

#if defined(__GNUC__)
#define TD_API __attribute__((visibility("default")))
#else
#define TD_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum td_status {
    TD_OK = 0,
    TD_CHECK_FAILED = 1,      /* ran to completion, some check failed */
    TD_INVALID_INPUT = 2,     /* malformed or semantically invalid input */
    TD_POLE = 3,              /* evaluation at a pole */
    TD_NOT_TRIGONOMETRIC = 4, /* operation needs a trigonometric transform */
    TD_DEPENDENT_BASIS = 5,   /* kernel basis is linearly dependent */
    TD_INTERNAL = 6
} td_status;

typedef struct td_config td_config;
typedef struct td_transform td_transform;
typedef struct td_cm_pair td_cm_pair;

TD_API const char* td_version(void);
TD_API const char* td_last_error(void);
TD_API const char* td_status_name(td_status status);
TD_API void td_string_free(char* s);

/* Run configuration. config_json may be NULL for defaults; accepted keys are
 * seed, tolerance, truncation, corpus (number or per-suite object),
 * basepoint_search, inclusion_window, tau_points, inject_fault. */
TD_API td_status td_config_new(const char* config_json, td_config** out);
TD_API void td_config_free(td_config* config);
TD_API td_status td_config_set_seed(td_config* config, uint64_t seed);
TD_API td_status td_config_set_tolerance(td_config* config, double tol);
TD_API td_status td_config_set_truncation(td_config* config, unsigned k);
/* which: "all", "trig", "cm", "classifier" or "contractive". */
TD_API td_status td_config_set_corpus(td_config* config, const char* which, unsigned size);
TD_API td_status td_config_set_fault_injection(td_config* config, int enabled);
/* Reports are rendered as "json" (default) or "text". */
TD_API td_status td_config_set_format(td_config* config, const char* format);
/* Whether reports carry elapsed times (default 1). */
TD_API td_status td_config_set_timing(td_config* config, int enabled);

/* Transforms built from a kernel spec (trigonometric chains or adelic points). */
TD_API td_status td_transform_build(const char* spec_json, td_transform** out);
TD_API void td_transform_free(td_transform* t);
TD_API td_status td_transform_order(const td_transform* t, int* order);
TD_API td_status td_transform_is_trigonometric(const td_transform* t, int* result);
TD_API td_status td_transform_json(const td_transform* t, char** json_out);
/* psi(x, z) = e^{xz} rho(x, z) for real x and z. */
TD_API td_status td_transform_eval(const td_transform* t, double x, double z, double* re, double* im);

/* Calogero-Moser pairs in the {"N","X","Z","kind"} encoding. */
TD_API td_status td_cm_pair_parse(const char* pair_json, td_cm_pair** out);
TD_API void td_cm_pair_free(td_cm_pair* p);
TD_API td_status td_cm_pair_size(const td_cm_pair* p, size_t* n);
TD_API td_status td_cm_pair_is_trig(const td_cm_pair* p, int* result);
/* Rank condition for the pair's kind; result is 1 or 0. */
TD_API td_status td_cm_pair_check(const td_cm_pair* p, int* result);
/* Rational pair to its trigonometric image. */
TD_API td_status td_cm_pair_to_trig(const td_cm_pair* p, td_cm_pair** out);
/* Darboux transform whose wave is the pair's determinant wave. */
TD_API td_status td_cm_pair_reconstruct(const td_cm_pair* p, td_transform** out);

/* Commands. output receives a JSON payload and report a rendered report;
 * either pointer may be NULL. Returns TD_CHECK_FAILED when a check fails. */
TD_API td_status td_cmd_build(const char* spec_json, const td_config* config, char** output, char** report);
TD_API td_status td_cmd_verify(const char* spec_json, const td_config* config, char** output, char** report);
TD_API td_status td_cmd_bispectral(const char* spec_json, const td_config* config, char** output, char** report);
/* verb: check, map, wave, sato, involution, shift or reconstruct. n and
 * times (length t_len, may be NULL) only matter for shift. */
TD_API td_status td_cmd_cm(const char* verb, const char* pair_json, const td_config* config, long n,
                           const double* times, size_t t_len, char** output, char** report);
TD_API td_status td_cmd_suite(const td_config* config, char** report);
/* CSV of the wave on a grid ("x,z" or "n,z" header); pole rows are flagged. */
TD_API td_status td_cmd_eval(const char* target_json, const char* grid_csv, char** csv);

#ifdef __cplusplus
}
#endif

#endif

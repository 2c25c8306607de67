/*
 * spintomo C API.
 *
 * Objects are opaque handles owned by the caller and released with the
 * matching *_free function. Every fallible call returns an st_status;
 * on failure st_last_error() describes the problem (thread-local, valid
 * until the next failing call on the same thread). Strings returned
 * through char** are heap-allocated and must be released with
 * st_string_free.
 *
 * Directions are passed as flat arrays of (theta, phi) pairs in radians.
 */
#ifndef SPINTOMO_H
#define SPINTOMO_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(SPINTOMO_BUILDING)
#    define ST_API __declspec(dllexport)
#  else
#    define ST_API __declspec(dllimport)
#  endif
#else
#  define ST_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum st_status {
  ST_OK = 0,
  ST_ERR_INVALID_ARGUMENT = 1, /* null pointer, bad enum, bad count */
  ST_ERR_SHAPE = 2,
  ST_ERR_DOMAIN = 3,
  ST_ERR_ILL_POSED = 4,
  ST_ERR_INVARIANT = 5,
  ST_ERR_MISSING_DATA = 6,
  ST_ERR_PARSE = 7,
  ST_ERR_INTERNAL = 99
} st_status;

typedef enum st_inequality { ST_WIGNER = 0, ST_CHSH = 1, ST_UFFINK = 2 } st_inequality;

typedef enum st_format { ST_FORMAT_CSV = 0, ST_FORMAT_JSON = 1 } st_format;

typedef struct st_state st_state;         /* density matrix */
typedef struct st_tomogram st_tomogram;   /* ordered list of tomogram tables */
typedef struct st_shots st_shots;         /* ordered list of shot records */

typedef struct st_search_config {
  uint32_t restarts;
  uint32_t max_iterations;
  double tolerance;
  uint64_t seed;
} st_search_config;

typedef struct st_report {
  st_inequality kind;
  double lhs;
  double bound;
  double margin; /* > 0 means violated */
  int violated;
  size_t n_directions;
  double angles[8]; /* (theta, phi) per direction */
} st_report;

typedef struct st_search_result {
  st_report best;
  double best_margin;
  uint64_t evaluations;
  int converged;
} st_search_result;

typedef struct st_threshold_result {
  int found; /* 0: no sign change on [-1, 1] */
  double phi;
  int monotone;
} st_threshold_result;

typedef struct st_estimate {
  double value;
  double std_error;
  uint64_t shots;
} st_estimate;

ST_API const char* st_version(void);
ST_API const char* st_last_error(void);
ST_API const char* st_status_name(st_status status);
ST_API void st_string_free(char* s);

ST_API st_status st_parse_inequality(const char* name, st_inequality* out);

/* States */
ST_API st_status st_state_werner(int d, double phi, st_state** out);
ST_API st_status st_state_basis(int dim, int index, st_state** out);
ST_API st_status st_state_from_json(const char* json, st_state** out);
ST_API st_status st_state_to_json(const st_state* state, char** out);
ST_API st_status st_state_dim(const st_state* state, size_t* out);
ST_API st_status st_state_frobenius_distance(const st_state* a, const st_state* b, double* out);
ST_API void st_state_free(st_state* state);

/* Directions */
ST_API st_status st_fibonacci_directions(size_t n, double* angles_out);
/* n directions uniform on the sphere, deterministic in seed. */
ST_API st_status st_random_directions(size_t n, uint64_t seed, double* angles_out);

/* Tomograms */
ST_API st_status st_tomogram_new(st_tomogram** out);
/* Appends the exact tomogram of `state` at n_dirs directions (one per party). */
ST_API st_status st_tomogram_append(st_tomogram* t, const st_state* state, const double* angles, size_t n_dirs);
/* Appends the tomograms on the default reconstruction grid for `state`. */
ST_API st_status st_tomogram_append_default_grid(st_tomogram* t, const st_state* state);
ST_API st_status st_tomogram_count(const st_tomogram* t, size_t* out);
ST_API st_status st_tomogram_entries(const st_tomogram* t, size_t table, size_t* out);
/* Probability at a label tuple (labels +1/-1 or +1/0/-1, one per party). */
ST_API st_status st_tomogram_probability(const st_tomogram* t, size_t table, const int* labels, size_t n_labels,
                                         double* out);
/* half_labels != 0 prints qubit labels as +-0.5. */
ST_API st_status st_tomogram_serialize(const st_tomogram* t, st_format format, int half_labels, char** out);
ST_API st_status st_tomogram_parse(const char* text, st_format format, st_tomogram** out);
ST_API void st_tomogram_free(st_tomogram* t);

/* Reconstruction; projected is set when eigenvalue clipping was needed. */
ST_API st_status st_reconstruct(const st_tomogram* t, size_t dim, st_state** out, int* projected, double* residual);

/* Inequalities */
ST_API st_status st_evaluate(const st_state* state, st_inequality kind, const double* angles, size_t n_dirs,
                             st_report* out);
ST_API st_status st_report_to_json(const st_report* report, char** out);

/* Search */
ST_API void st_search_config_default(st_search_config* cfg);
ST_API st_status st_maximize(const st_state* state, st_inequality kind, const st_search_config* cfg,
                             st_search_result* out);
ST_API st_status st_search_result_to_json(const st_search_result* result, char** out);
ST_API st_status st_threshold(int d, st_inequality kind, const st_search_config* cfg, double bisect_tol,
                              st_threshold_result* out);

/* Sampling */
ST_API st_status st_shots_new(st_shots** out);
ST_API st_status st_sample(st_shots* shots, const st_state* state, const double* angles, size_t n_dirs,
                           uint64_t n_shots, uint64_t seed);
ST_API st_status st_shots_count(const st_shots* shots, size_t* out);
ST_API st_status st_shots_serialize(const st_shots* shots, st_format format, char** out);
ST_API void st_shots_free(st_shots* shots);
/* quad_angles: a, b, b', c as four (theta, phi) pairs. */
ST_API st_status st_estimate_chsh(const st_state* state, const double* quad_angles, uint64_t shots_per_setting,
                                  uint64_t seed, st_estimate* out);

#ifdef __cplusplus
}
#endif

#endif /* SPINTOMO_H */

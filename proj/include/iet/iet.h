/* C interface to the interval exchange library.
 *
 * Scalars cross the boundary as canonical strings ("3/5", "1/2-1/10*sqrt(5)").
 * Every function returning char* through an out parameter hands ownership to
 * the caller; release it with iet_string_free. On failure the status is
 * nonzero and iet_last_error() describes it (per thread).
 */
#ifndef IET_IET_H
#define IET_IET_H

#include <stddef.h>

#if defined(IET_BUILDING_LIBRARY)
#define IET_API __attribute__((visibility("default")))
#else
#define IET_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum iet_status {
  IET_OK = 0,
  IET_ERR_PARSE = 1,
  IET_ERR_DOMAIN = 2,
  IET_ERR_DIVISION_BY_ZERO = 3,
  IET_ERR_FIELD_MISMATCH = 4,
  IET_ERR_STEP_CAP = 5,
  IET_ERR_PRECONDITION = 6,
  IET_ERR_CONFIG = 7,
  IET_ERR_ARGUMENT = 8,
  IET_ERR_INTERNAL = 9
} iet_status;

typedef struct iet_config iet_config;
typedef struct iet_map iet_map;
typedef struct iet_induced iet_induced;
typedef struct iet_stack iet_stack;

IET_API const char* iet_last_error(void);
IET_API const char* iet_status_name(iet_status status);
IET_API void iet_string_free(char* s);

/* config documents (JSON or TOML subset) */
IET_API iet_status iet_config_load(const char* path, iet_config** out);
IET_API iet_status iet_config_parse(const char* text, iet_config** out);
/* Value of params.<key> or NULL. Owned by the config. */
IET_API const char* iet_config_param(const iet_config* cfg, const char* key);
IET_API void iet_config_destroy(iet_config* cfg);

/* maps */
IET_API iet_status iet_map_create(const char* lengths, const char* perm, iet_map** out);
IET_API iet_status iet_map_from_config(const iet_config* cfg, iet_map** out);
IET_API iet_status iet_map_golden(iet_map** out);
IET_API void iet_map_destroy(iet_map* f);
IET_API size_t iet_map_size(const iet_map* f);
IET_API iet_status iet_map_render(const iet_map* f, char** out);
IET_API iet_status iet_map_eval(const iet_map* f, const char* x, char** out);
IET_API iet_status iet_map_eval_inverse(const iet_map* f, const char* y, char** out);
/* 1 when no f^m(d_i) = d_j for m <= depth, 0 on a collision */
IET_API iet_status iet_map_idoc(const iet_map* f, long depth, int* ok);

/* first-return induction */
IET_API iet_status iet_induce(const iet_map* f, const char* t, long step_cap, iet_induced** out);
IET_API size_t iet_induced_piece_count(const iet_induced* g);
IET_API iet_status iet_induced_piece(const iet_induced* g, size_t index, char** lo, char** hi,
                                     long* return_time, char** translation);
IET_API iet_status iet_induced_eval(const iet_induced* g, const char* x, char** out);
IET_API void iet_induced_destroy(iet_induced* g);

/* stacks */
IET_API iet_status iet_stack_build_tall(const iet_map* f, long min_height, long step_cap,
                                        iet_stack** out);
IET_API iet_status iet_stack_from_window(const iet_map* f, const char* x, long n, const char* eps,
                                         iet_stack** out);
IET_API iet_status iet_stack_trim(const iet_stack* s, iet_stack** out);
IET_API size_t iet_stack_height(const iet_stack* s);
IET_API int iet_stack_distinct(const iet_stack* s);
IET_API iet_status iet_stack_measure(const iet_stack* s, char** out);
/* *ok = 1 when valid; otherwise *level (1-based) and *defect: 1 s1, 2 s2, 3 overlap */
IET_API iet_status iet_stack_verify(const iet_map* f, const iet_stack* s, int* ok, size_t* level,
                                    int* defect);
IET_API void iet_stack_destroy(iet_stack* s);

/* separation functions at x for window n */
IET_API iet_status iet_separation(const iet_map* f, const char* x, long n, char** rho_n,
                                  char** delta_n, char** rho_prime_n);

/* Six complex averages as (re, im) pairs in the order alpha0, alpha1,
 * beta0, beta1, gamma0, gamma1. */
IET_API iet_status iet_boundary_averages(const iet_map* f, const char* t, double alpha, long n,
                                         const char* eps, long density, long horizon,
                                         double out[12]);

/* Commands: complete rendered output in `format` ("text", "json", "csv",
 * "jsonl"). Optional string arguments may be NULL for the default. */
IET_API iet_status iet_cmd_eval(const iet_map* f, const char* x, const char* format, char** out);
IET_API iet_status iet_cmd_orbit(const iet_map* f, const char* x, long n, int symmetric,
                                 const char* format, char** out);
IET_API iet_status iet_cmd_induce(const iet_map* f, const char* t, long step_cap, long idoc_depth,
                                  const char* format, char** out);
IET_API iet_status iet_cmd_psi(const iet_map* f, const char* t, long horizon, int phi,
                               const char* format, char** out);
/* threshold: scalar text, "inf", or NULL for b/(24r) */
IET_API iet_status iet_cmd_scan(const iet_map* f, const char* grid, long horizon,
                                const char* threshold, unsigned jobs, const char* format,
                                char** out);
IET_API iet_status iet_cmd_wm(const iet_map* f, const char* t, long horizon, long grid_size,
                              const char* x, double peak_threshold, unsigned jobs,
                              const char* format, char** out);
/* Fails with IET_ERR_PRECONDITION when idoc_depth > 0 and the probe finds a collision. */
IET_API iet_status iet_cmd_stack(const iet_map* f, long min_height, long step_cap, long idoc_depth,
                                 int trim, const char* format, char** out);
IET_API iet_status iet_cmd_idoc(const iet_map* f, long depth, const char* format, char** out);

#ifdef __cplusplus
}
#endif

#endif

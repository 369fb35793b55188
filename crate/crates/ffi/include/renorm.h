#ifndef RENORM_H
#define RENORM_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum RenormStatus {
  RENORM_STATUS_OK = 0,
  RENORM_STATUS_MISMATCH = 1,
  RENORM_STATUS_BAD_INPUT = 2,
  RENORM_STATUS_SIZE_LIMIT = 3,
  RENORM_STATUS_NULL_POINTER = 4,
  RENORM_STATUS_PANIC = 5,
} RenormStatus;

/**
 * Divergence-restricted graph Hopf algebra at a fixed dimension.
 */
typedef struct RenormContext RenormContext;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. Valid until the next call.
 */
const char *renorm_last_error(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed already.
 */
void renorm_string_free(char *s);

/**
 * Complete Bell polynomial `B_n` (`k < 0`) or partial `B_{n,k}` as text or LaTeX.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum RenormStatus renorm_bell(uint32_t n, int32_t k, bool latex, char **out);

/**
 * Reduced multi-index coproduct of `z_4^n` at dimension `d` (for example "18/5"), as JSON.
 *
 * # Safety
 * `d` must be a NUL-terminated string and `out` a valid pointer.
 */
enum RenormStatus renorm_coproduct_json(uint32_t n, const char *d, char **out);

/**
 * Runs the three-way agreement check; returns `Ok` on agreement and `Mismatch` otherwise.
 * The JSON report is written to `out` when it is not NULL.
 *
 * # Safety
 * `d` must be a NUL-terminated string; `out` may be NULL.
 */
enum RenormStatus renorm_verify(const char *d, uint32_t nmax, uint64_t seed, char **out);

/**
 * Creates a Hopf algebra context at dimension `d`.
 *
 * # Safety
 * `d` must be a NUL-terminated string and `out` a valid pointer.
 */
enum RenormStatus renorm_context_new(const char *d, struct RenormContext **out);

/**
 * Releases a context. NULL is ignored.
 *
 * # Safety
 * `ctx` must come from [`renorm_context_new`] and not have been freed already.
 */
void renorm_context_free(struct RenormContext *ctx);

/**
 * Thresholds `n*_e` and `n*_m` of the context dimension.
 *
 * # Safety
 * All pointers must be valid.
 */
enum RenormStatus renorm_context_thresholds(const struct RenormContext *ctx,
                                            uint32_t *n_star_energy,
                                            uint32_t *n_star_mass);

/**
 * Antipode of a graph given by registry name or inline JSON, as a JSON diagram sum.
 *
 * # Safety
 * `ctx` must be a live context, `graph` a NUL-terminated string and `out` a valid pointer.
 */
enum RenormStatus renorm_context_antipode_json(const struct RenormContext *ctx,
                                               const char *graph,
                                               char **out);

/**
 * Regularised valuation of one graph with default numeric parameters at cutoff `n`.
 *
 * # Safety
 * `graph` and `d` must be NUL-terminated strings and `value` a valid pointer.
 */
enum RenormStatus renorm_valuate(const char *graph, const char *d, uint32_t n, double *value);

/**
 * Counterterm report as JSON, with log-partition orders up to `logz_order`.
 *
 * # Safety
 * `d` must be a NUL-terminated string and `out` a valid pointer.
 */
enum RenormStatus renorm_counterterms_json(const char *d,
                                           double alpha,
                                           uint32_t n,
                                           uint32_t logz_order,
                                           char **out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* RENORM_H */

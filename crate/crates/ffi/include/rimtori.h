#ifndef RIMTORI_H
#define RIMTORI_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum RtStatus {
  RT_STATUS_OK = 0,
  RT_STATUS_NULL_POINTER = 1,
  RT_STATUS_INVALID_UTF8 = 2,
  RT_STATUS_INVALID_ARGUMENT = 3,
  RT_STATUS_PARSE_ERROR = 4,
  RT_STATUS_COMPUTE_ERROR = 5,
  /**
   * A value does not fit the requested integer type or buffer.
   */
  RT_STATUS_OVERFLOW = 6,
  RT_STATUS_PANIC = 7,
} RtStatus;

/**
 * A finitely generated abelian group `Z^n / (relations)`.
 */
typedef struct RtQuotient RtQuotient;

/**
 * A truncated power series with exact rational coefficients.
 */
typedef struct RtSeries RtSeries;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *rt_version(void);

/**
 * Message of the last failed call on this thread, or NULL.
 * Free the result with `rt_string_free`.
 */
char *rt_last_error(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library and not yet freed.
 */
void rt_string_free(char *s);

/**
 * Runs a problem document (JSON) and writes the report as JSON to
 * `*out_report`. `out_exit` (may be NULL) receives 0 for a value or
 * passing report and 1 for a failing one.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out_report` must be writable.
 */
enum RtStatus rt_run_spec(const char *json, char **out_report, int32_t *out_exit);

/**
 * Runs one verification suite by name (`snf`, `deck`, `equivariance`,
 * `convolution`, `bryan-leung`, `trr`, `sympsum`). `trials == 0` keeps the
 * suite default. `*out_passed` tells whether every check held.
 *
 * # Safety
 * `suite` must be a NUL-terminated string; `out_passed` must be writable.
 */
enum RtStatus rt_verify(const char *suite,
                        size_t order,
                        size_t trials,
                        uint64_t seed,
                        bool *out_passed);

/**
 * Builds one of the series `G`, `eta12`, `F` (uses `genus`) or `H` to
 * order `order`.
 *
 * # Safety
 * `name` must be a NUL-terminated string; `out` must be writable.
 */
enum RtStatus rt_series_new(const char *name, uint32_t genus, size_t order, struct RtSeries **out);

/**
 * Number of stored coefficients (order + 1); 0 for NULL.
 *
 * # Safety
 * `s` must be NULL or a live handle.
 */
size_t rt_series_len(const struct RtSeries *s);

/**
 * Coefficient of `q^k` as a string `p` or `p/q` in lowest terms.
 *
 * # Safety
 * `s` must be a live handle; `out` must be writable.
 */
enum RtStatus rt_series_coeff_string(const struct RtSeries *s, size_t k, char **out);

/**
 * Coefficient of `q^k` as numerator and positive denominator.
 * Returns `RT_STATUS_OVERFLOW` when either does not fit in 64 bits.
 *
 * # Safety
 * `s` must be a live handle; `num` and `den` must be writable.
 */
enum RtStatus rt_series_coeff_i64(const struct RtSeries *s, size_t k, int64_t *num, int64_t *den);

/**
 * # Safety
 * `s` must be NULL or a handle from `rt_series_new` not yet freed.
 */
void rt_series_free(struct RtSeries *s);

/**
 * `Z^rank` modulo the columns of `relations`, given row-major as
 * `rank × cols` entries.
 *
 * # Safety
 * `relations` must point to `rank * cols` values (may be NULL when either
 * is 0); `out` must be writable.
 */
enum RtStatus rt_quotient_new(size_t rank,
                              const int64_t *relations,
                              size_t cols,
                              struct RtQuotient **out);

/**
 * Free rank of the group; 0 for NULL.
 *
 * # Safety
 * `q` must be NULL or a live handle.
 */
size_t rt_quotient_free_rank(const struct RtQuotient *q);

/**
 * Invariant factors `d_1 | d_2 | …` (all > 1). `*out_len` receives the
 * count; when `cap` is too small nothing is written and the call returns
 * `RT_STATUS_OVERFLOW`, so `cap = 0` queries the size.
 *
 * # Safety
 * `q` must be a live handle; `out` must hold `cap` values; `out_len` must
 * be writable.
 */
enum RtStatus rt_quotient_torsion(const struct RtQuotient *q,
                                  int64_t *out,
                                  size_t cap,
                                  size_t *out_len);

/**
 * Canonical representative of the class of `v` (length = rank).
 *
 * # Safety
 * `q` must be a live handle; `v` and `out` must hold `rank` values and may
 * alias.
 */
enum RtStatus rt_quotient_normal_form(const struct RtQuotient *q, const int64_t *v, int64_t *out);

/**
 * # Safety
 * `q` must be NULL or a handle from `rt_quotient_new` not yet freed.
 */
void rt_quotient_free(struct RtQuotient *q);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RIMTORI_H */

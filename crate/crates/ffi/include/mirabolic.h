#ifndef MIRABOLIC_H
#define MIRABOLIC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum MirabolicSide {
  MIRABOLIC_SIDE_LEFT = 0,
  MIRABOLIC_SIDE_RIGHT = 1,
} MirabolicSide;

typedef enum MirabolicStatus {
  MIRABOLIC_STATUS_OK = 0,
  MIRABOLIC_STATUS_NULL_POINTER = 1,
  MIRABOLIC_STATUS_INVALID_UTF8 = 2,
  MIRABOLIC_STATUS_INVALID_ARGUMENT = 3,
  MIRABOLIC_STATUS_PARSE = 4,
  MIRABOLIC_STATUS_CONTEXT_MISMATCH = 5,
  MIRABOLIC_STATUS_NOT_DIVISIBLE = 6,
  MIRABOLIC_STATUS_SCALE_EXCEEDED = 7,
  MIRABOLIC_STATUS_UNSUPPORTED_FIELD = 8,
  MIRABOLIC_STATUS_CHECK_FAILED = 9,
  MIRABOLIC_STATUS_INTERNAL = 10,
  MIRABOLIC_STATUS_PANIC = 11,
} MirabolicStatus;

/**
 * A finite combination of basis elements of `MV_{n|m}`.
 */
typedef struct MirabolicElement MirabolicElement;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread. Valid until the next
 * library call on the same thread; never null.
 */
const char *mirabolic_last_error(void);

/**
 * Dimension of `MV_{n|m}` at total `d`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum MirabolicStatus mirabolic_dimension_count(size_t n, size_t m, uint32_t d, uint64_t *out);

/**
 * Basis element `index` of `MV_{n|m}` in canonical order.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum MirabolicStatus mirabolic_element_basis(size_t n,
                                             size_t m,
                                             uint32_t d,
                                             size_t index,
                                             struct MirabolicElement **out);

/**
 * Parses the text form, e.g. `(v^-2)*[[1]]{} + [[1]]{(1,1)}`.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` valid for writes.
 */
enum MirabolicStatus mirabolic_element_parse(size_t n,
                                             size_t m,
                                             uint32_t d,
                                             const char *text,
                                             struct MirabolicElement **out);

/**
 * Acts by one token (`E1`, `F2`, `H+1`, `H-3`, `L`) on the given side,
 * returning a new element.
 *
 * # Safety
 * `x` must be a live handle, `token` a NUL-terminated string, and `out`
 * valid for writes.
 */
enum MirabolicStatus mirabolic_element_act(const struct MirabolicElement *x,
                                           enum MirabolicSide side,
                                           const char *token,
                                           struct MirabolicElement **out);

/**
 * Number of nonzero terms.
 *
 * # Safety
 * `x` must be a live handle and `out` valid for writes.
 */
enum MirabolicStatus mirabolic_element_term_count(const struct MirabolicElement *x, size_t *out);

/**
 * Whether two elements are equal (same context and coefficients).
 *
 * # Safety
 * `a` and `b` must be live handles and `out` valid for writes.
 */
enum MirabolicStatus mirabolic_element_equal(const struct MirabolicElement *a,
                                             const struct MirabolicElement *b,
                                             bool *out);

/**
 * Text form; release with `mirabolic_string_free`.
 *
 * # Safety
 * `x` must be a live handle and `out` valid for writes.
 */
enum MirabolicStatus mirabolic_element_to_text(const struct MirabolicElement *x, char **out);

/**
 * # Safety
 * `x` must be null or a handle returned by this library and not yet freed.
 */
void mirabolic_element_free(struct MirabolicElement *x);

/**
 * # Safety
 * `s` must be null or a string returned by this library and not yet freed.
 */
void mirabolic_string_free(char *s);

/**
 * Mismatching coefficients between the symbolic actions and the
 * finite-field oracle at `(n, m, d, q)`, both sides. Parity failures count
 * as mismatches.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum MirabolicStatus mirabolic_oracle_mismatches(size_t n,
                                                 size_t m,
                                                 uint32_t d,
                                                 uint64_t q,
                                                 uint64_t max_work,
                                                 uint64_t *out);

/**
 * Runs one named check of the desk profile (`dimension-formula`,
 * `orbit-bijection`, `presentation-relations`, `transpose-duality`,
 * `oracle-agreement`, `bimodule-commutation`, `double-centralizer`,
 * `negative-control`) and reports whether it passed. A check that runs and
 * fails still returns `MIRABOLIC_STATUS_OK`.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `passed` valid for writes.
 */
enum MirabolicStatus mirabolic_run_check(const char *name, uint64_t max_work, bool *passed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MIRABOLIC_H */

#ifndef REGMAT_H
#define REGMAT_H

/* Generated by cbindgen from crates/ffi. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes.
typedef enum RegmatStatus {
  REGMAT_STATUS_OK = 0,
  REGMAT_STATUS_INVALID_ARGUMENT = 1,
  REGMAT_STATUS_NULL_POINTER = 2,
  REGMAT_STATUS_TOO_LARGE = 3,
  REGMAT_STATUS_OUT_OF_RANGE = 4,
  REGMAT_STATUS_BUFFER_TOO_SMALL = 5,
  // Independent evaluations of the same value disagreed.
  REGMAT_STATUS_MISMATCH = 6,
  REGMAT_STATUS_INTERNAL = 7,
} RegmatStatus;

typedef enum RegmatMethod {
  REGMAT_METHOD_BASELINE = 0,
  REGMAT_METHOD_PRUNED = 1,
} RegmatMethod;

// Evaluation route for `regmat_lambda`. `Auto` evaluates every applicable
// route and fails with `REGMAT_STATUS_MISMATCH` if they disagree.
typedef enum RegmatRoute {
  REGMAT_ROUTE_AUTO = 0,
  REGMAT_ROUTE_FACTORIAL = 1,
  REGMAT_ROUTE_PARTITION = 2,
  REGMAT_ROUTE_ANAND = 3,
  REGMAT_ROUTE_GOOD_CROOK = 4,
  REGMAT_ROUTE_PI = 5,
  REGMAT_ROUTE_EXPLICIT = 6,
} RegmatRoute;

// Opaque: sorted list of n-bit masks with k ones.
typedef struct RegmatMaskPool RegmatMaskPool;

// Opaque: canonical matrices in lexicographic order.
typedef struct RegmatRepresentatives RegmatRepresentatives;

typedef struct RegmatCountReport {
  uint32_t n;
  uint32_t k;
  uint64_t mu;
  uint64_t tuples_visited;
  double elapsed_seconds;
} RegmatCountReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null if none. The
// pointer stays valid until the next failing call on the same thread.
const char *regmat_last_error_message(void);

// Library version as a static NUL-terminated string.
const char *regmat_version(void);

uint32_t regmat_popcount(uint64_t x);

// Bit `i` of `x` for a row of `width` bits.
//
// # Safety
// `out` must be null or valid for one write.
enum RegmatStatus regmat_bit_value(uint64_t x, uint32_t i, uint32_t width, uint8_t *out);

// # Safety
// `out` must be null or valid for one pointer write.
enum RegmatStatus regmat_mask_pool_new(uint32_t n, uint32_t k, struct RegmatMaskPool **out);

// # Safety
// `pool` must be null or a live handle from `regmat_mask_pool_new`.
size_t regmat_mask_pool_len(const struct RegmatMaskPool *pool);

// Pointer to the pool's `regmat_mask_pool_len` masks, ascending. Borrowed
// from the handle.
//
// # Safety
// `pool` must be null or a live handle from `regmat_mask_pool_new`.
const uint64_t *regmat_mask_pool_data(const struct RegmatMaskPool *pool);

// # Safety
// `pool` must be null or a handle from `regmat_mask_pool_new` not yet freed.
void regmat_mask_pool_free(struct RegmatMaskPool *pool);

// Whether the `n` rows form a canonical element: rows and columns
// nondecreasing and every column with `k` ones.
//
// # Safety
// `rows` must point to `n` readable values; `out` must be valid for a write.
enum RegmatStatus regmat_is_canonical(const uint64_t *rows, uint32_t n, uint32_t k, bool *out);

// Whether every row and column of the matrix has exactly `k` ones.
//
// # Safety
// `rows` must point to `n` readable values; `out` must be valid for a write.
enum RegmatStatus regmat_is_member(const uint64_t *rows, uint32_t n, uint32_t k, bool *out);

// Writes the `n` column integers (the transpose's rows) to `cols`.
//
// # Safety
// `rows` must point to `n` readable values and `cols` to `n` writable ones.
enum RegmatStatus regmat_transpose(const uint64_t *rows, uint32_t n, uint64_t *cols);

// Counts canonical elements. `jobs` applies to the pruned method only;
// 0 is treated as 1.
//
// # Safety
// `out` must be null or valid for one write.
enum RegmatStatus regmat_count(uint32_t n,
                               uint32_t k,
                               enum RegmatMethod method,
                               uint32_t jobs,
                               struct RegmatCountReport *out);

// Collects every canonical element for `(n, k)`.
//
// # Safety
// `out` must be null or valid for one pointer write.
enum RegmatStatus regmat_representatives_new(uint32_t n,
                                             uint32_t k,
                                             uint32_t jobs,
                                             struct RegmatRepresentatives **out);

// # Safety
// `reps` must be null or a live handle.
size_t regmat_representatives_len(const struct RegmatRepresentatives *reps);

// Matrix dimension n, or 0 for a null handle.
//
// # Safety
// `reps` must be null or a live handle.
uint32_t regmat_representatives_dimension(const struct RegmatRepresentatives *reps);

// Copies the rows of element `index` (0-based) into `rows`, which must hold
// at least n values.
//
// # Safety
// `reps` must be a live handle and `rows` valid for `rows_len` writes.
enum RegmatStatus regmat_representatives_get(const struct RegmatRepresentatives *reps,
                                             size_t index,
                                             uint64_t *rows,
                                             size_t rows_len);

// # Safety
// `reps` must be null or a handle not yet freed.
void regmat_representatives_free(struct RegmatRepresentatives *reps);

// λ(n, k) as a decimal string, released with `regmat_string_free`.
//
// # Safety
// `out` must be null or valid for one pointer write.
enum RegmatStatus regmat_lambda(uint32_t n, uint32_t k, enum RegmatRoute route, char **out);

// # Safety
// `s` must be null or a string returned by this library, not yet freed.
void regmat_string_free(char *s);

// Human-readable name of a status code (static string).
const char *regmat_status_name(enum RegmatStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* REGMAT_H */

#ifndef LINCONG_H
#define LINCONG_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes; the numeric values match the `lincong` CLI exit statuses.
 */
typedef enum LincongStatus {
  LINCONG_STATUS_OK = 0,
  LINCONG_STATUS_USAGE = 2,
  LINCONG_STATUS_PRECONDITION = 3,
  LINCONG_STATUS_RESOURCE = 4,
  LINCONG_STATUS_NULL_ARGUMENT = 5,
  LINCONG_STATUS_PANIC = 6,
} LincongStatus;

typedef enum LincongMethod {
  /**
   * Closed form when its hypothesis holds, partition oracle otherwise.
   */
  LINCONG_METHOD_AUTO = 0,
  LINCONG_METHOD_FORMULA = 1,
  LINCONG_METHOD_IEP_EDGES = 2,
  LINCONG_METHOD_IEP_PARTITIONS = 3,
  LINCONG_METHOD_BRUTE = 4,
} LincongMethod;

/**
 * Opaque congruence `a_1 x_1 + ... + a_k x_k = b (mod n)`, reduced mod `n`.
 */
typedef struct LincongInstance LincongInstance;

/**
 * Opaque result of the subset-sum hypothesis check.
 */
typedef struct LincongReport LincongReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds an instance from `k` machine-integer coefficients.
 *
 * # Safety
 * `coeffs` must point to `k` readable `int64_t` values and `out` must be writable.
 */
enum LincongStatus lincong_instance_new(const int64_t *coeffs,
                                        size_t k,
                                        int64_t b,
                                        int64_t n,
                                        struct LincongInstance **out);

/**
 * Builds an instance from decimal strings, for values beyond 64 bits.
 *
 * # Safety
 * `coeffs` must point to `k` NUL-terminated strings; `b`, `n` must be
 * NUL-terminated strings and `out` must be writable.
 */
enum LincongStatus lincong_instance_new_decimal(const char *const *coeffs,
                                                size_t k,
                                                const char *b,
                                                const char *n,
                                                struct LincongInstance **out);

/**
 * # Safety
 * `inst` must be NULL or a handle from `lincong_instance_new*` not yet freed.
 */
void lincong_instance_free(struct LincongInstance *inst);

/**
 * Number of unknowns, or 0 for a NULL handle.
 *
 * # Safety
 * `inst` must be NULL or a live handle.
 */
size_t lincong_instance_k(const struct LincongInstance *inst);

/**
 * Distinct-coordinate solution count, written to `*out` as a decimal string.
 *
 * # Safety
 * `inst` must be a live handle and `out` writable.
 */
enum LincongStatus lincong_count(const struct LincongInstance *inst,
                                 enum LincongMethod method,
                                 char **out);

/**
 * Number of all solutions (coordinates not required distinct).
 *
 * # Safety
 * `inst` must be a live handle and `out` writable.
 */
enum LincongStatus lincong_lehmer_count(const struct LincongInstance *inst, char **out);

/**
 * Solutions of `x_1 + ... + x_k = b (mod n)` with every `x_i` a unit mod `n`.
 *
 * # Safety
 * `out` must be writable.
 */
enum LincongStatus lincong_rademacher_brauer_count(int64_t n, size_t k, int64_t b, char **out);

/**
 * # Safety
 * `inst` must be a live handle and `out` writable.
 */
enum LincongStatus lincong_check_condition(const struct LincongInstance *inst,
                                           struct LincongReport **out);

/**
 * # Safety
 * `report` must be NULL or a live report handle.
 */
bool lincong_report_holds(const struct LincongReport *report);

/**
 * Whether `gcd(sum a_i, n)` divides `b`.
 *
 * # Safety
 * `report` must be NULL or a live report handle.
 */
bool lincong_report_divides_b(const struct LincongReport *report);

/**
 * `gcd(sum a_i, n)` as a decimal string.
 *
 * # Safety
 * `report` must be a live handle and `out` writable.
 */
enum LincongStatus lincong_report_full_sum_gcd(const struct LincongReport *report, char **out);

/**
 * Copies the 0-based indices of the first failing subset into `indices`
 * (capacity `cap`) and its size into `*len`; `*len` is 0 when the hypothesis
 * holds. Returns `LINCONG_STATUS_RESOURCE` when `cap` is too small, with
 * `*len` set to the required size.
 *
 * # Safety
 * `report` must be a live handle, `len` writable, and `indices` valid for
 * `cap` writes (it may be NULL when `cap` is 0).
 */
enum LincongStatus lincong_report_failing_subset(const struct LincongReport *report,
                                                 size_t *indices,
                                                 size_t cap,
                                                 size_t *len);

/**
 * # Safety
 * `report` must be NULL or a live report handle.
 */
void lincong_report_free(struct LincongReport *report);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, not yet freed.
 */
void lincong_string_free(char *s);

/**
 * Message for the last failed call on this thread, or NULL. The pointer stays
 * valid until the next `lincong_*` call on the same thread.
 */
const char *lincong_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LINCONG_H */

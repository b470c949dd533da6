#ifndef FROB3_H
#define FROB3_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Values accepted by the `method` argument of `frob3_compute`.
 */
typedef enum Frob3Method {
  FROB3_METHOD_AUTO = 0,
  FROB3_METHOD_FORMULA = 1,
  FROB3_METHOD_BRAUER = 2,
  FROB3_METHOD_LEMMA3 = 3,
  FROB3_METHOD_SIEVE = 4,
} Frob3Method;

typedef enum Frob3Status {
  FROB3_STATUS_OK = 0,
  FROB3_STATUS_NULL_POINTER = 1,
  /**
   * Non-positive, unit, or otherwise malformed generators.
   */
  FROB3_STATUS_INVALID_INPUT = 2,
  FROB3_STATUS_GCD_NOT_ONE = 3,
  /**
   * A generator above 2^31-1, or a sieve past the memory cap.
   */
  FROB3_STATUS_TOO_LARGE = 4,
  /**
   * The requested method does not apply to this input.
   */
  FROB3_STATUS_NOT_APPLICABLE = 5,
  FROB3_STATUS_INTERNAL = 6,
} Frob3Status;

/**
 * Opaque computation result.
 */
typedef struct Frob3Result Frob3Result;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Computes g(a, b, c) with `method` (a `Frob3Method` value) and stores a
 * new handle in `*out`. On failure `*out` is set to null.
 *
 * # Safety
 * `out` must be null or valid for one pointer write.
 */
enum Frob3Status frob3_compute(int64_t a,
                               int64_t b,
                               int64_t c,
                               int32_t method,
                               struct Frob3Result **out);

/**
 * Frobenius number by exhaustive sieve, independent of the formulas.
 *
 * # Safety
 * `out` must be null or valid for one `int64_t` write.
 */
enum Frob3Status frob3_sieve(int64_t a, int64_t b, int64_t c, int64_t *out);

/**
 * # Safety
 * `r` must be null or a live handle; `out` null or writable.
 */
enum Frob3Status frob3_result_g(const struct Frob3Result *r, int64_t *out);

/**
 * Case label as a static string, or null for a null handle. Do not free.
 *
 * # Safety
 * `r` must be null or a live handle.
 */
const char *frob3_result_case(const struct Frob3Result *r);

/**
 * Name of the evaluator that produced g, static. Do not free.
 *
 * # Safety
 * `r` must be null or a live handle.
 */
const char *frob3_result_method(const struct Frob3Result *r);

/**
 * The JSON document of the CLI. Release it with `frob3_string_free`.
 *
 * # Safety
 * `r` must be null or a live handle.
 */
char *frob3_result_json(const struct Frob3Result *r);

/**
 * # Safety
 * `s` must be null or a string from `frob3_result_json`, freed once.
 */
void frob3_string_free(char *s);

/**
 * # Safety
 * `r` must be null or a handle from `frob3_compute`, freed once.
 */
void frob3_result_free(struct Frob3Result *r);

/**
 * Static description of a status code. Do not free.
 */
const char *frob3_status_str(enum Frob3Status s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FROB3_H */

#ifndef TRIFOCAL_H
#define TRIFOCAL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. Zero is success.
 */
typedef enum TfStatus {
  TF_STATUS_OK = 0,
  TF_STATUS_NULL_POINTER = 1,
  TF_STATUS_INVALID_UTF8 = 2,
  TF_STATUS_PARSE = 3,
  TF_STATUS_INVALID_ARGUMENT = 4,
  TF_STATUS_DEGENERATE = 5,
  TF_STATUS_NOT_FOUND = 6,
  TF_STATUS_COMPUTATION = 7,
  TF_STATUS_PANIC = 8,
} TfStatus;

/**
 * Opaque handle to a 3x3x3 tensor over Q.
 */
typedef struct TfTensor TfTensor;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call into this library on the same thread.
 */
const char *tf_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *tf_version(void);

/**
 * Release a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void tf_string_free(char *s);

/**
 * Parse tensor JSON: `t[i][j][k]`, scalars as integers or `"p/q"` strings.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` writable.
 */
enum TfStatus tf_tensor_from_json(const char *json, struct TfTensor **out);

/**
 * Tensor from 27 integers in the order 9i + 3j + k.
 *
 * # Safety
 * `entries` must point to 27 readable values and `out` be writable.
 */
enum TfStatus tf_tensor_from_ints(const int64_t *entries, struct TfTensor **out);

/**
 * Trifocal tensor of a camera triple given as `{"A1": .., "A2": .., "A3": ..}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` writable.
 */
enum TfStatus tf_tensor_from_cameras_json(const char *json, struct TfTensor **out);

/**
 * A named catalog representative such as `"F"`, `"17'"` or `"trifocal-11''"`.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` writable.
 */
enum TfStatus tf_tensor_catalog(const char *name, struct TfTensor **out);

/**
 * Release a tensor handle. Null is ignored.
 *
 * # Safety
 * `t` must come from a `tf_tensor_*` constructor and not have been freed.
 */
void tf_tensor_free(struct TfTensor *t);

/**
 * Tensor JSON of a handle; free the result with `tf_string_free`.
 *
 * # Safety
 * `t` must be a live handle and `out` writable.
 */
enum TfStatus tf_tensor_to_json(const struct TfTensor *t, char **out);

/**
 * Ranks of the three flattenings, written to `out[0..3]`.
 *
 * # Safety
 * `t` must be a live handle and `out` point to 3 writable values.
 */
enum TfStatus tf_tensor_frank(const struct TfTensor *t, uint32_t *out);

/**
 * Generic ranks of the three slice pencils, written to `out[0..3]`.
 *
 * # Safety
 * `t` must be a live handle and `out` point to 3 writable values.
 */
enum TfStatus tf_tensor_prank(const struct TfTensor *t, uint32_t *out);

/**
 * Membership test: P-Rank (3,3,2) (any order if `permutation_tolerant`) and F-Rank (3,3,3).
 *
 * # Safety
 * `t` must be a live handle and `out` writable.
 */
enum TfStatus tf_is_trifocal(const struct TfTensor *t, bool permutation_tolerant, bool *out);

/**
 * The JSON check report (signature, component, verdict and reason).
 *
 * # Safety
 * `t` must be a live handle and `out` writable.
 */
enum TfStatus tf_check_json(const struct TfTensor *t, bool permutation_tolerant, char **out);

/**
 * Number of new minimal generators of the trifocal ideal in `degree`, over GF(`prime`).
 *
 * # Safety
 * `out` must be writable.
 */
enum TfStatus tf_generator_count(uint32_t degree, uint32_t prime, uint64_t seed, uint64_t *out);

/**
 * Dimension of the degree-`degree` part of the quotient by the trifocal ideal, over GF(`prime`).
 *
 * # Safety
 * `out` must be writable.
 */
enum TfStatus tf_hilbert(uint32_t degree, uint32_t prime, uint64_t seed, uint64_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TRIFOCAL_H */

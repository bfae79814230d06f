#ifndef CDLAB_H
#define CDLAB_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CdStatus {
  CD_STATUS_OK = 0,
  CD_STATUS_NULL_POINTER = 1,
  CD_STATUS_INVALID_UTF8 = 2,
  CD_STATUS_PARSE = 3,
  CD_STATUS_JSON = 4,
  CD_STATUS_LEVEL_MISMATCH = 5,
  CD_STATUS_LEVEL_TOO_LARGE = 6,
  CD_STATUS_INVALID_LEVEL = 7,
  CD_STATUS_PRECONDITION = 8,
  CD_STATUS_DIVISION_BY_ZERO = 9,
  /**
   * A construction identity or a verification check failed.
   */
  CD_STATUS_CHECK_FAILED = 10,
  CD_STATUS_UNKNOWN_CHECK = 11,
  CD_STATUS_PANIC = 12,
} CdStatus;

/**
 * Opaque element of some `A_n`.
 */
typedef struct CdElement CdElement;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; valid until the next
 * failing call. Never NULL.
 */
const char *cd_last_error(void);

/**
 * Parse the inline syntax (`"e1 + 1/2 e3 - s2 e7"`, `"(e1, e2)"`).
 * `level < 0` infers the smallest algebra holding every index.
 *
 * # Safety
 * `text` must be a valid C string and `out` a valid pointer.
 */
enum CdStatus cd_element_parse(const char *text, int32_t level, struct CdElement **out);

/**
 * Parse `{"n": .., "coeffs": [..]}`.
 *
 * # Safety
 * `json` must be a valid C string and `out` a valid pointer.
 */
enum CdStatus cd_element_from_json(const char *json, struct CdElement **out);

/**
 * # Safety
 * `e` must be a live handle and `out` a valid pointer.
 */
enum CdStatus cd_element_to_json(const struct CdElement *e, char **out);

/**
 * Basis vector `e_k` of `A_level`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum CdStatus cd_element_basis(uint32_t level, size_t k, struct CdElement **out);

/**
 * # Safety
 * `e` must be a live handle and `out` a valid pointer.
 */
enum CdStatus cd_element_level(const struct CdElement *e, uint32_t *out);

/**
 * # Safety
 * `e` must be NULL or a handle not yet freed.
 */
void cd_element_free(struct CdElement *e);

/**
 * `out = a b`.
 *
 * # Safety
 * `a`, `b` must be live handles and `out` a valid pointer.
 */
enum CdStatus cd_mul(const struct CdElement *a, const struct CdElement *b, struct CdElement **out);

/**
 * # Safety
 * `a` must be a live handle and `out` a valid pointer.
 */
enum CdStatus cd_conj(const struct CdElement *a, struct CdElement **out);

/**
 * `1` in `*out` when the two are equal.
 *
 * # Safety
 * `a`, `b` must be live handles and `out` a valid pointer.
 */
enum CdStatus cd_element_eq(const struct CdElement *a, const struct CdElement *b, int32_t *out);

/**
 * Dimension of the left annihilator.
 *
 * # Safety
 * `a` must be a live handle and `out` a valid pointer.
 */
enum CdStatus cd_ann_dim(const struct CdElement *a, size_t *out);

/**
 * Annihilator report with a canonical basis.
 *
 * # Safety
 * `a` must be a live handle and `out` a valid pointer.
 */
enum CdStatus cd_ann_json(const struct CdElement *a, char **out);

/**
 * The bracket `{a, b}` in the next algebra; `a, b` must lie in `C^⊥`.
 *
 * # Safety
 * `a`, `b` must be live handles and `out` a valid pointer.
 */
enum CdStatus cd_bracket(const struct CdElement *a,
                         const struct CdElement *b,
                         struct CdElement **out);

/**
 * D-locus conditions and annihilator dimensions of `{a, b}`.
 *
 * # Safety
 * `a`, `b` must be live handles and `out` a valid pointer.
 */
enum CdStatus cd_dlocus_json(const struct CdElement *a, const struct CdElement *b, char **out);

/**
 * Run one registered check, or all of them when `id` is `"all"`. The JSON
 * is written even when a check fails, in which case the status is
 * `CheckFailed`.
 *
 * # Safety
 * `id` must be a valid C string and `out` a valid pointer.
 */
enum CdStatus cd_verify_json(const char *id,
                             uint32_t level,
                             size_t trials,
                             uint64_t seed,
                             char **out);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, not yet freed.
 */
void cd_string_free(char *s);

/**
 * Static name of a status code.
 */
const char *cd_status_name(enum CdStatus s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CDLAB_H */

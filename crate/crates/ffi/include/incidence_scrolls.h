#ifndef INCIDENCE_SCROLLS_H
#define INCIDENCE_SCROLLS_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum IsBundleKind {
  IS_BUNDLE_KIND_NONE = 0,
  IS_BUNDLE_KIND_DECOMPOSABLE = 1,
  IS_BUNDLE_KIND_INDECOMPOSABLE = 2,
} IsBundleKind;

typedef enum IsStatus {
  IS_STATUS_OK = 0,
  IS_STATUS_NULL_POINTER = 1,
  IS_STATUS_PARSE = 2,
  IS_STATUS_INVALID = 3,
  IS_STATUS_DOMAIN = 4,
  IS_STATUS_CONSISTENCY = 5,
  IS_STATUS_OVERFLOW = 6,
  IS_STATUS_BUFFER_TOO_SMALL = 7,
  IS_STATUS_PANIC = 8,
} IsStatus;

/**
 * Opaque handle to a base.
 */
typedef struct IsBase IsBase;

typedef struct IsValidation {
  uint64_t condition_count;
  uint64_t required_conditions;
  bool satisfies_is;
  bool no_hyperplanes;
  bool nondegenerate;
  bool all_pass;
} IsValidation;

typedef struct IsInvariants {
  int64_t degree;
  int64_t genus;
  uint32_t ambient;
  int64_t e;
  /**
   * Degree of 𝔟 in the hyperplane class `C_0 + 𝔟f`.
   */
  int64_t m;
  int64_t min_directrix_degree;
  uint32_t min_directrix_space;
  bool decomposable;
  int64_t speciality;
  /**
   * `None` outside genus 0 and 1.
   */
  enum IsBundleKind bundle_kind;
  bool e_trivial;
} IsInvariants;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses `n:d1,d2,...` or a JSON object with `ambient` and `dims`.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a writable pointer.
 */
enum IsStatus is_base_parse(const char *text, struct IsBase **out);

/**
 * # Safety
 * `dims` must point to `len` readable values (or be null with `len == 0`)
 * and `out` must be writable.
 */
enum IsStatus is_base_new(uint32_t ambient, const uint32_t *dims, size_t len, struct IsBase **out);

/**
 * # Safety
 * `b` must be null or a handle not yet freed.
 */
void is_base_free(struct IsBase *b);

/**
 * Ambient dimension, or 0 for a null handle.
 *
 * # Safety
 * `b` must be null or a live handle.
 */
uint32_t is_base_ambient(const struct IsBase *b);

/**
 * Number of base spaces, or 0 for a null handle.
 *
 * # Safety
 * `b` must be null or a live handle.
 */
size_t is_base_len(const struct IsBase *b);

/**
 * Copies the sorted dimensions into `buf`. `out_len` always receives the
 * number of dimensions.
 *
 * # Safety
 * `buf` must have room for `cap` values; `out_len` must be writable.
 */
enum IsStatus is_base_dims(const struct IsBase *b, uint32_t *buf, size_t cap, size_t *out_len);

/**
 * Text form `n:d1,d2,...`.
 *
 * # Safety
 * `b` must be a live handle and `out` writable.
 */
enum IsStatus is_base_to_string(const struct IsBase *b, char **out);

/**
 * # Safety
 * `b` must be a live handle and `out` writable.
 */
enum IsStatus is_validate(const struct IsBase *b, struct IsValidation *out);

/**
 * Reduced base with hyperplanes dropped and degenerate pairs spanned.
 *
 * # Safety
 * `b` must be a live handle and `out` writable.
 */
enum IsStatus is_normalize(const struct IsBase *b, struct IsBase **out);

/**
 * # Safety
 * `b` must be a live handle and `out` writable.
 */
enum IsStatus is_degree(const struct IsBase *b, int64_t *out);

/**
 * Genus by degeneration.
 *
 * # Safety
 * `b` must be a live handle and `out` writable.
 */
enum IsStatus is_genus(const struct IsBase *b, int64_t *out);

/**
 * Scroll invariants. A special scroll (nonzero speciality) is reported in
 * `speciality` rather than as an error.
 *
 * # Safety
 * `b` must be a live handle and `out` writable.
 */
enum IsStatus is_invariants(const struct IsBase *b, struct IsInvariants *out);

/**
 * Intersection number of special classes `σ_{c_1} ⋯ σ_{c_k}` in `G(1,n)`.
 * Values beyond `u64` give [`IsStatus::Overflow`].
 *
 * # Safety
 * `codims` must point to `len` readable values and `out` must be writable.
 */
enum IsStatus is_intersection_number(uint32_t ambient,
                                     const uint32_t *codims,
                                     size_t len,
                                     uint64_t *out);

/**
 * Table of incidence scrolls of genus 0 or 1 up to `P^max_n`, as JSON.
 *
 * # Safety
 * `out` must be writable.
 */
enum IsStatus is_table_json(uint32_t genus, uint32_t max_n, char **out);

/**
 * Number of audit violations up to `P^max_n`.
 *
 * # Safety
 * `out` must be writable.
 */
enum IsStatus is_audit_violations(uint32_t max_n, size_t *out);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void is_string_free(char *s);

/**
 * Message for the last failed call on this thread, or null. Valid until
 * the next call into the library on the same thread.
 */
const char *is_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* INCIDENCE_SCROLLS_H */

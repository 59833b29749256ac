#ifndef CKPIERCE_H
#define CKPIERCE_H

/* Generated by cbindgen from the ckpierce-ffi crate; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every ckpierce FFI call.
 */
typedef enum CkpStatus {
  CKP_OK = 0,
  CKP_ERR_PARSE = 1,
  CKP_ERR_VALIDATION = 2,
  CKP_ERR_INVALID_ARGUMENT = 3,
  CKP_ERR_IO = 4,
  CKP_ERR_NULL_POINTER = 5,
  CKP_ERR_UTF8 = 6,
  CKP_ERR_PANIC = 7,
} CkpStatus;

/**
 * Opaque handle to a convex family.
 */
typedef struct CkpFamily CkpFamily;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a family from its JSON encoding.
 *
 * # Safety
 * `json` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum CkpStatus ckp_family_from_json(const char *json, struct CkpFamily **out);

/**
 * Serializes a family back to JSON. The result must be released with
 * `ckp_string_free`.
 *
 * # Safety
 * `handle` must come from this library and `out` must be a valid pointer.
 */
enum CkpStatus ckp_family_to_json(const struct CkpFamily *handle, char **out);

/**
 * Number of members in the family.
 *
 * # Safety
 * `handle` must come from this library and `out` must be a valid pointer.
 */
enum CkpStatus ckp_family_len(const struct CkpFamily *handle, uintptr_t *out);

/**
 * Builds the circle construction of 3(k-1) segments.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum CkpStatus ckp_generate_construction(uint32_t k, struct CkpFamily **out);

/**
 * Builds the convex-position point pentagon (a C(5)).
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum CkpStatus ckp_generate_pentagon(struct CkpFamily **out);

/**
 * Builds `n` seeded one-vertex members with no three collinear.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum CkpStatus ckp_generate_general_position(uintptr_t n, uint64_t seed, struct CkpFamily **out);

/**
 * Exhaustive C(k) detection. On success `*found` is 1 when a C(k) exists
 * and 0 otherwise; when found, `*order_json` holds the witness order as a
 * JSON array of member indices.
 *
 * # Safety
 * `handle` must come from this library; `found` and `order_json` must be
 * valid pointers.
 */
enum CkpStatus ckp_detect_ck(const struct CkpFamily *handle,
                             uintptr_t k,
                             int32_t *found,
                             char **order_json);

/**
 * Exact minimum piercing within `budget` lines. On success `*found` is 1
 * when a piercing exists; `*solution_json` then holds the lines and the
 * member assignment.
 *
 * # Safety
 * `handle` must come from this library; `found` and `solution_json` must be
 * valid pointers.
 */
enum CkpStatus ckp_min_piercing_lines(const struct CkpFamily *handle,
                                      uintptr_t budget,
                                      int32_t *found,
                                      char **solution_json);

/**
 * Runs the full piercing procedure for a C(k)-free family: numeric search,
 * exact snap, and the Sperner witness phase. `*result_json` always receives
 * a JSON object with status `pierced`, `ck_witness`, or `unresolved`.
 *
 * # Safety
 * `handle` must come from this library and `result_json` must be a valid
 * pointer.
 */
enum CkpStatus ckp_find_piercing_lines(const struct CkpFamily *handle,
                                       uintptr_t k,
                                       double tolerance,
                                       uint64_t seed,
                                       char **result_json);

/**
 * Releases a family handle. Null is a no-op.
 *
 * # Safety
 * `handle` must come from this library and not have been freed before.
 */
void ckp_family_free(struct CkpFamily *handle);

/**
 * Releases a string returned by this library. Null is a no-op.
 *
 * # Safety
 * `s` must come from this library and not have been freed before.
 */
void ckp_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CKPIERCE_H */

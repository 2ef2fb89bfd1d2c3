/* Generated by cbindgen; do not edit. */

#ifndef NEARSEMI_H
#define NEARSEMI_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

#define NS_CLASS_INRS 0

#define NS_CLASS_LUK_NRS 1

#define NS_CLASS_LUK_RS 2

/**
 * Result codes.
 */
typedef enum NsStatus {
  NS_STATUS_OK = 0,
  NS_STATUS_NULL_POINTER = 1,
  NS_STATUS_INVALID_UTF8 = 2,
  NS_STATUS_PARSE = 3,
  NS_STATUS_NOT_ADMITTED = 4,
  NS_STATUS_INVALID_ELEMENT = 5,
  NS_STATUS_TOO_LARGE = 6,
  NS_STATUS_BUFFER_TOO_SMALL = 7,
  NS_STATUS_INVALID_ARGUMENT = 8,
  NS_STATUS_INTERNAL = 9,
} NsStatus;

/**
 * An owned near semiring.
 */
typedef struct NsAlgebra NsAlgebra;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses an algebra document. On success `*out_alg` receives a new handle.
 *
 * # Safety
 * `source` must be a NUL-terminated string and `out_alg` a valid pointer.
 */
enum NsStatus ns_algebra_parse(const char *source, struct NsAlgebra **out_alg);

/**
 * Releases a handle; null is ignored.
 *
 * # Safety
 * `alg` must come from this library and not be used afterwards.
 */
void ns_algebra_free(struct NsAlgebra *alg);

/**
 * # Safety
 * Pointers must be valid.
 */
enum NsStatus ns_algebra_size(const struct NsAlgebra *alg, uintptr_t *out_size);

/**
 * Whether every required axiom of `class` holds.
 *
 * # Safety
 * Pointers must be valid.
 */
enum NsStatus ns_algebra_check(const struct NsAlgebra *alg, uint32_t class_, bool *out_passed);

/**
 * The direct product `a × b` as a new handle.
 *
 * # Safety
 * Pointers must be valid.
 */
enum NsStatus ns_algebra_product(const struct NsAlgebra *a,
                                 const struct NsAlgebra *b,
                                 struct NsAlgebra **out_alg);

/**
 * # Safety
 * Pointers must be valid.
 */
enum NsStatus ns_congruence_count(const struct NsAlgebra *alg, uintptr_t *out_count);

/**
 * Number of ideals; the algebra must be a Łukasiewicz near semiring.
 *
 * # Safety
 * Pointers must be valid.
 */
enum NsStatus ns_ideal_count(const struct NsAlgebra *alg, uintptr_t *out_count);

/**
 * Writes the central elements in increasing order to `buffer`.
 *
 * `*out_len` always receives the number of central elements; when it
 * exceeds `capacity` nothing is written and `BufferTooSmall` is returned.
 *
 * # Safety
 * `buffer` must hold `capacity` elements (it may be null when `capacity` is 0).
 */
enum NsStatus ns_center(const struct NsAlgebra *alg,
                        uintptr_t *buffer,
                        uintptr_t capacity,
                        uintptr_t *out_len);

/**
 * # Safety
 * Pointers must be valid.
 */
enum NsStatus ns_is_central(const struct NsAlgebra *alg,
                            uintptr_t element_index,
                            bool *out_central);

/**
 * Runs a command line (`argv[0]` is the program name) and returns the
 * report text and exit status of the `nearsemi` tool.
 *
 * # Safety
 * `argv` must hold `argc` NUL-terminated strings; out-pointers must be valid.
 */
enum NsStatus ns_report(uintptr_t argc,
                        const char *const *argv,
                        char **out_text,
                        int32_t *out_exit);

/**
 * Releases a string returned by this library; null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void ns_string_free(char *s);

/**
 * The most recent error on this thread, or an empty string. The pointer
 * stays valid until the next call into this library on the same thread.
 */
const char *ns_last_error_message(void);

/**
 * Number of models of `class` with `size` elements up to isomorphism.
 *
 * # Safety
 * `out_count` must be valid.
 */
enum NsStatus ns_enumerate_count(uintptr_t size, uint32_t class_, uintptr_t *out_count);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NEARSEMI_H */

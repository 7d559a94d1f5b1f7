#ifndef FACTO_H
#define FACTO_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum FactoStatus {
  FACTO_STATUS_OK = 0,
  FACTO_STATUS_NULL_POINTER = 1,
  FACTO_STATUS_INVALID_UTF8 = 2,
  // Malformed JSON or an unknown field name.
  FACTO_STATUS_PARSE = 3,
  // The input parsed but is not a valid object, or an operation was undefined on it.
  FACTO_STATUS_ALGEBRA = 4,
  // The two arguments live over different fields or have different `d`, `l`.
  FACTO_STATUS_MISMATCH = 5,
  FACTO_STATUS_PANIC = 6,
} FactoStatus;

// Opaque handle to a chain of monomorphisms.
typedef struct FactoChain FactoChain;

// Opaque handle to a factorization.
typedef struct FactoFactorization FactoFactorization;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread, or null after a success.
// The pointer stays valid until the next `facto_*` call on the same thread.
const char *facto_last_error(void);

// Release a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from a `facto_*_to_json` call and not have been freed.
void facto_string_free(char *s);

// Parse and validate a factorization. `field` is `"q"` or `"fp:<p>"`.
//
// # Safety
// String arguments must be nul-terminated; `out` must be writable.
enum FactoStatus facto_factorization_from_json(const char *field,
                                               const char *json,
                                               struct FactoFactorization **out);

// # Safety
// `x` must be a live handle; `out` must be writable. Free the result with `facto_string_free`.
enum FactoStatus facto_factorization_to_json(const struct FactoFactorization *x, char **out);

// # Safety
// `x` must be null or a handle not yet freed.
void facto_factorization_free(struct FactoFactorization *x);

// Rank `m` and number of maps `l`.
//
// # Safety
// `x` must be a live handle; the output pointers must be writable.
enum FactoStatus facto_factorization_shape(const struct FactoFactorization *x,
                                           size_t *rank,
                                           size_t *l);

// Check the zig-zag identities. Writes -1 when they hold, otherwise the first failing position.
//
// # Safety
// `x` must be a live handle; `position` must be writable.
enum FactoStatus facto_factorization_zigzag(const struct FactoFactorization *x, int64_t *position);

// Rotate `times` steps; negative counts rotate backwards.
//
// # Safety
// `x` must be a live handle; `out` must be writable.
enum FactoStatus facto_rotate(const struct FactoFactorization *x,
                              int64_t times,
                              struct FactoFactorization **out);

// Dimension of the stable hom space between two factorizations.
//
// # Safety
// Both handles must be live; `dim` must be writable.
enum FactoStatus facto_stable_hom_dim(const struct FactoFactorization *x,
                                      const struct FactoFactorization *y,
                                      size_t *dim);

// Parse and validate a chain of monomorphisms.
//
// # Safety
// String arguments must be nul-terminated; `out` must be writable.
enum FactoStatus facto_chain_from_json(const char *field,
                                       const char *json,
                                       struct FactoChain **out);

// # Safety
// `u` must be a live handle; `out` must be writable. Free the result with `facto_string_free`.
enum FactoStatus facto_chain_to_json(const struct FactoChain *u, char **out);

// # Safety
// `u` must be null or a handle not yet freed.
void facto_chain_free(struct FactoChain *u);

// Stable hom dimension between two chains.
//
// # Safety
// Both handles must be live; `dim` must be writable.
enum FactoStatus facto_chain_stable_hom_dim(const struct FactoChain *u,
                                            const struct FactoChain *v,
                                            size_t *dim);

// The cokernel chain of a factorization.
//
// # Safety
// `x` must be a live handle; `out` must be writable.
enum FactoStatus facto_cok(const struct FactoFactorization *x, struct FactoChain **out);

// A factorization whose cokernel chain is `u`.
//
// # Safety
// `u` must be a live handle; `out` must be writable.
enum FactoStatus facto_reconstruct(const struct FactoChain *u, struct FactoFactorization **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FACTO_H */

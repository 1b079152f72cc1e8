#ifndef COLORLIE_H
#define COLORLIE_H

/* Generated by build.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ColorlieMode {
  COLORLIE_MODE_EXACT = 0,
  COLORLIE_MODE_RANDOMIZED = 1,
  COLORLIE_MODE_AUTO = 2,
} ColorlieMode;

typedef enum ColorlieStatus {
  COLORLIE_STATUS_OK = 0,
  COLORLIE_STATUS_NULL_POINTER = 1,
  COLORLIE_STATUS_INVALID_ARGUMENT = 2,
  COLORLIE_STATUS_PARSE = 3,
  /**
   * A size guard or expansion cap was exceeded.
   */
  COLORLIE_STATUS_TOO_LARGE = 4,
  /**
   * A construction or search failed.
   */
  COLORLIE_STATUS_FAILED = 5,
  COLORLIE_STATUS_IO = 6,
  /**
   * A panic was caught at the boundary.
   */
  COLORLIE_STATUS_INTERNAL = 7,
} ColorlieStatus;

/**
 * Opaque algebra handle.
 */
typedef struct ColorlieAlgebra ColorlieAlgebra;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call on this thread.
 */
const char *colorlie_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *colorlie_version(void);

/**
 * Builds an algebra from a name such as `sl2`, `sl2xsl2`, `abelian:3`, `L`,
 * `L:sl3` or a spec file path. `cocycle` is `canonical`, `literal` or
 * `trivial` and only matters for `L` names.
 *
 * # Safety
 * `name` and `cocycle` must be NUL-terminated strings; `out` must be valid
 * for writes.
 */
enum ColorlieStatus colorlie_algebra_from_name(const char *name,
                                               const char *cocycle,
                                               struct ColorlieAlgebra **out);

/**
 * Builds an algebra from the JSON spec format.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be valid for writes.
 */
enum ColorlieStatus colorlie_algebra_from_json(const char *json, struct ColorlieAlgebra **out);

/**
 * Releases a handle; null is ignored.
 *
 * # Safety
 * `a` must come from this library and must not be used afterwards.
 */
void colorlie_algebra_free(struct ColorlieAlgebra *a);

/**
 * # Safety
 * `a` must be a live handle and `out` valid for writes.
 */
enum ColorlieStatus colorlie_algebra_dim(const struct ColorlieAlgebra *a, uintptr_t *out);

/**
 * Counts color-axiom violations over all basis pairs and triples with the
 * canonical bicharacter (`canonical_beta`) or the trivial one.
 *
 * # Safety
 * `a` must be a live handle and `violations` valid for writes.
 */
enum ColorlieStatus colorlie_check_axioms(const struct ColorlieAlgebra *a,
                                          bool canonical_beta,
                                          uintptr_t *violations);

/**
 * Determinant of the Killing matrix as an exact rational string.
 *
 * # Safety
 * `a` must be a live handle and `out` valid for writes. Free the result
 * with `colorlie_string_free`.
 */
enum ColorlieStatus colorlie_killing_determinant(const struct ColorlieAlgebra *a, char **out);

/**
 * # Safety
 * `s` must come from this library or be null.
 */
void colorlie_string_free(char *s);

/**
 * `c_n`, with left-normed rows when `lie`. `out_exact` (optional) reports
 * whether the value is exact or a lower bound.
 *
 * # Safety
 * `a` must be a live handle; `out_value` valid for writes; `out_exact`
 * null or valid for writes.
 */
enum ColorlieStatus colorlie_codim(const struct ColorlieAlgebra *a,
                                   uintptr_t n,
                                   bool lie,
                                   enum ColorlieMode mode,
                                   uint64_t seed,
                                   uint64_t *out_value,
                                   bool *out_exact);

/**
 * Graded codimension `c_n^gr`.
 *
 * # Safety
 * As for `colorlie_codim`.
 */
enum ColorlieStatus colorlie_graded_codim(const struct ColorlieAlgebra *a,
                                          uintptr_t n,
                                          enum ColorlieMode mode,
                                          uint64_t seed,
                                          uint64_t *out_value,
                                          bool *out_exact);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* COLORLIE_H */

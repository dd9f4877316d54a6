#ifndef REGCORE_H
#define REGCORE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum RegcoreStatus {
  REGCORE_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  REGCORE_STATUS_NULL_ARGUMENT = 1,
  /**
   * Malformed text: JSON, polynomials, field names, non-UTF-8 strings.
   */
  REGCORE_STATUS_PARSE = 2,
  /**
   * Well-formed but invalid input (unknown family, mismatched fields, ...).
   */
  REGCORE_STATUS_INVALID_INPUT = 3,
  /**
   * The ideal or module is not of finite colength.
   */
  REGCORE_STATUS_NOT_M_PRIMARY = 4,
  /**
   * No certificate was found below the truncation ceiling.
   */
  REGCORE_STATUS_TRUNCATION_CEILING = 5,
  /**
   * Generic sampling failed for every seed tried.
   */
  REGCORE_STATUS_RETRY_EXHAUSTED = 6,
  /**
   * Any other mathematical obstruction or failed cross-check.
   */
  REGCORE_STATUS_MATH = 7,
  /**
   * An internal panic was caught at the boundary.
   */
  REGCORE_STATUS_PANIC = 8,
} RegcoreStatus;

/**
 * An m-primary ideal of k[x,y] localized at (x,y).
 */
typedef struct RegcoreIdeal RegcoreIdeal;

/**
 * A finite-colength submodule of a free module of finite rank.
 */
typedef struct RegcoreModule RegcoreModule;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer is
 * valid until the next failing call on the same thread.
 */
const char *regcore_last_error_message(void);

/**
 * Library version as a static nul-terminated string.
 */
const char *regcore_version(void);

/**
 * Sets the largest truncation order tried when certifying finite colength
 * (process-wide). Values below 2 are rejected.
 */
enum RegcoreStatus regcore_set_truncation_ceiling(uint32_t order);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void regcore_string_free(char *s);

/**
 * Builds an ideal from `count` polynomial strings over `field` ("Q" or
 * "F<p>").
 *
 * # Safety
 * `field` and each of `gens[0..count]` must be valid C strings; `out` must
 * be writable.
 */
enum RegcoreStatus regcore_ideal_new(const char *field,
                                     const char *const *gens,
                                     size_t count,
                                     struct RegcoreIdeal **out);

/**
 * Parses the JSON ideal format (`{"field", "gens", ...}`).
 *
 * # Safety
 * `json` must be a valid C string; `out` must be writable.
 */
enum RegcoreStatus regcore_ideal_from_json(const char *json, struct RegcoreIdeal **out);

/**
 * Serializes an ideal to the JSON format read by `regcore_ideal_from_json`.
 *
 * # Safety
 * `ideal` must be a live handle; `out` must be writable.
 */
enum RegcoreStatus regcore_ideal_to_json(const struct RegcoreIdeal *ideal, char **out);

/**
 * Destroys an ideal handle. Null is ignored.
 *
 * # Safety
 * `ideal` must come from this library and not have been freed.
 */
void regcore_ideal_free(struct RegcoreIdeal *ideal);

/**
 * `ℓ(R/I)`.
 *
 * # Safety
 * `ideal` must be a live handle; `out` must be writable.
 */
enum RegcoreStatus regcore_ideal_colength(const struct RegcoreIdeal *ideal, uint64_t *out);

/**
 * Whether `a` and `b` are the same ideal.
 *
 * # Safety
 * Both handles must be live; `out` must be writable.
 */
enum RegcoreStatus regcore_ideal_equals(const struct RegcoreIdeal *a,
                                        const struct RegcoreIdeal *b,
                                        bool *out);

/**
 * Integral closure. Exact for monomial ideals; otherwise the candidate
 * search result, which may be a lower bound (`exact` is set accordingly).
 *
 * # Safety
 * `ideal` must be a live handle; `out` and `exact` must be writable
 * (`exact` may be null).
 */
enum RegcoreStatus regcore_ideal_closure(const struct RegcoreIdeal *ideal,
                                         uint64_t seed,
                                         struct RegcoreIdeal **out,
                                         bool *exact);

/**
 * `adj(I) = (J : Ī)` for a seeded minimal reduction `J`.
 *
 * # Safety
 * `ideal` must be a live handle; `out` must be writable.
 */
enum RegcoreStatus regcore_ideal_adjoint(const struct RegcoreIdeal *ideal,
                                         uint64_t seed,
                                         struct RegcoreIdeal **out);

/**
 * Hilbert–Samuel multiplicity; both methods are run and must agree.
 *
 * # Safety
 * `ideal` must be a live handle; `out` must be writable.
 */
enum RegcoreStatus regcore_ideal_multiplicity(const struct RegcoreIdeal *ideal,
                                              uint64_t seed,
                                              uint64_t *out);

/**
 * The ideal of `k x k` minors of a presentation matrix given as JSON
 * (`{"field", "presentation": rows}`).
 *
 * # Safety
 * `json` must be a valid C string; `out` must be writable.
 */
enum RegcoreStatus regcore_fitting_from_json(const char *json,
                                             int64_t k,
                                             struct RegcoreIdeal **out);

/**
 * Parses the JSON module format (`{"field", "rank", "generators", ...}`).
 *
 * # Safety
 * `json` must be a valid C string; `out` must be writable.
 */
enum RegcoreStatus regcore_module_from_json(const char *json, struct RegcoreModule **out);

/**
 * A rank-one module from an ideal.
 *
 * # Safety
 * `ideal` must be a live handle; `out` must be writable.
 */
enum RegcoreStatus regcore_module_from_ideal(const struct RegcoreIdeal *ideal,
                                             struct RegcoreModule **out);

/**
 * # Safety
 * `module` must be a live handle; `out` must be writable.
 */
enum RegcoreStatus regcore_module_to_json(const struct RegcoreModule *module, char **out);

/**
 * Destroys a module handle. Null is ignored.
 *
 * # Safety
 * `module` must come from this library and not have been freed.
 */
void regcore_module_free(struct RegcoreModule *module);

/**
 * Rank and `ℓ(F/M)`; either out-pointer may be null.
 *
 * # Safety
 * `module` must be a live handle.
 */
enum RegcoreStatus regcore_module_info(const struct RegcoreModule *module,
                                       size_t *rank,
                                       uint64_t *colength);

/**
 * `core(M) = adj(I(M)) M`.
 *
 * # Safety
 * `module` must be a live handle; `out` must be writable.
 */
enum RegcoreStatus regcore_module_core(const struct RegcoreModule *module,
                                       uint64_t seed,
                                       struct RegcoreModule **out);

/**
 * Buchsbaum–Rim multiplicity `e(F/M)`.
 *
 * # Safety
 * `module` must be a live handle; `out` must be writable.
 */
enum RegcoreStatus regcore_module_buchsbaum_rim(const struct RegcoreModule *module, uint64_t *out);

/**
 * Runs a verification campaign and returns its JSON report. `all_passed`
 * (may be null) tells whether every check passed.
 *
 * # Safety
 * `family` and `field` must be valid C strings; `out` must be writable.
 */
enum RegcoreStatus regcore_verify(const char *family,
                                  size_t count,
                                  uint64_t seed,
                                  const char *field,
                                  char **out,
                                  bool *all_passed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* REGCORE_H */

#ifndef CARTIERLAB_H
#define CARTIERLAB_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Status codes returned by every fallible entry point.
 */
typedef enum ClStatus {
  CL_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  CL_STATUS_NULL_ARGUMENT = 1,
  /**
   * Malformed description, polynomial or prime.
   */
  CL_STATUS_INPUT = 2,
  /**
   * The Groebner pair budget was exhausted.
   */
  CL_STATUS_RESOURCE_LIMIT = 3,
  /**
   * The analysis itself failed.
   */
  CL_STATUS_ANALYSIS = 4,
  /**
   * A string argument was not valid UTF-8.
   */
  CL_STATUS_INVALID_UTF8 = 5,
  /**
   * The rank is not determined by the available data.
   */
  CL_STATUS_UNKNOWN = 6,
  /**
   * A Rust panic was caught at the boundary.
   */
  CL_STATUS_PANIC = 7,
} ClStatus;

/**
 * An `A ⊂ B` extension built from a description file.
 */
typedef struct ClExtension ClExtension;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *cl_version(void);

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next call on the same thread.
 */
const char *cl_last_error(void);

/**
 * Frees a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void cl_string_free(char *s);

/**
 * Builds an extension from TOML description text. `pair_budget` 0 selects
 * the default budget.
 *
 * # Safety
 * `toml` must be a NUL-terminated string; `out` must be writable.
 */
enum ClStatus cl_extension_new(const char *toml, size_t pair_budget, struct ClExtension **out);

/**
 * Releases an extension handle. Null is ignored.
 *
 * # Safety
 * `h` must come from `cl_extension_new` and not have been freed.
 */
void cl_extension_free(struct ClExtension *h);

/**
 * Rank of LI(A, B) through the automatic route choice. Returns
 * `ClStatus::Unknown` when no route determines it.
 *
 * # Safety
 * `h` must be a live handle; `rank` and `certified` must be writable.
 */
enum ClStatus cl_extension_li_rank(const struct ClExtension *h, uint64_t *rank, bool *certified);

/**
 * Fiber component count and stalk rank at a maximal ideal given as
 * comma-separated generators; an empty string selects the generic point.
 * `stalk` receives `UINT64_MAX` when the stalk rank is not determined.
 *
 * # Safety
 * `h` must be a live handle; `prime` a NUL-terminated string; the outputs
 * writable.
 */
enum ClStatus cl_extension_stalk(const struct ClExtension *h,
                                 const char *prime,
                                 uint64_t *components,
                                 uint64_t *stalk);

/**
 * Tests whether a Laurent polynomial in `var` over the base described by
 * `base_toml` is a unit. When it is and `exponents` is non-null, writes up
 * to `cap` exponents (one per primitive idempotent) and their count.
 *
 * # Safety
 * String arguments must be NUL-terminated; `is_unit` writable;
 * `exponents` null or valid for `cap` writes; `count` null or writable.
 */
enum ClStatus cl_laurent_unit(const char *base_toml,
                              const char *var,
                              const char *element,
                              bool *is_unit,
                              int64_t *exponents,
                              size_t cap,
                              size_t *count);

/**
 * Runs a command line (without the program name) and returns the JSON
 * report in `report`, to be freed with `cl_string_free`. The return value
 * is the command's exit code, or -1 when the arguments cannot be read.
 *
 * # Safety
 * `argv` must hold `argc` NUL-terminated strings; `report` must be writable.
 */
int32_t cl_run(size_t argc, const char *const *argv, char **report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CARTIERLAB_H */

/* Generated by cbindgen from crates/ffi/src/lib.rs. */

#ifndef BRIESKORN_H
#define BRIESKORN_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every call that can fail.
 */
typedef enum BrieskornStatus {
  BRIESKORN_OK = 0,
  /**
   * A required pointer argument was NULL.
   */
  BRIESKORN_NULL_ARGUMENT = 1,
  /**
   * Bad exponents, an unknown command, or text that is not UTF-8.
   */
  BRIESKORN_INVALID_ARGUMENT = 2,
  /**
   * The input is valid but the invariant is undefined or out of range.
   */
  BRIESKORN_DOMAIN_ERROR = 3,
  /**
   * An internal consistency check failed.
   */
  BRIESKORN_INTERNAL_ERROR = 4,
  /**
   * The library panicked; the handle is still usable.
   */
  BRIESKORN_PANIC = 5,
} BrieskornStatus;

/**
 * Opaque exponent list.
 */
typedef struct BrieskornExponents BrieskornExponents;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds a handle from `len` exponents.
 *
 * # Safety
 * `exps` must point to `len` readable `uint64_t` values and `out` must be a
 * valid place to store the handle.
 */
enum BrieskornStatus brieskorn_exponents_new(const uint64_t *exps,
                                             size_t len,
                                             struct BrieskornExponents **out);

/**
 * Releases a handle. NULL is ignored.
 *
 * # Safety
 * `handle` must come from [`brieskorn_exponents_new`] and not be freed twice.
 */
void brieskorn_exponents_free(struct BrieskornExponents *handle);

/**
 * Number of exponents in the list, or 0 for NULL.
 *
 * # Safety
 * `handle` must be NULL or a live handle.
 */
size_t brieskorn_exponents_len(const struct BrieskornExponents *handle);

/**
 * Milnor number as a decimal string.
 *
 * # Safety
 * `handle` must be a live handle and `out` a valid place to store a string.
 */
enum BrieskornStatus brieskorn_milnor_number(const struct BrieskornExponents *handle, char **out);

/**
 * Runs one of the per-list commands (`homology`, `equivariant`,
 * `alexander`, `sphere`, `classical`, `recognize`, `mec`, `ss`) and stores
 * its JSON document in `out`.
 *
 * # Safety
 * `handle` must be a live handle, `command` a NUL-terminated string and
 * `out` a valid place to store a string.
 */
enum BrieskornStatus brieskorn_query_json(const struct BrieskornExponents *handle,
                                          const char *command,
                                          char **out);

/**
 * Runs the command line given as `argc` strings (without the program
 * name), returning its standard output in `out`. A trailing `--json` is
 * not added.
 *
 * # Safety
 * `argv` must point to `argc` NUL-terminated strings and `out` must be a
 * valid place to store a string.
 */
enum BrieskornStatus brieskorn_run(size_t argc, const char *const *argv, char **out);

/**
 * Frees a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void brieskorn_string_free(char *s);

/**
 * Message for the most recent failure on this thread, or NULL. The pointer
 * stays valid until the next call into the library on the same thread.
 */
const char *brieskorn_last_error(void);

/**
 * Schema version of the JSON documents.
 */
const char *brieskorn_schema_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BRIESKORN_H */

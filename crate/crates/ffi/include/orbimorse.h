#ifndef ORBIMORSE_H
#define ORBIMORSE_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum OrbimorseConvention {
  ORBIMORSE_CONVENTION_PLUS = 0,
  ORBIMORSE_CONVENTION_MINUS = 1,
} OrbimorseConvention;

typedef enum OrbimorseFormat {
  ORBIMORSE_FORMAT_TEXT = 0,
  ORBIMORSE_FORMAT_CSV = 1,
} OrbimorseFormat;

/**
 * Instance kinds as returned by [`orbimorse_instance_kind`].
 */
typedef enum OrbimorseKind {
  ORBIMORSE_KIND_GLOBAL_QUOTIENT = 0,
  ORBIMORSE_KIND_INTRINSIC = 1,
  ORBIMORSE_KIND_SIMPLICIAL = 2,
  ORBIMORSE_KIND_COMPARISON = 3,
} OrbimorseKind;

/**
 * Result codes of every fallible call.
 */
typedef enum OrbimorseStatus {
  ORBIMORSE_STATUS_OK = 0,
  /**
   * The input breaks a law it must satisfy.
   */
  ORBIMORSE_STATUS_VALIDATION_FAILURE = 2,
  /**
   * Two computations that must agree did not.
   */
  ORBIMORSE_STATUS_MISMATCH = 3,
  /**
   * Unreadable file, malformed JSON or a dangling label.
   */
  ORBIMORSE_STATUS_INPUT_ERROR = 4,
  ORBIMORSE_STATUS_NULL_ARGUMENT = 5,
  ORBIMORSE_STATUS_INVALID_UTF8 = 6,
  ORBIMORSE_STATUS_INVALID_ARGUMENT = 7,
  /**
   * The output buffer is too short; the needed length is still written.
   */
  ORBIMORSE_STATUS_BUFFER_TOO_SMALL = 8,
  ORBIMORSE_STATUS_PANIC = 9,
} OrbimorseStatus;

/**
 * A parsed instance file.
 */
typedef struct OrbimorseInstance OrbimorseInstance;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses an instance from a JSON string.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum OrbimorseStatus orbimorse_instance_from_json(const char *json, struct OrbimorseInstance **out);

/**
 * Loads an instance from a file.
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` a valid pointer.
 */
enum OrbimorseStatus orbimorse_instance_load(const char *path, struct OrbimorseInstance **out);

/**
 * Releases an instance. Null is ignored.
 *
 * # Safety
 * `instance` must come from this library and not be used afterwards.
 */
void orbimorse_instance_free(struct OrbimorseInstance *instance);

/**
 * Writes the instance kind to `out`.
 *
 * # Safety
 * `instance` must be a live handle and `out` a valid pointer.
 */
enum OrbimorseStatus orbimorse_instance_kind(const struct OrbimorseInstance *instance,
                                             enum OrbimorseKind *out);

/**
 * Betti numbers of the instance: the orbifold Morse homology for Morse
 * data, the quotient homology for triangulations.
 *
 * `convention_code` is an [`OrbimorseConvention`] value; it only matters
 * for Morse data.
 *
 * Writes at most `capacity` entries to `buffer` and the full length to
 * `len`; a short buffer gives `BufferTooSmall` with `len` still set.
 *
 * # Safety
 * `instance` must be a live handle, `buffer` valid for `capacity` writes
 * (or null with capacity 0) and `len` a valid pointer.
 */
enum OrbimorseStatus orbimorse_betti(const struct OrbimorseInstance *instance,
                                     int32_t convention_code,
                                     size_t *buffer,
                                     size_t capacity,
                                     size_t *len);

/**
 * Runs `validate`, `homology`, `derive` or `compare` and returns the
 * report status. `format` is an [`OrbimorseFormat`] value. When `out` is not null the rendered report is stored
 * there and must be released with [`orbimorse_string_free`].
 *
 * # Safety
 * `instance` must be a live handle, `command` a NUL-terminated string and
 * `out` null or a valid pointer.
 */
enum OrbimorseStatus orbimorse_report(const struct OrbimorseInstance *instance,
                                      const char *command,
                                      int32_t format,
                                      char **out);

/**
 * Serializes the instance back to JSON.
 *
 * # Safety
 * `instance` must be a live handle and `out` a valid pointer.
 */
enum OrbimorseStatus orbimorse_instance_to_json(const struct OrbimorseInstance *instance,
                                                char **out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void orbimorse_string_free(char *s);

/**
 * The message of the last failed call on this thread, or null. The pointer
 * stays valid until the next call into the library on this thread.
 */
const char *orbimorse_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ORBIMORSE_H */

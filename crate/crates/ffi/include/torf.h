#ifndef TORF_H
#define TORF_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TorfStatus {
  TORF_STATUS_OK = 0,
  TORF_STATUS_NULL_ARGUMENT = 1,
  TORF_STATUS_INVALID_UTF8 = 2,
  TORF_STATUS_PARSE_ERROR = 3,
  TORF_STATUS_VALIDATION_ERROR = 4,
  TORF_STATUS_POSTCONDITION_ERROR = 5,
  TORF_STATUS_UNKNOWN_FIXTURE = 6,
  TORF_STATUS_BUFFER_TOO_SMALL = 7,
  TORF_STATUS_PANIC = 8,
} TorfStatus;

/**
 * A parsed and validated model together with its source text.
 */
typedef struct TorfModel TorfModel;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message of the last failure on this thread (empty if none). The
 * pointer stays valid until the next failing call on the same thread.
 */
const char *torf_last_error(void);

/**
 * Parses and validates a model file.
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` a valid pointer.
 */
enum TorfStatus torf_model_from_str(const char *text, struct TorfModel **out);

/**
 * Builds the model of a built-in fixture.
 *
 * # Safety
 * `name` must be a nul-terminated string and `out` a valid pointer.
 */
enum TorfStatus torf_model_from_fixture(const char *name, struct TorfModel **out);

/**
 * # Safety
 * `model` must come from this library and not have been freed; null is
 * ignored.
 */
void torf_model_free(struct TorfModel *model);

/**
 * Ambient lattice rank of the model, or 0 for a null handle.
 *
 * # Safety
 * `model` must be null or a live handle.
 */
size_t torf_model_ambient_rank(const struct TorfModel *model);

/**
 * Number of cones in the model's fan, or 0 for a null handle.
 *
 * # Safety
 * `model` must be null or a live handle.
 */
size_t torf_model_cone_count(const struct TorfModel *model);

/**
 * Runs a command-line command on the model and returns its report.
 * `args` holds the command and its flags separated by spaces, for example
 * `"classify --char 2 --format machine"`. The report is written to `out`
 * whenever the command ran, even if it failed, and set to null otherwise;
 * the status reflects the command's exit code.
 *
 * # Safety
 * `model` must be a live handle, `args` a nul-terminated string and `out`
 * a valid pointer.
 */
enum TorfStatus torf_report(const struct TorfModel *model, const char *args, char **out);

/**
 * Betti numbers `h^0, …, h^n` of the model (or of the named pair when
 * `pair` is non-null). `box_radius < 0` selects the degree-zero formula,
 * otherwise the sum over `[-box_radius, box_radius]^n`. Writes at most
 * `capacity` values to `dims` and the full count to `len`; fails with
 * `BufferTooSmall` if they do not fit.
 *
 * # Safety
 * `model` must be a live handle, `pair` null or a nul-terminated string,
 * `dims` valid for `capacity` writes and `len` a valid pointer.
 */
enum TorfStatus torf_betti(const struct TorfModel *model,
                           const char *pair,
                           int64_t box_radius,
                           size_t *dims,
                           size_t capacity,
                           size_t *len);

/**
 * The model file of a built-in fixture.
 *
 * # Safety
 * `name` must be a nul-terminated string and `out` a valid pointer.
 */
enum TorfStatus torf_fixture_text(const char *name, char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library, freed once.
 */
void torf_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TORF_H */

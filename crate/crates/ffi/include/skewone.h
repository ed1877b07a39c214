#ifndef SKEWONE_H
#define SKEWONE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Result of every fallible call. The first four values match the
 command-line exit codes.
 */
typedef enum SdaStatus {
  SDA_STATUS_OK = 0,
  /*
   A verification ran and at least one check failed.
   */
  SDA_STATUS_CHECK_FAILED = 1,
  /*
   Malformed JSON or a document that does not fit its schema.
   */
  SDA_STATUS_SCHEMA = 2,
  /*
   Well-formed input refused by a precondition.
   */
  SDA_STATUS_PRECONDITION = 3,
  SDA_STATUS_NULL_POINTER = 4,
  /*
   An input string is not valid UTF-8.
   */
  SDA_STATUS_UTF8 = 5,
  /*
   An internal panic was caught at the boundary.
   */
  SDA_STATUS_PANIC = 6,
} SdaStatus;

/*
 An algebra given by structure constants over Q or F_p. Opaque.
 */
typedef struct SdaAlgebra SdaAlgebra;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Library version as a static string; never freed.
 */
const char *sda_version(void);

/*
 Message for the last failed call on this thread, or NULL. Valid until
 the next call into the library on the same thread.
 */
const char *sda_last_error(void);

/*
 Frees a string returned by this library. NULL is ignored.

 # Safety
 `s` must come from this library and not have been freed.
 */
void sda_string_free(char *s);

/*
 Runs a job document, the same JSON the command-line runner accepts, and
 stores the report in `*report`. The report is written for every status
 that comes from the job itself (0 to 3), including failures.

 # Safety
 `job` must be a NUL-terminated string; `report` must be writable.
 */
enum SdaStatus sda_run_job(const char *job, char **report);

/*
 Builds an algebra from a field (`"Q"` or `{"prime": p}`) and an algebra
 document in any presentation.

 # Safety
 Both strings must be NUL-terminated; `out` must be writable.
 */
enum SdaStatus sda_algebra_new(const char *field, const char *algebra, struct SdaAlgebra **out);

/*
 Releases a handle. NULL is ignored.

 # Safety
 `h` must come from [`sda_algebra_new`] and not have been freed.
 */
void sda_algebra_free(struct SdaAlgebra *h);

/*
 Dimension over the base field; 0 for NULL.

 # Safety
 `h` must be NULL or a live handle.
 */
uintptr_t sda_algebra_dim(const struct SdaAlgebra *h);

/*
 `*out = xy`, with elements as JSON coordinate arrays.

 # Safety
 `h` must be a live handle, the strings NUL-terminated, `out` writable.
 */
enum SdaStatus sda_algebra_mul(const struct SdaAlgebra *h,
                               const char *x,
                               const char *y,
                               char **out);

/*
 `*out = x̄`.

 # Safety
 As for [`sda_algebra_mul`].
 */
enum SdaStatus sda_algebra_conj(const struct SdaAlgebra *h, const char *x, char **out);

/*
 Structure constants as a generic algebra document.

 # Safety
 `h` must be a live handle and `out` writable.
 */
enum SdaStatus sda_algebra_to_json(const struct SdaAlgebra *h, char **out);

/*
 Checks the structurable identities with the given seed and sample count
 (0 keeps the default) and stores the report. Returns
 `SDA_STATUS_CHECK_FAILED` when a check fails; the report is still written.

 # Safety
 `h` must be a live handle and `report` writable.
 */
enum SdaStatus sda_algebra_verify(const struct SdaAlgebra *h,
                                  uint64_t seed,
                                  uintptr_t samples,
                                  char **report);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* SKEWONE_H */

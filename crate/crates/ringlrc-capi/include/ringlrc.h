/* C interface for the ringlrc locally recoverable code library. */

#ifndef RINGLRC_H
#define RINGLRC_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of a C interface call.
 */
typedef enum LrcStatus {
  LRC_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  LRC_STATUS_NULL_POINTER = 1,
  /**
   * The input was not valid UTF-8 or not a well-formed document.
   */
  LRC_STATUS_PARSE = 2,
  /**
   * Parameters or data failed the library's validation.
   */
  LRC_STATUS_DOMAIN = 3,
  /**
   * An erasure pattern exceeded a block's repair tolerance.
   */
  LRC_STATUS_UNRECOVERABLE_PATTERN = 4,
  /**
   * A caller-supplied buffer has the wrong length.
   */
  LRC_STATUS_BUFFER_SIZE = 5,
  /**
   * An exhaustive search would exceed the given cap.
   */
  LRC_STATUS_TOO_LARGE = 6,
  /**
   * The library panicked; treat the handle as poisoned.
   */
  LRC_STATUS_PANIC = 7,
} LrcStatus;

/**
 * Opaque handle to a validated code specification.
 */
typedef struct LrcCode LrcCode;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parse a JSON code specification into a new handle. The document is
 * fully re-validated; `*out` is set only on success and must be released
 * with `lrc_code_free`.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum LrcStatus lrc_code_from_json(const char *text, struct LrcCode **out);

/**
 * Release a handle returned by `lrc_code_from_json`. A null pointer is a
 * no-op.
 *
 * # Safety
 * `code` must be a pointer from `lrc_code_from_json`, not yet freed.
 */
void lrc_code_free(struct LrcCode *code);

/**
 * Code length in symbols; 0 for a null handle.
 *
 * # Safety
 * `code` must be null or a live handle.
 */
uintptr_t lrc_code_n(const struct LrcCode *code);

/**
 * Message length in symbols; 0 for a null handle.
 *
 * # Safety
 * `code` must be null or a live handle.
 */
uintptr_t lrc_code_k(const struct LrcCode *code);

/**
 * Number of `uint64_t` coefficients per symbol; 0 for a null handle.
 *
 * # Safety
 * `code` must be null or a live handle.
 */
uintptr_t lrc_code_symbol_width(const struct LrcCode *code);

/**
 * Encode a message of `lrc_code_k()` symbols into `lrc_code_n()` symbols.
 * Buffer lengths are in `uint64_t` units: `message_len` must equal
 * `K * width` and `word_len` must equal `n * width`.
 *
 * # Safety
 * `code` must be a live handle; the buffers must match the stated lengths.
 */
enum LrcStatus lrc_encode(const struct LrcCode *code,
                          const uint64_t *message,
                          uintptr_t message_len,
                          uint64_t *word_out,
                          uintptr_t word_len);

/**
 * Repair every erased symbol of a received word in place. `word` holds
 * `n * width` coefficients; entries flagged in `erased` (one byte per
 * symbol, nonzero = erased) are ignored on input and overwritten with the
 * repaired values on success.
 *
 * # Safety
 * `code` must be a live handle; `word` must hold `word_len` coefficients
 * and `erased` one flag per symbol (`erased_len == n`).
 */
enum LrcStatus lrc_recover(const struct LrcCode *code,
                           uint64_t *word,
                           uintptr_t word_len,
                           const uint8_t *erased,
                           uintptr_t erased_len);

/**
 * Run the exhaustive analysis and return its JSON report as a freshly
 * allocated string. Release the string with `lrc_string_free`.
 *
 * # Safety
 * `code` must be a live handle and `out` a valid pointer.
 */
enum LrcStatus lrc_analyze_json(const struct LrcCode *code, uint64_t cap, char **out);

/**
 * Release a string returned by this library. A null pointer is a no-op.
 *
 * # Safety
 * `s` must be a string returned by this library, not yet freed.
 */
void lrc_string_free(char *s);

/**
 * Static name for a status code; never null.
 */
const char *lrc_status_name(enum LrcStatus status);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* RINGLRC_H */

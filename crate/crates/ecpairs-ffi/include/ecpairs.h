#ifndef ECPAIRS_H
#define ECPAIRS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible entry point.
 */
typedef enum {
  ECP_STATUS_OK = 0,
  ECP_STATUS_NULL_ARGUMENT = 1,
  ECP_STATUS_INVALID_UTF8 = 2,
  ECP_STATUS_PARSE_ERROR = 3,
  ECP_STATUS_CHECK_FAILED = 4,
  ECP_STATUS_PRECONDITION_FAILED = 5,
  ECP_STATUS_TOO_LARGE = 6,
  ECP_STATUS_OTHER_ERROR = 7,
} EcpStatus;

/**
 * Classification of a code by its distance and its dual's distance.
 */
typedef enum {
  ECP_CODE_CLASS_MDS = 0,
  ECP_CODE_CLASS_NMDS = 1,
  ECP_CODE_CLASS_AMDS = 2,
  ECP_CODE_CLASS_OTHER = 3,
} EcpCodeClass;

/**
 * What a decode attempt produced; the call itself can still succeed when
 * the word is uncorrectable.
 */
typedef enum {
  ECP_DECODE_OUTCOME_DECODED = 0,
  ECP_DECODE_OUTCOME_NO_LOCATOR = 1,
  ECP_DECODE_OUTCOME_ERASURE_UNSOLVABLE = 2,
  ECP_DECODE_OUTCOME_WEIGHT_EXCEEDED = 3,
} EcpDecodeOutcome;

/**
 * A linear code handle.
 */
typedef struct EcpCode EcpCode;

/**
 * A decoder bound to one verified pair.
 */
typedef struct EcpPairDecoder EcpPairDecoder;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Text of the most recent failure on this thread, or null after a success.
 * The pointer stays valid until the next call into this library from the
 * same thread; do not free it.
 */
const char *ecp_last_error_message(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must be null or a pointer obtained from this library's string
 * outputs, not yet freed.
 */
void ecp_string_free(char *s);

/**
 * Parses a code from text: either a "p m n k" generator file or a
 * "grs"/"tgrs" construction stanza. On success stores a new handle in
 * `out`; release it with ecp_code_free.
 *
 * # Safety
 * `text` must be null or a NUL-terminated string; `out` must be a valid
 * pointer to pointer.
 */
EcpStatus ecp_code_read(const char *text, EcpCode **out);

/**
 * Releases a code handle. Null is a no-op.
 *
 * # Safety
 * `code` must be null or an unfreed handle from this library.
 */
void ecp_code_free(EcpCode *code);

/**
 * Writes the code in the generator file format; release the string with
 * ecp_string_free.
 *
 * # Safety
 * `code` must be null or a live handle; `out` must be a valid pointer.
 */
EcpStatus ecp_code_write(const EcpCode *code, char **out);

/**
 * Code length n, or 0 for a null handle.
 *
 * # Safety
 * `code` must be null or a live handle.
 */
uintptr_t ecp_code_length(const EcpCode *code);

/**
 * Code dimension k, or 0 for a null handle.
 *
 * # Safety
 * `code` must be null or a live handle.
 */
uintptr_t ecp_code_dimension(const EcpCode *code);

/**
 * Exact minimum distance.
 *
 * # Safety
 * `code` must be null or a live handle; `out_d` must be a valid pointer.
 */
EcpStatus ecp_code_min_distance(const EcpCode *code, uintptr_t *out_d);

/**
 * Classifies the code and reports its distance and its dual's distance.
 *
 * # Safety
 * `code` must be null or a live handle; the out pointers must be valid.
 */
EcpStatus ecp_code_classify(const EcpCode *code,
                            EcpCodeClass *out_class,
                            uintptr_t *out_d,
                            uintptr_t *out_dual_d);

/**
 * Stores the dual code as a new handle in `out`.
 *
 * # Safety
 * `code` must be null or a live handle; `out` must be a valid pointer.
 */
EcpStatus ecp_code_dual(const EcpCode *code, EcpCode **out);

/**
 * Checks the four pair conditions for (a, b) against c at error budget
 * `ell`, storing the combined verdict in `out_is_pair`.
 *
 * # Safety
 * The handles must be null or live; `out_is_pair` must be a valid pointer.
 */
EcpStatus ecp_pair_verify(const EcpCode *a,
                          const EcpCode *b,
                          const EcpCode *c,
                          uintptr_t ell,
                          bool *out_is_pair);

/**
 * Writes the full verification report as text; release the string with
 * ecp_string_free.
 *
 * # Safety
 * The handles must be null or live; `out` must be a valid pointer.
 */
EcpStatus ecp_pair_report(const EcpCode *a,
                          const EcpCode *b,
                          const EcpCode *c,
                          uintptr_t ell,
                          char **out);

/**
 * Builds a decoder from a verified pair; fails with PreconditionFailed when
 * the pair conditions do not hold at `ell`. Release with ecp_decoder_free.
 *
 * # Safety
 * The handles must be null or live; `out` must be a valid pointer.
 */
EcpStatus ecp_decoder_new(const EcpCode *a,
                          const EcpCode *b,
                          const EcpCode *c,
                          uintptr_t ell,
                          EcpPairDecoder **out);

/**
 * Releases a decoder handle. Null is a no-op.
 *
 * # Safety
 * `decoder` must be null or an unfreed handle from this library.
 */
void ecp_decoder_free(EcpPairDecoder *decoder);

/**
 * Decodes a received word of `word_len` canonical integers. On outcome
 * Decoded the corrected codeword is written to `out_codeword`, which must
 * hold the code length; other outcomes leave the buffer untouched and the
 * call still returns Ok.
 *
 * # Safety
 * `decoder` must be null or a live handle; `word` must point to `word_len`
 * readable values; `out_codeword` must point to writable space for the code
 * length; `out_outcome` must be a valid pointer.
 */
EcpStatus ecp_decoder_correct(const EcpPairDecoder *decoder,
                              const uint64_t *word,
                              uintptr_t word_len,
                              uint64_t *out_codeword,
                              EcpDecodeOutcome *out_outcome);

/**
 * Writes the case tables and per-statement conclusions as text; release the
 * string with ecp_string_free.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
EcpStatus ecp_tables(char **out);

/**
 * Rebuilds the three worked 10-coordinate examples and checks everything
 * their source prints. On success the text holds one PASS line per example;
 * a mismatch fails with CheckFailed and the detail in the error message.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
EcpStatus ecp_examples(char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ECPAIRS_H */

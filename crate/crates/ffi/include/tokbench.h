#ifndef TOKBENCH_H
#define TOKBENCH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum TokbenchStatus {
  TOKBENCH_STATUS_OK = 0,
  TOKBENCH_STATUS_NULL_POINTER = 1,
  TOKBENCH_STATUS_INVALID_UTF8 = 2,
  TOKBENCH_STATUS_IO = 3,
  TOKBENCH_STATUS_PARSE = 4,
  TOKBENCH_STATUS_INVALID_INPUT = 5,
  TOKBENCH_STATUS_UNDEFINED = 6,
  TOKBENCH_STATUS_ENCODE = 7,
  TOKBENCH_STATUS_PANIC = 8,
} TokbenchStatus;

/**
 * A loaded BPE tokenizer.
 */
typedef struct TokbenchBpe TokbenchBpe;

/**
 * A loaded morphology resource.
 */
typedef struct TokbenchMorphology TokbenchMorphology;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version, a static NUL-terminated string.
 */
const char *tokbench_version(void);

/**
 * Message for the last failed call on this thread, or NULL. The pointer is
 * valid until the next library call on the same thread.
 */
const char *tokbench_last_error_message(void);

/**
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void tokbench_string_free(char *s);

/**
 * Loads a morphology resource from a JSON file.
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` a writable pointer.
 */
enum TokbenchStatus tokbench_morphology_load(const char *path, struct TokbenchMorphology **out);

/**
 * The lexicon shipped with the library.
 *
 * # Safety
 * `out` must be a writable pointer.
 */
enum TokbenchStatus tokbench_morphology_bundled(struct TokbenchMorphology **out);

/**
 * # Safety
 * `res` must come from a morphology constructor and not have been freed.
 */
void tokbench_morphology_free(struct TokbenchMorphology *res);

/**
 * Validity and purity of one token (Turkish case folding is applied).
 *
 * # Safety
 * `res` must be a live handle, `token` a NUL-terminated string, and
 * `out_valid`/`out_pure` writable pointers.
 */
enum TokbenchStatus tokbench_morphology_analyze(const struct TokbenchMorphology *res,
                                                const char *token,
                                                bool *out_valid,
                                                bool *out_pure);

/**
 * Best segmentation of a token ("ev+ler+imiz+den"), or NULL in `*out` when
 * the token has no parse. Free the string with [`tokbench_string_free`].
 *
 * # Safety
 * As for [`tokbench_morphology_analyze`]; `out` must be writable.
 */
enum TokbenchStatus tokbench_morphology_segment(const struct TokbenchMorphology *res,
                                                const char *token,
                                                char **out);

/**
 * Loads a BPE tokenizer from a tokenizer JSON file.
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` a writable pointer.
 */
enum TokbenchStatus tokbench_bpe_load(const char *path, struct TokbenchBpe **out);

/**
 * # Safety
 * `model` must come from [`tokbench_bpe_load`] and not have been freed.
 */
void tokbench_bpe_free(struct TokbenchBpe *model);

/**
 * Vocabulary size, or 0 for a NULL handle.
 *
 * # Safety
 * `model` must be NULL or a live handle.
 */
size_t tokbench_bpe_vocab_size(const struct TokbenchBpe *model);

/**
 * Encodes `text` into token ids. Release `*out_ids` with
 * [`tokbench_ids_free`] and the same length. Empty input yields NULL and 0.
 *
 * # Safety
 * `model` must be a live handle, `text` a NUL-terminated string, and
 * `out_ids`/`out_len` writable pointers.
 */
enum TokbenchStatus tokbench_bpe_encode(const struct TokbenchBpe *model,
                                        const char *text,
                                        uint32_t **out_ids,
                                        size_t *out_len);

/**
 * # Safety
 * `ids`/`len` must be exactly what [`tokbench_bpe_encode`] returned.
 */
void tokbench_ids_free(uint32_t *ids, size_t len);

/**
 * 100 * valid / unique. `Undefined` when `unique` is 0.
 *
 * # Safety
 * `out` must be a writable pointer.
 */
enum TokbenchStatus tokbench_tr_percentage(uint64_t valid, uint64_t unique, double *out);

/**
 * 100 * pure / unique. `Undefined` when `unique` is 0.
 *
 * # Safety
 * `out` must be a writable pointer.
 */
enum TokbenchStatus tokbench_pure_percentage(uint64_t pure, uint64_t unique, double *out);

/**
 * Sample Pearson correlation of two series of length `len` (at least 3).
 * `Undefined` when either series is constant.
 *
 * # Safety
 * `xs` and `ys` must each point to `len` readable doubles; `out` must be
 * writable.
 */
enum TokbenchStatus tokbench_pearson(const double *xs, const double *ys, size_t len, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TOKBENCH_H */

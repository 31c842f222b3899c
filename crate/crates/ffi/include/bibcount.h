/* C interface to the bibcount library. Generated by cbindgen. */

#ifndef BIBCOUNT_H
#define BIBCOUNT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible call.
 */
typedef enum BcStatus {
  BcStatus_Ok = 0,
  BcStatus_NullPointer = 1,
  BcStatus_InvalidUtf8 = 2,
  BcStatus_Io = 3,
  BcStatus_Parse = 4,
  BcStatus_Validation = 5,
  BcStatus_Usage = 6,
  BcStatus_Compute = 7,
  BcStatus_Panic = 8,
} BcStatus;

/**
 * Normalization mode.
 */
typedef enum BcMode {
  BcMode_Standard = 0,
  BcMode_Multiplicative = 1,
} BcMode;

/**
 * Unit of analysis.
 */
typedef enum BcLevel {
  BcLevel_Author = 0,
  BcLevel_Organization = 1,
  BcLevel_Country = 2,
} BcLevel;

/**
 * Citation impact indicator.
 */
typedef enum BcIndicator {
  BcIndicator_Mncs = 0,
  BcIndicator_PpTop10 = 1,
} BcIndicator;

/**
 * Counting method.
 */
typedef enum BcMethod {
  BcMethod_Full = 0,
  BcMethod_FracAuthor = 1,
  BcMethod_FracAddress = 2,
  BcMethod_FracOrg = 3,
  BcMethod_FracCountry = 4,
  BcMethod_FirstAuthor = 5,
  BcMethod_CorrespondingAuthor = 6,
} BcMethod;

/**
 * An opaque, validated, resolved corpus.
 */
typedef struct BcCorpus BcCorpus;

/**
 * Opaque normalized scores plus the reference statistics they came from.
 */
typedef struct BcScores BcScores;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the most recent failure on this thread, or null.
 * The pointer is borrowed; it stays valid until the next failing call on
 * the same thread.
 */
const char *bc_last_error_message(void);

/**
 * Library version as a static string; do not free.
 */
const char *bc_version(void);

/**
 * Load, validate, and resolve a corpus file (one JSON record per line,
 * document types article and review). On success `*out` owns the corpus;
 * release it with [`bc_corpus_free`].
 *
 * # Safety
 * `path` must point to a NUL-terminated string and `out` to a writable
 * pointer slot.
 */
enum BcStatus bc_corpus_load(const char *path, struct BcCorpus **out);

/**
 * Number of publications in the corpus; zero if `corpus` is null.
 *
 * # Safety
 * `corpus` must be null or a pointer from [`bc_corpus_load`].
 */
uintptr_t bc_corpus_len(const struct BcCorpus *corpus);

/**
 * # Safety
 * `corpus` must be null or a pointer from [`bc_corpus_load`], not yet
 * freed.
 */
void bc_corpus_free(struct BcCorpus *corpus);

/**
 * Build field-year reference statistics and score every publication. In
 * multiplicative mode, `level` selects the unit count entering the
 * reference averages; it is ignored in standard mode.
 *
 * # Safety
 * `corpus` must come from [`bc_corpus_load`]; `out` must be writable.
 */
enum BcStatus bc_scores_compute(const struct BcCorpus *corpus,
                                enum BcMode mode,
                                enum BcLevel level,
                                struct BcScores **out);

/**
 * # Safety
 * `scores` must be null or a pointer from [`bc_scores_compute`], not yet
 * freed.
 */
void bc_scores_free(struct BcScores *scores);

/**
 * The full counting bonus at a level, by the direct formula, as a double.
 * `reference_average` receives the second term (the indicator's average
 * under any unit-weight-one method).
 *
 * # Safety
 * All pointers must be valid; `fcb` and `reference_average` must be
 * writable.
 */
enum BcStatus bc_fcb_direct(const struct BcCorpus *corpus,
                            const struct BcScores *scores,
                            enum BcLevel level,
                            enum BcIndicator indicator,
                            double *fcb,
                            double *reference_average);

/**
 * The full counting bonus computed by differencing full-counting and
 * reference-method world averages; agrees with [`bc_fcb_direct`].
 *
 * # Safety
 * All pointers must be valid; `fcb` must be writable.
 */
enum BcStatus bc_fcb_via_unit_averages(const struct BcCorpus *corpus,
                                       const struct BcScores *scores,
                                       enum BcLevel level,
                                       enum BcMethod reference,
                                       enum BcIndicator indicator,
                                       double *fcb);

/**
 * Assignment weights of every publication at a level under a method, as a
 * CSV string (columns publication_id, level, method, unit, weight).
 *
 * # Safety
 * `corpus` must come from [`bc_corpus_load`]; `out` must be writable. Free
 * the string with [`bc_string_free`].
 */
enum BcStatus bc_weights_csv(const struct BcCorpus *corpus,
                             enum BcLevel level,
                             enum BcMethod method,
                             char **out);

/**
 * Per-unit indicator rows at a level under a method, as a CSV string
 * (columns level, method, unit, p, mncs, pp_top10).
 *
 * # Safety
 * Handles must come from this library; `out` must be writable. Free the
 * string with [`bc_string_free`].
 */
enum BcStatus bc_indicators_csv(const struct BcCorpus *corpus,
                                const struct BcScores *scores,
                                enum BcLevel level,
                                enum BcMethod method,
                                char **out);

/**
 * The field-year reference statistics behind a score set, as a CSV string
 * (columns field, year, pub_count, mean_citations, top10_threshold,
 * top10_tie_fraction).
 *
 * # Safety
 * `scores` must come from [`bc_scores_compute`]; `out` must be writable.
 * Free the string with [`bc_string_free`].
 */
enum BcStatus bc_stats_csv(const struct BcScores *scores, char **out);

/**
 * Generate a deterministic synthetic corpus from a JSON generator
 * configuration and write it to `out_path` (one record per line).
 *
 * # Safety
 * `config_json` and `out_path` must be NUL-terminated strings.
 */
enum BcStatus bc_simulate_to_file(const char *config_json, uint64_t seed, const char *out_path);

/**
 * Release a string returned by this library.
 *
 * # Safety
 * `s` must be null or a pointer previously returned through a `char**`
 * out-parameter of this library, not yet freed.
 */
void bc_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BIBCOUNT_H */

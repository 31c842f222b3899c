/* Smoke test for the C interface.
 *
 * Build and run from the workspace root:
 *   cargo build -p bibcount-ffi
 *   cc -I crates/ffi/include -o smoke crates/ffi/examples/smoke.c \
 *      -L target/debug -lbibcount_ffi -lpthread -ldl -lm
 *   LD_LIBRARY_PATH=target/debug ./smoke
 */

#include "bibcount.h"
#include <assert.h>
#include <stdio.h>
#include <string.h>

int main(void) {
    struct BcCorpus *corpus = NULL;
    assert(bc_corpus_load("data/table6.jsonl", &corpus) == BcStatus_Ok);
    assert(bc_corpus_len(corpus) == 4);

    struct BcScores *scores = NULL;
    assert(bc_scores_compute(corpus, BcMode_Standard, BcLevel_Country, &scores) == BcStatus_Ok);

    double fcb = 0.0, reference = 0.0;
    assert(bc_fcb_direct(corpus, scores, BcLevel_Country, BcIndicator_Mncs, &fcb, &reference) == BcStatus_Ok);

    double via = 0.0;
    assert(bc_fcb_via_unit_averages(corpus, scores, BcLevel_Country, BcMethod_FracCountry,
                                    BcIndicator_Mncs, &via) == BcStatus_Ok);

    char *csv = NULL;
    assert(bc_weights_csv(corpus, BcLevel_Country, BcMethod_Full, &csv) == BcStatus_Ok);
    assert(strstr(csv, "p4,country,full,country b,1") != NULL);
    bc_string_free(csv);

    assert(bc_corpus_load("no/such/file", &corpus) == BcStatus_Io);
    printf("fcb=%.4f reference=%.2f via=%.4f version=%s\n", fcb, reference, via, bc_version());

    bc_scores_free(scores);
    bc_corpus_free(corpus);
    return 0;
}

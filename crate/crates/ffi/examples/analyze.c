/* Segments words given on the command line with the bundled lexicon.
 *
 *   cc analyze.c -I../include -L../../../target/debug -ltokbench_ffi -lpthread -ldl -lm
 *   ./a.out evlerimizden ve xyzzy
 */
#include <stdio.h>

#include "tokbench.h"

int main(int argc, char **argv) {
    TokbenchMorphology *res = NULL;
    if (tokbench_morphology_bundled(&res) != TOKBENCH_STATUS_OK) {
        fprintf(stderr, "error: %s\n", tokbench_last_error_message());
        return 1;
    }
    for (int i = 1; i < argc; i++) {
        bool valid = false, pure = false;
        char *seg = NULL;
        if (tokbench_morphology_analyze(res, argv[i], &valid, &pure) != TOKBENCH_STATUS_OK ||
            tokbench_morphology_segment(res, argv[i], &seg) != TOKBENCH_STATUS_OK) {
            fprintf(stderr, "error: %s\n", tokbench_last_error_message());
            tokbench_morphology_free(res);
            return 1;
        }
        printf("%s\t%s\tvalid=%d\tpure=%d\n", argv[i], seg ? seg : "NO-PARSE", valid, pure);
        tokbench_string_free(seg);
    }
    tokbench_morphology_free(res);

    double tr = 0.0;
    if (tokbench_tr_percentage(5, 7, &tr) == TOKBENCH_STATUS_OK) {
        printf("tr(5/7)=%.1f\n", tr);
    }
    if (tokbench_tr_percentage(0, 0, &tr) == TOKBENCH_STATUS_UNDEFINED) {
        printf("tr(0/0): %s\n", tokbench_last_error_message());
    }
    return 0;
}

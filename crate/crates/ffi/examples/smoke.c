/* Build (from the workspace root, after `cargo build -p regmat-ffi`):
 *   cc -std=c99 -I crates/ffi/include crates/ffi/examples/smoke.c \
 *      target/debug/libregmat_ffi.a -lpthread -ldl -lm -o smoke
 */
#include <stdio.h>
#include "regmat.h"

static int check(enum RegmatStatus s, const char *what) {
    if (s != REGMAT_STATUS_OK) {
        fprintf(stderr, "%s: %s (%s)\n", what, regmat_status_name(s), regmat_last_error_message());
        return 1;
    }
    return 0;
}

int main(void) {
    RegmatCountReport report;
    if (check(regmat_count(7, 3, REGMAT_METHOD_PRUNED, 1, &report), "count")) return 1;
    printf("mu(7,3) = %llu\n", (unsigned long long)report.mu);

    RegmatRepresentatives *reps = NULL;
    if (check(regmat_representatives_new(4, 2, 1, &reps), "representatives")) return 1;
    uint64_t rows[4];
    for (size_t i = 0; i < regmat_representatives_len(reps); i++) {
        regmat_representatives_get(reps, i, rows, 4);
        printf("<%llu, %llu, %llu, %llu>\n", (unsigned long long)rows[0],
               (unsigned long long)rows[1], (unsigned long long)rows[2],
               (unsigned long long)rows[3]);
    }
    regmat_representatives_free(reps);

    char *lambda = NULL;
    if (check(regmat_lambda(10, 2, REGMAT_ROUTE_AUTO, &lambda), "lambda")) return 1;
    printf("lambda(10,2) = %s\n", lambda);
    regmat_string_free(lambda);

    if (regmat_lambda(9, 4, REGMAT_ROUTE_AUTO, &lambda) != REGMAT_STATUS_INVALID_ARGUMENT) return 1;
    printf("lambda(9,4): %s\n", regmat_last_error_message());
    return 0;
}

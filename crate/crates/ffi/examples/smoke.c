/* Minimal consumer of the C interface. Build after `cargo build -p gfe1313-ffi`:
 *
 *   cc -Wall -Wextra -I crates/ffi/include crates/ffi/examples/smoke.c \
 *      -L target/debug -lgfe1313_ffi -o smoke
 *   LD_LIBRARY_PATH=target/debug ./smoke
 */
#include <stdio.h>
#include <string.h>
#include "gfe1313.h"

int main(void) {
    if (gfe_version() == NULL) return 10;

    GfeSieve *sieve = NULL;
    if (gfe_sieve_run(5, GFE_CASE_ONE, &sieve) != GFE_STATUS_OK) return 11;
    if (gfe_sieve_candidate_count(sieve) != 62) return 12;
    if (gfe_sieve_survivor_count(sieve) != 2) return 13;
    char *json = NULL;
    if (gfe_sieve_report_json(sieve, &json) != GFE_STATUS_OK) return 14;
    if (strstr(json, "\"candidateCount\": 62") == NULL) return 15;
    gfe_string_free(json);
    gfe_sieve_free(sieve);

    if (gfe_sieve_run(13, GFE_CASE_ONE, &sieve) != GFE_STATUS_INVALID_ARGUMENT) return 16;
    if (gfe_last_error() == NULL) return 17;

    GfeElimination *elim = NULL;
    if (gfe_modular_sieve_run(5, 0, NULL, &elim) != GFE_STATUS_OK) return 18;
    if (gfe_elimination_status(elim) != GFE_ELIMINATION_SKIPPED) return 19;
    if (gfe_elimination_pair_count(elim) != 9) return 20;
    gfe_elimination_free(elim);

    bool on_curve = false;
    if (gfe_verify_point(5, "INF", &on_curve, &json) != GFE_STATUS_OK) return 21;
    if (!on_curve) return 22;
    gfe_string_free(json);

    uint32_t ns[1] = {3};
    if (gfe_search_json(3, ns, 1, &json) != GFE_STATUS_OK) return 23;
    if (strstr(json, "\"solutions\"") == NULL) return 24;
    gfe_string_free(json);

    puts("C smoke test passed");
    return 0;
}

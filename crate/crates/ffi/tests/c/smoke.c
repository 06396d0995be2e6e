#include <math.h>
#include <stdio.h>
#include <string.h>

#include "cyclic_ic.h"

#define CHECK(cond)                                                     \
    do {                                                                \
        if (!(cond)) {                                                  \
            fprintf(stderr, "%s:%d: %s (%s)\n", __FILE__, __LINE__,     \
                    #cond, cic_last_error_message());                   \
            return 1;                                                   \
        }                                                               \
    } while (0)

int main(void) {
    double snr[2] = {15.0, 15.0};
    double inr[2] = {3.0, 3.0};
    CicChannel *ch = NULL;
    CHECK(cic_channel_new(2, snr, inr, &ch) == CIC_STATUS_OK);

    CicRegime regime;
    CHECK(cic_channel_regime(ch, &regime) == CIC_STATUS_OK);
    CHECK(regime == CIC_REGIME_WEAK);

    CicSystem *ach = NULL, *out = NULL, *fm = NULL;
    CHECK(cic_achievable_region(ch, CIC_SPLIT_ETW, &ach) == CIC_STATUS_OK);
    CHECK(cic_outer_region(ch, &out) == CIC_STATUS_OK);
    CHECK(cic_project_to_rates(ch, CIC_SPLIT_ETW, &fm) == CIC_STATUS_OK);

    size_t vars = 0, rows = 0;
    CHECK(cic_system_num_vars(ach, &vars) == CIC_STATUS_OK && vars == 2);
    CHECK(cic_system_num_rows(ach, &rows) == CIC_STATUS_OK && rows > 0);
    int32_t coeffs[2];
    double rhs;
    CHECK(cic_system_row(ach, 0, coeffs, &rhs) == CIC_STATUS_OK);
    CHECK(coeffs[0] == 1 && coeffs[1] == 0);
    CHECK(fabs(rhs - log2(8.5)) < 1e-12);
    CHECK(cic_system_row(ach, rows, coeffs, &rhs) == CIC_STATUS_INVALID_ARGUMENT);

    bool equal = false;
    CHECK(cic_regions_equal(ach, fm, &equal) == CIC_STATUS_OK && equal);
    double gap = -1.0;
    CHECK(cic_certified_gap(ach, out, &gap) == CIC_STATUS_OK);
    CHECK(gap >= 0.0 && gap <= 2.0);

    char *json = NULL;
    CHECK(cic_system_to_json(ach, &json) == CIC_STATUS_OK);
    CHECK(strncmp(json, "{\"vars\":[\"R_1\",\"R_2\"]", 21) == 0);
    cic_string_free(json);

    CicSystem *strong = NULL;
    CHECK(cic_strong_region(ch, &strong) == CIC_STATUS_WRONG_REGIME);
    CHECK(strlen(cic_last_error_message()) > 0);
    CHECK(fabs(cic_dsym_formula(1.5) - 0.75) < 1e-15);

    cic_system_free(ach);
    cic_system_free(out);
    cic_system_free(fm);
    cic_channel_free(ch);
    puts("c smoke ok");
    return 0;
}

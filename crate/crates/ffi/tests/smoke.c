#include <math.h>
#include <stdio.h>
#include "nucoh.h"

int main(void) {
    NucohModel *m = nucoh_model_new_default();
    double row[3], osc[3], coh[3], res[2], c;
    if (nucoh_probability_row(m, NUCOH_FLAVOR_E, 1e15, 4.5e10, 2.242e-15, row) != NUCOH_STATUS_OK)
        return 1;
    if (fabs(row[0] + row[1] + row[2] - 1.0) > 1e-10)
        return 2;
    if (nucoh_l1_from_probabilities(row, &c) != NUCOH_STATUS_OK || c < 0.0 || c > 2.0)
        return 3;
    if (nucoh_matter_lengths(m, 4.5e10, 0.0, osc, coh) != NUCOH_STATUS_OK)
        return 4;
    if (nucoh_resonance_potentials(m, 4.5e10, res) != NUCOH_STATUS_OK)
        return 5;
    if (nucoh_probability_row(m, NUCOH_FLAVOR_E, 1.0, 4.5e10, -1.0, row) != NUCOH_STATUS_DOMAIN)
        return 6;
    printf("%s %.6e %.6e %.6e\n", nucoh_version(), osc[NUCOH_PAIR_21], coh[NUCOH_PAIR_21], res[1]);
    nucoh_model_free(m);
    return 0;
}

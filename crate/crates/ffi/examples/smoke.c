#include <stdio.h>
#include "zernike.h"

int main(void) {
    ZkSystem *sys = NULL;
    ZkPolynomial *integral = NULL;
    char *text = NULL;
    if (zk_system_new_symbolic(1, &sys) != ZK_STATUS_OK) return 1;
    if (zk_integral(sys, &integral) != ZK_STATUS_OK) return 1;
    zk_polynomial_to_string(integral, &text);
    printf("I_1 = %s\n", text);
    zk_string_free(text);

    double e1[5], e2[5];
    const double params[4] = {-2.0, -1.0, 0.0, 0.0};
    if (zk_spectrum_levels(4, params, 4, e1, e2, 5) != ZK_STATUS_OK) return 1;
    printf("levels: %g %g %g %g %g\n", e1[0], e1[1], e1[2], e1[3], e1[4]);

    if (zk_system_new_symbolic(9, &sys) == ZK_STATUS_INVALID_ARGUMENT)
        printf("error: %s\n", zk_last_error());
    zk_polynomial_free(integral);
    zk_system_free(sys);
    return 0;
}

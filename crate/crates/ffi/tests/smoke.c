#include <stdio.h>
#include <stdlib.h>

#include "regcore.h"

int main(void) {
    const char *gens[] = {"x^3", "x*y", "y^2"};
    RegcoreIdeal *i = NULL;
    if (regcore_ideal_new("Q", gens, 3, &i) != REGCORE_STATUS_OK) {
        fprintf(stderr, "%s\n", regcore_last_error_message());
        return 1;
    }
    uint64_t n = 0;
    regcore_ideal_colength(i, &n);
    printf("colength %llu\n", (unsigned long long)n);
    if (regcore_ideal_multiplicity(i, 42, &n) != REGCORE_STATUS_OK) {
        return 1;
    }
    printf("e %llu\n", (unsigned long long)n);

    char *json = NULL;
    regcore_ideal_to_json(i, &json);
    printf("%s\n", json);
    regcore_string_free(json);
    regcore_ideal_free(i);

    const char *bad[] = {"x^2"};
    RegcoreStatus s = regcore_ideal_new("Q", bad, 1, &i);
    printf("error %d: %s\n", (int)s, regcore_last_error_message());
    return s == REGCORE_STATUS_NOT_M_PRIMARY ? 0 : 1;
}

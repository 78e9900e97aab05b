#include <stdio.h>
#include <string.h>

#include "mirabolic.h"

int main(void) {
    uint64_t dim = 0;
    if (mirabolic_dimension_count(2, 2, 2, &dim) != MIRABOLIC_STATUS_OK || dim != 27) {
        fprintf(stderr, "dimension_count: %llu\n", (unsigned long long)dim);
        return 1;
    }

    MirabolicElement *x = NULL;
    MirabolicElement *y = NULL;
    char *text = NULL;
    if (mirabolic_element_basis(1, 1, 1, 0, &x) != MIRABOLIC_STATUS_OK) return 2;
    if (mirabolic_element_act(x, MIRABOLIC_SIDE_LEFT, "L", &y) != MIRABOLIC_STATUS_OK) return 3;
    if (mirabolic_element_to_text(y, &text) != MIRABOLIC_STATUS_OK) return 4;
    int ok = strcmp(text, "(v^-2)*[[1]]{} + (v^-1)*[[1]]{(1,1)}") == 0;
    printf("%s\n", text);
    mirabolic_string_free(text);
    mirabolic_element_free(y);

    if (mirabolic_element_act(x, MIRABOLIC_SIDE_LEFT, "E7", &y) != MIRABOLIC_STATUS_INVALID_ARGUMENT) return 5;
    printf("%s\n", mirabolic_last_error());
    mirabolic_element_free(x);
    return ok ? 0 : 6;
}

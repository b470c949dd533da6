#include <stdio.h>
#include "frob3.h"

int main(void) {
    Frob3Result *r = NULL;
    Frob3Status s = frob3_compute(100, 101, 139, FROB3_METHOD_AUTO, &r);
    if (s != FROB3_STATUS_OK) {
        fprintf(stderr, "error: %s\n", frob3_status_str(s));
        return 1;
    }
    int64_t g = 0;
    frob3_result_g(r, &g);
    char *json = frob3_result_json(r);
    printf("g = %lld (%s via %s)\n%s\n", (long long)g, frob3_result_case(r), frob3_result_method(r), json);
    frob3_string_free(json);
    frob3_result_free(r);

    s = frob3_compute(4, 6, 8, FROB3_METHOD_AUTO, &r);
    printf("(4, 6, 8): %s\n", frob3_status_str(s));
    return 0;
}

#include <stdio.h>
#include <string.h>
#include "cartierlab.h"

static const char *NODE =
    "[ring.A]\nfield = \"QQ\"\nvars = [\"x\", \"y\"]\nrelations = [\"y^2 - x^3 - x^2\"]\n"
    "[ring.B]\nfield = \"QQ\"\nvars = [\"t\"]\n"
    "[map]\nimages = [\"t^2 - 1\", \"t^3 - t\"]\n"
    "[hints]\nfinite = true\nbirational = true\nmodule_generators = [\"1\", \"t\"]\n"
    "fractions = [[\"1\", \"1\"], [\"y\", \"x\"]]\n";

int main(void) {
    ClExtension *h = NULL;
    if (cl_extension_new(NODE, 0, &h) != CL_STATUS_OK) {
        fprintf(stderr, "new: %s\n", cl_last_error());
        return 1;
    }
    uint64_t rank = 0, comps = 0, stalk = 0;
    bool certified = false;
    if (cl_extension_li_rank(h, &rank, &certified) != CL_STATUS_OK || rank != 1 || !certified) {
        fprintf(stderr, "li: %s\n", cl_last_error());
        return 1;
    }
    if (cl_extension_stalk(h, "x, y", &comps, &stalk) != CL_STATUS_OK || comps != 2 || stalk != 1) {
        return 1;
    }
    if (cl_extension_stalk(h, "x", &comps, &stalk) != CL_STATUS_INPUT || cl_last_error() == NULL) {
        return 1;
    }
    cl_extension_free(h);

    const char *argv[] = {"terms", "--n", "2"};
    char *report = NULL;
    if (cl_run(3, argv, &report) != 0 || strstr(report, "\"n_terms\"") == NULL) {
        return 1;
    }
    cl_string_free(report);
    printf("ok %s\n", cl_version());
    return 0;
}

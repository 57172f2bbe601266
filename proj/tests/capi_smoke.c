// Copyright 2026 The jetforge Authors.
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//         http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.


#include "jetforge/jetforge.h"

#include <stdio.h>
#include <string.h>

static int failures = 0;

#define EXPECT(cond)                                                   \
    do {                                                               \
        if (!(cond)) {                                                 \
            fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
            ++failures;                                                \
        }                                                              \
    } while (0)

int main(void)
{
    jf_context* ctx = jf_context_new();
    EXPECT(ctx != NULL);
    EXPECT(strlen(jf_version()) > 0);

    char* names = jf_command_names();
    EXPECT(strstr(names, "quasi-compose") != NULL);
    jf_string_free(names);

    char* out = NULL;
    EXPECT(jf_run(ctx, "dims", "{\"m\":\"1\",\"n\":\"1\",\"r\":\"2\"}", NULL, &out) == JF_OK);
    EXPECT(out && strstr(out, "\"quasijet\": 4") != NULL);
    jf_string_free(out);

    out = NULL;
    EXPECT(jf_run(ctx, "nope", NULL, NULL, &out) == JF_ERR_USAGE);
    EXPECT(strlen(jf_last_error(ctx)) > 0);
    EXPECT(jf_run(ctx, "invert", NULL, "{", &out) == JF_ERR_VALIDATION);

    jf_jet* f = NULL;
    jf_jet* g = NULL;
    jf_jet* id = NULL;
    jf_jet* fg = NULL;
    EXPECT(jf_jet_from_expressions(ctx, "x1+x1^2", "0", 3, 0, &f) == JF_OK);
    EXPECT(jf_jet_invert(ctx, f, &g) == JF_OK);
    EXPECT(jf_jet_compose(ctx, f, g, &fg) == JF_OK);
    EXPECT(jf_jet_from_expressions(ctx, "x1", "0", 3, 0, &id) == JF_OK);
    int equal = 0;
    EXPECT(jf_jet_equal(ctx, fg, id, &equal) == JF_OK);
    EXPECT(equal == 1);
    jf_jet_free(f);
    f = NULL;
    EXPECT(jf_jet_from_expressions(ctx, "sin(x1)", "0", 3, 0, &f) == JF_ERR_PRECONDITION);

    char* text = NULL;
    EXPECT(jf_jet_to_json(ctx, g, &text) == JF_OK);
    jf_jet* back = NULL;
    EXPECT(jf_jet_from_json(ctx, text, 0, &back) == JF_OK);
    EXPECT(jf_jet_equal(ctx, back, g, &equal) == JF_OK && equal == 1);
    jf_string_free(text);

    jf_jet_free(back);
    jf_jet_free(fg);
    jf_jet_free(id);
    jf_jet_free(g);
    jf_context_free(ctx);
    if (failures) {
        return 1;
    }
    puts("capi smoke ok");
    return 0;
}

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

#ifndef JETFORGE_H
#define JETFORGE_H

#include <stdint.h>

#if defined(_WIN32)
#if defined(JETFORGE_BUILDING_LIBRARY)
#define JF_API __declspec(dllexport)
#else
#define JF_API __declspec(dllimport)
#endif
#else
#define JF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes; they double as CLI exit codes. */
#define JF_OK 0
#define JF_ERR_USAGE 1
#define JF_ERR_VALIDATION 2
#define JF_ERR_PRECONDITION 3
#define JF_ERR_INTERNAL 4

typedef struct jf_context jf_context;
typedef struct jf_jet jf_jet;

JF_API const char* jf_version(void);

JF_API jf_context* jf_context_new(void);
JF_API void jf_context_free(jf_context* ctx);
/* Seed for randomized self-checks (linearity probes). Default 0. */
JF_API void jf_context_set_seed(jf_context* ctx, uint64_t seed);
/* Message of the last failed call on ctx; empty after a success. */
JF_API const char* jf_last_error(const jf_context* ctx);

/*
 * Runs a front-end command. flags_json is a JSON object mapping flag names
 * (without dashes) to strings; true marks a switch such as "float". It may be
 * NULL. input is the JSON payload or NULL. On JF_OK *out receives canonical
 * JSON to be released with jf_string_free.
 */
JF_API int jf_run(jf_context* ctx, const char* command, const char* flags_json, const char* input, char** out);

/* Newline-separated command names; release with jf_string_free. */
JF_API char* jf_command_names(void);

JF_API void jf_string_free(char* s);

/* Jets. use_float selects the real domain instead of exact rationals. */
JF_API int jf_jet_from_json(jf_context* ctx, const char* json, int use_float, jf_jet** out);
JF_API int jf_jet_from_expressions(jf_context* ctx, const char* exprs, const char* point, unsigned order,
                                   int use_float, jf_jet** out);
JF_API int jf_jet_compose(jf_context* ctx, const jf_jet* outer, const jf_jet* inner, jf_jet** out);
JF_API int jf_jet_invert(jf_context* ctx, const jf_jet* jet, jf_jet** out);
JF_API int jf_jet_restrict(jf_context* ctx, const jf_jet* jet, unsigned order, jf_jet** out);
JF_API int jf_jet_equal(jf_context* ctx, const jf_jet* a, const jf_jet* b, int* equal);
JF_API int jf_jet_to_json(jf_context* ctx, const jf_jet* jet, char** out);
JF_API void jf_jet_free(jf_jet* jet);

#ifdef __cplusplus
}
#endif

#endif

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

#include "jetforge/commands.hpp"
#include "jetforge/error.hpp"
#include "jetforge/expression.hpp"
#include "jetforge/json_io.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

struct jf_context {
    std::uint64_t seed = 0;
    std::string last_error;
};

struct jf_jet {
    jetforge::JetMap value;
};

namespace {

char* copy_string(const std::string& s)
{
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out == nullptr) {
        throw std::bad_alloc();
    }
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <typename F>
int guarded(jf_context* ctx, F&& body)
{
    if (ctx == nullptr) {
        return JF_ERR_USAGE;
    }
    int status = JF_OK;
    try {
        body();
        ctx->last_error.clear();
        return JF_OK;
    } catch (const jetforge::UsageError& e) {
        status = JF_ERR_USAGE;
        ctx->last_error = e.what();
    } catch (const jetforge::ValidationError& e) {
        status = JF_ERR_VALIDATION;
        ctx->last_error = e.what();
    } catch (const jetforge::PreconditionError& e) {
        status = JF_ERR_PRECONDITION;
        ctx->last_error = e.what();
    } catch (const std::exception& e) {
        status = JF_ERR_INTERNAL;
        ctx->last_error = e.what();
    } catch (...) {
        status = JF_ERR_INTERNAL;
        ctx->last_error = "unknown error";
    }
    return status;
}

void require(bool ok, const char* what)
{
    if (!ok) {
        throw jetforge::UsageError(what);
    }
}

jetforge::Domain domain_of(int use_float) { return use_float ? jetforge::Domain::real : jetforge::Domain::rational; }

} // namespace

extern "C" {

const char* jf_version(void) { return "0.1.0"; }

jf_context* jf_context_new(void) { return new (std::nothrow) jf_context(); }

void jf_context_free(jf_context* ctx) { delete ctx; }

void jf_context_set_seed(jf_context* ctx, uint64_t seed)
{
    if (ctx != nullptr) {
        ctx->seed = seed;
    }
}

const char* jf_last_error(const jf_context* ctx) { return ctx == nullptr ? "null context" : ctx->last_error.c_str(); }

int jf_run(jf_context* ctx, const char* command, const char* flags_json, const char* input, char** out)
{
    return guarded(ctx, [&] {
        require(command != nullptr && out != nullptr, "command and output must not be null");
        jetforge::CommandFlags flags;
        if (flags_json != nullptr && *flags_json != '\0') {
            auto j = jetforge::parse_json(flags_json);
            require(j.is_object(), "flags must be a JSON object");
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (it->is_string()) {
                    flags[it.key()] = it->get<std::string>();
                } else if (it->is_boolean()) {
                    if (it->get<bool>()) {
                        flags[it.key()] = "";
                    }
                } else {
                    throw jetforge::UsageError("flag '" + it.key() + "' must be a string or a boolean");
                }
            }
        }
        *out = copy_string(jetforge::run_command(command, flags, input == nullptr ? "" : input, ctx->seed));
    });
}

char* jf_command_names(void)
{
    std::string joined;
    for (const auto& name : jetforge::command_names()) {
        joined += name + "\n";
    }
    return copy_string(joined);
}

void jf_string_free(char* s) { std::free(s); }

int jf_jet_from_json(jf_context* ctx, const char* json, int use_float, jf_jet** out)
{
    return guarded(ctx, [&] {
        require(json != nullptr && out != nullptr, "arguments must not be null");
        *out = new jf_jet{jetforge::jet_from_json(jetforge::parse_json(json), domain_of(use_float))};
    });
}

int jf_jet_from_expressions(jf_context* ctx, const char* exprs, const char* point, unsigned order, int use_float,
                            jf_jet** out)
{
    return guarded(ctx, [&] {
        require(exprs != nullptr && point != nullptr && out != nullptr, "arguments must not be null");
        auto d = domain_of(use_float);
        jetforge::Point p;
        std::string text(point);
        std::size_t start = 0;
        while (start <= text.size() && !text.empty()) {
            std::size_t end = text.find(',', start);
            std::string item = text.substr(start, end == std::string::npos ? std::string::npos : end - start);
            item.erase(0, item.find_first_not_of(" \t"));
            item.erase(item.find_last_not_of(" \t") + 1);
            p.push_back(jetforge::Coefficient::parse(item, d));
            if (end == std::string::npos) {
                break;
            }
            start = end + 1;
        }
        auto list = jetforge::parse_expression_list(exprs);
        *out = new jf_jet{jetforge::jet_of_expressions(list, p, order, d)};
    });
}

int jf_jet_compose(jf_context* ctx, const jf_jet* outer, const jf_jet* inner, jf_jet** out)
{
    return guarded(ctx, [&] {
        require(outer != nullptr && inner != nullptr && out != nullptr, "arguments must not be null");
        *out = new jf_jet{jetforge::compose_jets(outer->value, inner->value)};
    });
}

int jf_jet_invert(jf_context* ctx, const jf_jet* jet, jf_jet** out)
{
    return guarded(ctx, [&] {
        require(jet != nullptr && out != nullptr, "arguments must not be null");
        *out = new jf_jet{jetforge::invert_jet(jet->value)};
    });
}

int jf_jet_restrict(jf_context* ctx, const jf_jet* jet, unsigned order, jf_jet** out)
{
    return guarded(ctx, [&] {
        require(jet != nullptr && out != nullptr, "arguments must not be null");
        *out = new jf_jet{jetforge::restrict_order(jet->value, order)};
    });
}

int jf_jet_equal(jf_context* ctx, const jf_jet* a, const jf_jet* b, int* equal)
{
    return guarded(ctx, [&] {
        require(a != nullptr && b != nullptr && equal != nullptr, "arguments must not be null");
        *equal = a->value == b->value ? 1 : 0;
    });
}

int jf_jet_to_json(jf_context* ctx, const jf_jet* jet, char** out)
{
    return guarded(ctx, [&] {
        require(jet != nullptr && out != nullptr, "arguments must not be null");
        *out = copy_string(jetforge::canonical_dump(jetforge::jet_to_json(jet->value)));
    });
}

void jf_jet_free(jf_jet* jet) { delete jet; }

} // extern "C"

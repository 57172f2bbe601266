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

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <unistd.h>

namespace {

std::string read_all(std::istream& in)
{
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

// Commands answered from flags alone never block on standard input.
bool needs_payload(const std::string& command, const nlohmann::json& flags)
{
    if (command == "jet") {
        return false;
    }
    if (command == "dims") {
        return !flags.contains("m");
    }
    if (command == "weil") {
        return !flags.contains("k");
    }
    return true;
}

std::string command_list()
{
    std::unique_ptr<char, decltype(&jf_string_free)> names(jf_command_names(), jf_string_free);
    std::string out;
    std::istringstream lines(names.get());
    for (std::string line; std::getline(lines, line);) {
        out += "  " + line + "\n";
    }
    return out;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"jetforge: exact jet calculus from the command line"};
    app.footer("Commands:\n" + command_list());

    std::string command;
    std::string file;
    std::optional<std::uint64_t> seed;
    bool use_float = false;
    std::map<std::string, std::string> values;

    app.add_option("command", command, "Command to run")->required();
    app.add_option("--file", file, "JSON payload (default: standard input)");
    app.add_option("--seed", seed, "Seed for randomized self-checks (overrides JETFORGE_SEED)");
    app.add_flag("--float", use_float, "Use floating-point coefficients instead of exact rationals");
    for (const char* name : {"map", "at", "order", "orders", "mode", "k", "r", "m", "n"}) {
        app.add_option(std::string("--") + name, values[name]);
    }
    CLI11_PARSE(app, argc, argv);

    nlohmann::json flags = nlohmann::json::object();
    for (const auto& [name, value] : values) {
        if (app.count(std::string("--") + name) > 0) {
            flags[name] = value;
        }
    }
    if (use_float) {
        flags["float"] = true;
    }

    std::string input;
    if (!file.empty()) {
        std::ifstream in(file, std::ios::binary);
        if (!in) {
            std::cerr << "error: cannot open " << file << "\n";
            return JF_ERR_VALIDATION;
        }
        input = read_all(in);
    } else if (needs_payload(command, flags) && !isatty(STDIN_FILENO)) {
        input = read_all(std::cin);
    }

    if (!seed) {
        if (const char* env = std::getenv("JETFORGE_SEED")) {
            try {
                seed = std::stoull(env);
            } catch (const std::exception&) {
                std::cerr << "error: JETFORGE_SEED must be a non-negative integer\n";
                return JF_ERR_USAGE;
            }
        }
    }

    std::unique_ptr<jf_context, decltype(&jf_context_free)> ctx(jf_context_new(), jf_context_free);
    if (!ctx) {
        std::cerr << "error: out of memory\n";
        return JF_ERR_INTERNAL;
    }
    jf_context_set_seed(ctx.get(), seed.value_or(0));

    char* out = nullptr;
    int status = jf_run(ctx.get(), command.c_str(), flags.dump().c_str(), input.c_str(), &out);
    if (status != JF_OK) {
        std::cerr << "error: " << jf_last_error(ctx.get()) << "\n";
        return status;
    }
    std::cout << out << "\n";
    jf_string_free(out);
    return 0;
}

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

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace jetforge {

using CommandFlags = std::map<std::string, std::string>;

const std::vector<std::string>& command_names();

// Runs one front-end command on string flags and a JSON payload and returns
// canonical JSON. Errors propagate as exceptions: UsageError for unknown
// commands, ValidationError for malformed input, PreconditionError for
// inputs outside an operation's domain.
std::string run_command(const std::string& command, const CommandFlags& flags, const std::string& input,
                        std::uint64_t seed);

} // namespace jetforge

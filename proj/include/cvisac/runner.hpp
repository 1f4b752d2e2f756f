/* Copyright 2026 The cvisac authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#ifndef CVISAC_RUNNER_HPP
#define CVISAC_RUNNER_HPP

#include <cstdint>
#include <string>
#include <string_view>

#include "cvisac/config.hpp"

// Experiment orchestration: the four run modes behind the command-line
// interface. Every mode writes its numeric results as CSV, a meta.txt with
// the fully resolved configuration, and (optionally) an SVG chart. File
// writes go to `<name>.partial` first and are renamed on success.

namespace cvisac {

inline constexpr std::string_view kVersion = "cvisac 0.1.0";

// FNV-1a 64-bit content hash; identifies the binary version in meta.txt.
std::uint64_t fnv1a64(std::string_view data);

enum class RunMode { train, evaluate, sweep_mi, sweep_users };

// Executes one mode. Returns 0 on success; I/O failures throw
// std::runtime_error (mapped to exit code 2 by the CLI).
int run_mode(RunMode mode, RunConfig cfg, std::uint64_t seed,
             const std::string& out_dir);

}  // namespace cvisac

#endif  // CVISAC_RUNNER_HPP

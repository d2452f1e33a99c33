// Copyright 2026 The ecpsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ECP_CLI_HPP
#define ECP_CLI_HPP

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ecp/analysis.hpp"

namespace ecp::cli {

// Exit codes: 0 success, 1 verification failure, 2 usage error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;

/// Formats with 12 significant digits; stable across runs.
std::string format_number(double value);

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);
std::string sweep_svg(std::span<const SweepRow> rows);

/// Parses and runs one command. Output lands on `out`, diagnostics on `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace ecp::cli

#endif  // ECP_CLI_HPP

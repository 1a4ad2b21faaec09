// Copyright 2026 The intquad Authors
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

#ifndef INTQUAD_TOOLS_CLI_H_
#define INTQUAD_TOOLS_CLI_H_

#include <cstdint>
#include <iosfwd>

namespace intquad::cli {

// Seed used when --seed is not given.
inline constexpr std::uint64_t kDefaultSeed = 20260101;

enum ExitCode : int { kOk = 0, kInvalidInput = 1, kInternalError = 2 };

// Parses argv and runs one subcommand: gen, bound, solve, exact or bench.
// Results go to `out` unless redirected by --out; diagnostics go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace intquad::cli

#endif  // INTQUAD_TOOLS_CLI_H_

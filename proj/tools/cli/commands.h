/*
 * Copyright 2026 The cdeforest Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef CDEFOREST_TOOLS_COMMANDS_H_
#define CDEFOREST_TOOLS_COMMANDS_H_

#include <ostream>
#include <string>
#include <vector>

#include "cdeforest/lattice.h"

namespace cdeforest::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitDegenerateData = 3;
inline constexpr int kExitUnsupported = 4;

// Parses "lo:hi:steps[,lo:hi:steps...]", one triple per response dimension.
Lattice ParseGridSpec(const std::string& text);

// Entry point shared by the binary and the tests. `args[0]` is the program
// name. Reports go to `out`, diagnostics and key=value timings to `err`.
int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cdeforest::cli

#endif  // CDEFOREST_TOOLS_COMMANDS_H_

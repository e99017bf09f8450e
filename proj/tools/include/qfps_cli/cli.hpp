// Copyright 2026 The qfps Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Command dispatch for the qfps tool, callable in-process.

#include <ostream>
#include <string>
#include <vector>

namespace qfps::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsage = 2,       ///< malformed arguments or values outside an operation's domain
  kInfeasible = 3,  ///< resource caps or a zero-probability post-selection
};

/// Runs one command. `args` excludes the program name. Environment variable
/// QFPS_OUTPUT_DIR, when set, is the base for relative --output and
/// --emit-netlist paths.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Rounds to 12 significant digits, the precision of every emitted number.
double round12(double v);

}  // namespace qfps::cli

// Copyright 2026 The IFE Authors
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


#ifndef IFE_REPORT_COMMANDS_HPP
#define IFE_REPORT_COMMANDS_HPP

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace ife::report {

/// Stable process exit codes.
enum ExitCode : int {
  kOk = 0,
  kInputError = 1,
  kNumericalFailure = 2,
  kEmptyDecomposition = 3,
  kNotIfe = 4,
  kResonance = 5,
  kOracleMismatch = 6,
};

inline constexpr int kSchemaVersion = 1;
/// Seed used by `mixed --sample` unless --seed is given.
inline constexpr std::uint64_t kDefaultSeed = 20260101;

std::string tool_version();

/// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view bytes);

/// Runs the command line `args` (program name excluded). The report goes to
/// --out or to `out`; diagnostics go to `err`. Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ife::report

#endif  // IFE_REPORT_COMMANDS_HPP

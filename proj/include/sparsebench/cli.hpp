// Copyright 2026 The sparsebench Authors
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

#ifndef SPARSEBENCH_CLI_HPP_
#define SPARSEBENCH_CLI_HPP_

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace sparsebench::cli {

enum ExitCode : int { kExitOk = 0, kExitDomainFailure = 1, kExitUsage = 2 };

/// Environment variable that overrides the default seed of `experiment` and
/// `oracle-check`.
inline constexpr const char* kSeedEnvVar = "SPARSEBENCH_SEED";

/// Runs the command line `args` (args[0] is the program name) and returns
/// the process exit code: 0 success, 1 domain failure, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses a sparsity sweep: comma-separated items, each an integer or an
/// inclusive range "a..b". "1..3,7" is {1, 2, 3, 7}. Order is preserved.
/// Throws std::invalid_argument on malformed text or a descending range.
std::vector<int> parse_k_list(std::string_view text);

}  // namespace sparsebench::cli

#endif  // SPARSEBENCH_CLI_HPP_

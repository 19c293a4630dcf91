// Copyright 2026 The clusterfold Authors
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

#ifndef CLUSTERFOLD_CLI_H_
#define CLUSTERFOLD_CLI_H_

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "clusterfold/exchange_matrix.h"

namespace clusterfold::cli {

enum class Subcommand {
  kClassify,
  kMutate,
  kMgs,
  kCoherence,
  kUnfold,
  kVerifyUnfolding,
  kTotalMutability,
};

// Exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolated = 1;
inline constexpr int kExitUsage = 2;

struct RunConfig {
  Subcommand subcommand = Subcommand::kClassify;
  std::string input_path;
  std::optional<MutationSequence> sequence;
  std::optional<int> depth;
  std::optional<int> max_len;
  std::optional<int> truncation_m;
  std::optional<std::string> dot_out;
  bool framed = false;
  bool brute_force = false;
  bool json_out = false;
};

// Checks the subcommand-specific flags. Returns an error message, or
// nullopt when the configuration is complete.
std::optional<std::string> Validate(const RunConfig& config);

// Executes one subcommand. Reports go to `out`, diagnostics to `err`.
// Returns kExitOk when the checked property holds, kExitViolated (with a
// witness on `out`) when it does not, and kExitUsage for bad flags or input.
int Run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv into a RunConfig and runs it.
int Main(const std::vector<std::string>& args, std::ostream& out,
         std::ostream& err);

}  // namespace clusterfold::cli

#endif  // CLUSTERFOLD_CLI_H_

// Copyright 2026 The RVPINN Authors. All Rights Reserved.
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

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"

namespace rvpinn::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kPropertyFailure = 1,
  kConfigError = 2,
  kNumericalAbort = 3,
};

/// Command-line values that take precedence over the config file.
struct Overrides {
  std::optional<std::filesystem::path> output_dir;
  std::optional<std::uint64_t> seed;
};

/// Trains one configuration and writes into the output directory:
///   config.json   resolved configuration (re-runnable)
///   history.csv   per-record diagnostics
///   solution.csv  x, u_theta, u_exact of the best parameters
///   summary.json  final/best loss, errors and bound statistics
/// Nothing is written when the configuration is invalid.
int cmd_train(const std::filesystem::path& config_path, const Overrides& overrides,
              std::ostream& log);

/// Runs one of the property suites: gram, grad, rescale, consistency.
int cmd_verify(const std::string& suite, std::ostream& log);

/// Repeats cmd_train for every epsilon into <output_dir>/eps_<epsilon>/ and
/// aggregates the outcomes in <output_dir>/sweep.csv.
int cmd_sweep(const std::filesystem::path& config_path,
              const std::vector<double>& epsilons, const Overrides& overrides,
              std::ostream& log);

/// The sweep.csv header.
inline constexpr const char* kSweepHeader =
    "epsilon,exit_code,final_loss,best_loss,best_energy_error,"
    "relative_energy_error,lower_bound_fraction,reliability_ratio";

}  // namespace rvpinn::cli

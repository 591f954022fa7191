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
#include <string>
#include <vector>

#include "rvpinn/mlp.hpp"
#include "rvpinn/problem.hpp"
#include "rvpinn/residual.hpp"
#include "rvpinn/trainer.hpp"

namespace rvpinn {

inline constexpr int kDefaultErrorNodes = 10000;

/// |u - u_theta|_U = sqrt(eps int (u' - u_theta')^2) by the trapezoid rule on
/// `n_nodes` points, with the analytic u'. Throws NoExactSolution.
double energy_error(const MlpParams& params, const Problem& problem,
                    int n_nodes = kDefaultErrorNodes);
double energy_error(const MlpParams& params, const Problem& problem,
                    const ExactSolution& exact, int n_nodes = kDefaultErrorNodes);

/// |u|_U with the same rule; the denominator of relative errors.
double energy_norm(const Problem& problem, const ExactSolution& exact,
                   int n_nodes = kDefaultErrorNodes);

struct ErrorReport {
  double energy_error = 0.0;
  double phi_norm = 0.0;
  double ratio = 0.0;  // sqrt(loss) / energy_error
  double mu = 1.0;
  double alpha = 1.0;
  bool lower_bound_satisfied = false;
};

ErrorReport error_report(const MlpParams& params, const Problem& problem,
                         const ResidualAssembly& assembly, double tol,
                         int n_nodes = kDefaultErrorNodes);

struct BoundSummary {
  bool has_error_data = false;
  std::size_t records_checked = 0;
  /// Share of records with phi_norm / mu <= energy_error (1 + tol).
  double lower_bound_fraction = 0.0;
  /// max(energy_error / phi_norm) over the final 20% of records. Reported,
  /// never asserted: the upper bound carries an uncomputable oscillation term.
  double reliability_ratio = 0.0;
  /// Pearson correlation of log(sqrt(loss)) and log(energy_error).
  double log_correlation = 0.0;
  std::string note;
};

BoundSummary verify_bounds(const std::vector<IterationRecord>& history,
                           double mu, double tol);

/// Pearson correlation coefficient; NaN for fewer than two points or a
/// constant series.
double pearson(const std::vector<double>& a, const std::vector<double>& b);

enum class HistoryFormat { Csv, Json };

/// Column order of the history CSV.
inline constexpr const char* kHistoryHeader =
    "epoch,loss,sqrt_loss,phi_norm,energy_error,penalty,lower_bound_ok";
inline constexpr const char* kSolutionHeader = "x,u_theta,u_exact";

/// Floats use 17 significant digits. Missing error data is written as `nan`
/// (energy_error) and an empty field (lower_bound_ok) in CSV, null in JSON.
void write_history_csv(const std::vector<IterationRecord>& history,
                       std::ostream& out);
void write_history_json(const std::vector<IterationRecord>& history,
                        std::ostream& out);
void export_history(const std::vector<IterationRecord>& history,
                    const std::filesystem::path& path, HistoryFormat format);

/// Parses a file produced by write_history_csv.
std::vector<IterationRecord> read_history_csv(std::istream& in);
std::vector<IterationRecord> read_history_csv(const std::filesystem::path& path);

/// x, u_theta(x) and, when available, u(x) at `n_samples` uniform points on
/// [-1, 1]. Without an exact solution the header is `x,u_theta`.
void export_solution(const MlpParams& params, const Problem& problem,
                     int n_samples, const std::filesystem::path& path);

/// "%.17g".
std::string format_double(double v);

}  // namespace rvpinn

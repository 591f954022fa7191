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

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "rvpinn/mlp.hpp"
#include "rvpinn/problem.hpp"
#include "rvpinn/residual.hpp"
#include "rvpinn/testspace.hpp"

namespace rvpinn {

struct TrainConfig {
  double learning_rate = 5e-4;
  int max_epochs = 6000;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_epsilon = 1e-8;
  std::uint64_t seed = 0;
  int record_every = 10;
  std::vector<int> architecture = default_architecture();
  /// Trapezoid nodes used for the energy-norm error at each record.
  int error_nodes = 10000;
  /// Slack on the efficiency bound check phi_norm / mu <= error (1 + tol).
  double bound_tolerance = 1e-2;

  /// Throws ConfigError.
  void validate() const;
};

struct AdamState {
  Eigen::VectorXd m;
  Eigen::VectorXd v;
  std::uint64_t t = 0;

  explicit AdamState(std::size_t parameter_count)
      : m(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(parameter_count))),
        v(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(parameter_count))) {}
};

/// One bias-corrected ADAM update of `theta` in place.
/// Throws NumericalError on a non-finite or mis-sized gradient.
void adam_step(AdamState& state, Eigen::VectorXd& theta,
               const Eigen::VectorXd& grad, const TrainConfig& cfg);

struct IterationRecord {
  int epoch = 0;
  double loss = 0.0;
  double phi_norm = 0.0;
  double penalty = 0.0;
  /// |u - u_theta|_U; empty without an exact solution.
  std::optional<double> energy_error;
  /// phi_norm / mu <= energy_error (1 + tol); empty without an exact solution.
  std::optional<bool> lower_bound_ok;
};

struct TrainResult {
  std::vector<IterationRecord> history;
  MlpParams best_params;
  MlpParams final_params;
  double best_loss = 0.0;
  int best_epoch = 0;
};

/// Thrown when training hits a non-finite loss or gradient. Carries the
/// records collected before the failure.
class TrainingAborted : public NumericalError {
 public:
  TrainingAborted(const std::string& what, std::vector<IterationRecord> history)
      : NumericalError(what), history_(std::move(history)) {}
  const std::vector<IterationRecord>& history() const { return history_; }

 private:
  std::vector<IterationRecord> history_;
};

/// Minimizes the loss with full-batch ADAM for cfg.max_epochs steps.
///
/// Epoch e refers to the parameters after e updates. Records are taken at
/// e = 0, every cfg.record_every epochs and at the last epoch. The returned
/// best parameters are those with the lowest recorded loss.
TrainResult train(const Problem& problem, const TestSpace& space,
                  const TrainConfig& cfg);

/// Same, with a caller-supplied quadrature rule and initial network.
TrainResult train(const Problem& problem, const TestSpace& space,
                  const QuadratureRule& quad, const TrainConfig& cfg,
                  MlpParams initial);

}  // namespace rvpinn

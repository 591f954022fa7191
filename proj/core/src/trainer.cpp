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

#include "rvpinn/trainer.hpp"

#include <cmath>
#include <string>

#include "rvpinn/report.hpp"

namespace rvpinn {

void TrainConfig::validate() const {
  if (!(learning_rate > 0.0)) throw ConfigError("learning_rate must be > 0");
  if (max_epochs < 0) throw ConfigError("max_epochs must be >= 0");
  if (!(adam_beta1 >= 0.0 && adam_beta1 < 1.0))
    throw ConfigError("adam_beta1 must lie in [0, 1)");
  if (!(adam_beta2 >= 0.0 && adam_beta2 < 1.0))
    throw ConfigError("adam_beta2 must lie in [0, 1)");
  if (!(adam_epsilon > 0.0)) throw ConfigError("adam_epsilon must be > 0");
  if (record_every < 1) throw ConfigError("record_every must be >= 1");
  if (error_nodes < 2) throw ConfigError("error_nodes must be >= 2");
  if (!(bound_tolerance >= 0.0)) throw ConfigError("bound_tolerance must be >= 0");
  if (architecture.size() < 2 || architecture.front() != 1 ||
      architecture.back() != 1)
    throw ConfigError("architecture must start and end with width 1");
  for (int w : architecture)
    if (w < 1) throw ConfigError("architecture widths must be >= 1");
}

void adam_step(AdamState& state, Eigen::VectorXd& theta,
               const Eigen::VectorXd& grad, const TrainConfig& cfg) {
  if (grad.size() != theta.size() || state.m.size() != theta.size())
    throw NumericalError("adam_step: gradient length does not match parameters");
  if (!grad.allFinite()) throw NumericalError("adam_step: non-finite gradient");
  state.t += 1;
  const double b1 = cfg.adam_beta1;
  const double b2 = cfg.adam_beta2;
  state.m = b1 * state.m + (1.0 - b1) * grad;
  state.v = b2 * state.v + (1.0 - b2) * grad.cwiseAbs2();
  const double c1 = 1.0 - std::pow(b1, static_cast<double>(state.t));
  const double c2 = 1.0 - std::pow(b2, static_cast<double>(state.t));
  theta.array() -= cfg.learning_rate * (state.m.array() / c1) /
                   ((state.v.array() / c2).sqrt() + cfg.adam_epsilon);
}

TrainResult train(const Problem& problem, const TestSpace& space,
                  const TrainConfig& cfg) {
  cfg.validate();
  return train(problem, space, default_quadrature(space), cfg,
               mlp_init(cfg.architecture, cfg.seed));
}

TrainResult train(const Problem& problem, const TestSpace& space,
                  const QuadratureRule& quad, const TrainConfig& cfg,
                  MlpParams initial) {
  cfg.validate();
  const LossEvaluator evaluator(problem, space, quad);

  std::optional<ExactSolution> exact;
  try {
    exact = exact_solution(problem);
  } catch (const NoExactSolution&) {
  }
  const double mu = continuity_constant(problem);

  TrainResult result;
  MlpParams params = std::move(initial);
  Eigen::VectorXd theta = params.flatten();
  AdamState adam(params.parameter_count());
  result.best_params = params;
  result.best_loss = std::numeric_limits<double>::infinity();

  for (int epoch = 0;; ++epoch) {
    LossEvaluator::WithGradient eval;
    try {
      eval = evaluator.evaluate_with_gradient(params);
    } catch (const NumericalError& e) {
      throw TrainingAborted("epoch " + std::to_string(epoch) + ": " + e.what(),
                            std::move(result.history));
    }
    const ResidualAssembly& a = eval.assembly;
    if (!std::isfinite(a.loss))
      throw TrainingAborted("epoch " + std::to_string(epoch) + ": non-finite loss",
                            std::move(result.history));

    const bool last = epoch == cfg.max_epochs;
    if (epoch % cfg.record_every == 0 || last) {
      IterationRecord rec;
      rec.epoch = epoch;
      rec.loss = a.loss;
      rec.phi_norm = a.phi_norm;
      rec.penalty = a.penalty;
      if (exact) {
        const double err = energy_error(params, problem, *exact, cfg.error_nodes);
        rec.energy_error = err;
        rec.lower_bound_ok = a.phi_norm / mu <= err * (1.0 + cfg.bound_tolerance);
      }
      result.history.push_back(rec);
      if (a.loss < result.best_loss) {
        result.best_loss = a.loss;
        result.best_epoch = epoch;
        result.best_params = params;
      }
    }
    if (last) break;

    try {
      adam_step(adam, theta, eval.gradient, cfg);
    } catch (const NumericalError& e) {
      throw TrainingAborted("epoch " + std::to_string(epoch) + ": " + e.what(),
                            std::move(result.history));
    }
    params.unflatten(theta);
  }
  result.final_params = std::move(params);
  return result;
}

}  // namespace rvpinn

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
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "rvpinn/autodiff.hpp"
#include "rvpinn/common.hpp"

namespace rvpinn {

/// Weights and biases of a fully connected tanh network R -> R.
///
/// Layer l maps width architecture[l] to architecture[l + 1]. Hidden layers
/// use tanh, the output layer is affine. The flat parameter layout is, layer
/// by layer, the weight matrix in row-major order followed by the bias.
struct MlpParams {
  std::vector<int> architecture;
  std::vector<Eigen::MatrixXd> weights;  // out x in
  std::vector<Eigen::VectorXd> biases;
  std::uint64_t seed = 0;

  std::size_t layer_count() const { return weights.size(); }
  std::size_t parameter_count() const;

  Eigen::VectorXd flatten() const;
  /// Overwrites all weights and biases from a flat vector of length
  /// parameter_count().
  void unflatten(const Eigen::VectorXd& flat);
};

/// Architecture used by the benchmark runs: four hidden tanh layers of 25.
std::vector<int> default_architecture();

/// Glorot-uniform weights, zero biases. Deterministic in `seed`.
MlpParams mlp_init(std::span<const int> architecture, std::uint64_t seed);

struct PointValue {
  double u;
  double du_dx;
};

/// Network output and its exact spatial derivative at x.
PointValue mlp_eval(const MlpParams& params, double x, BcMode bc);

struct BatchValues {
  Eigen::VectorXd u;
  Eigen::VectorXd du_dx;
};

/// mlp_eval over many points without keeping intermediates.
BatchValues mlp_eval_batch(const MlpParams& params, std::span<const double> xs,
                           BcMode bc);

/// Forward pass over a batch of points that keeps every intermediate so the
/// parameter gradient of any loss depending on (u, du/dx) at those points can
/// be pulled back in a single reverse sweep.
///
/// The referenced parameters must outlive this object and stay unchanged.
class BatchEvaluation {
 public:
  BatchEvaluation(const MlpParams& params, std::span<const double> xs,
                  BcMode bc);

  std::size_t size() const { return static_cast<std::size_t>(x_.size()); }
  const Eigen::VectorXd& u() const { return u_; }
  const Eigen::VectorXd& du_dx() const { return du_; }

  /// Gradient with respect to the flat parameter vector of a scalar whose
  /// partials are `u_adjoint[i] = dJ/du(x_i)` and
  /// `du_adjoint[i] = dJ/d(du/dx)(x_i)`.
  Eigen::VectorXd backward(const Eigen::VectorXd& u_adjoint,
                           const Eigen::VectorXd& du_adjoint) const;

 private:
  const MlpParams* params_;
  BcMode bc_;
  Eigen::RowVectorXd x_;
  // Per layer input: [values | x-derivatives] side by side (width x 2N), and
  // the x-derivatives of the pre-activations. Index 0 holds the input x.
  std::vector<Eigen::MatrixXd> h_;
  std::vector<Eigen::MatrixXd> da_;
  Eigen::RowVectorXd raw_;
  Eigen::RowVectorXd draw_;
  Eigen::VectorXd u_;
  Eigen::VectorXd du_;
};

using TapedDual = ad::Dual<ad::Var>;

/// The network with every parameter registered as an independent variable on
/// a tape.
class TapedNetwork {
 public:
  TapedNetwork(const MlpParams& params, ad::Tape& tape);

  TapedDual eval(double x, BcMode bc) const;

  ad::Tape& tape() const { return *tape_; }
  const std::vector<ad::Var>& parameters() const { return flat_; }

 private:
  std::vector<int> architecture_;
  ad::Tape* tape_;
  std::vector<ad::Var> flat_;
  std::vector<std::size_t> offsets_;  // start of each layer in flat_
};

struct ScalarGradient {
  double value;
  Eigen::VectorXd gradient;
};

/// d(scalar_fn)/d(theta) through the scalar tape. `scalar_fn` must build its
/// result from network evaluations and tape arithmetic only.
///
/// Throws NumericalError naming the first parameter whose gradient is not
/// finite.
ScalarGradient grad_scalar(
    const MlpParams& params,
    const std::function<ad::Var(const TapedNetwork&)>& scalar_fn);

}  // namespace rvpinn

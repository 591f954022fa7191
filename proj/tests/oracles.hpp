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

// Test-only oracles. Nothing here calls into the code paths it is used to
// check.

#include <cmath>
#include <functional>
#include <random>

#include <Eigen/Dense>

#include "rvpinn/mlp.hpp"

namespace rvpinn::testing {

/// Central difference of a scalar function of the flat parameter vector.
inline Eigen::VectorXd finite_difference_gradient(
    MlpParams params, const std::function<double(const MlpParams&)>& f,
    double step = 1e-6) {
  const Eigen::VectorXd theta = params.flatten();
  Eigen::VectorXd g(theta.size());
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    Eigen::VectorXd t = theta;
    t[i] = theta[i] + step;
    params.unflatten(t);
    const double fp = f(params);
    t[i] = theta[i] - step;
    params.unflatten(t);
    const double fm = f(params);
    g[i] = (fp - fm) / (2.0 * step);
  }
  return g;
}

/// max_i |a_i - b_i| / max(1, |a_i|)
inline double max_relative_error(const Eigen::VectorXd& a,
                                 const Eigen::VectorXd& b) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    worst = std::max(worst, std::abs(a[i] - b[i]) / std::max(1.0, std::abs(a[i])));
  return worst;
}

/// Glorot weights plus random biases, so no parameter is inert.
inline MlpParams random_params(const std::vector<int>& arch, std::uint64_t seed) {
  MlpParams p = mlp_init(arch, seed);
  std::mt19937_64 gen(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> d(-0.5, 0.5);
  for (auto& b : p.biases)
    for (Eigen::Index i = 0; i < b.size(); ++i) b[i] = d(gen);
  return p;
}

/// Every weight and bias zero: u_theta == 0.
inline MlpParams zero_params(const std::vector<int>& arch) {
  MlpParams p = mlp_init(arch, 0);
  for (auto& w : p.weights) w.setZero();
  for (auto& b : p.biases) b.setZero();
  return p;
}

/// Composite Simpson rule with n (even) subintervals.
inline double simpson(const std::function<double(double)>& f, double a, double b,
                      int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

}  // namespace rvpinn::testing

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

#include <span>
#include <vector>

namespace rvpinn {

/// Fixed nodes and weights on [a, b].
class QuadratureRule {
 public:
  enum class Kind { GaussPerElement, Trapezoid };

  QuadratureRule(Kind kind, std::vector<double> nodes,
                 std::vector<double> weights, double a, double b);

  Kind kind() const { return kind_; }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }
  std::size_t size() const { return nodes_.size(); }
  double a() const { return a_; }
  double b() const { return b_; }

 private:
  Kind kind_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
  double a_;
  double b_;
};

/// Composite Gauss-Legendre with `points_per_element` (1..5) nodes in every
/// cell [mesh[i], mesh[i+1]].
QuadratureRule gauss_legendre(int points_per_element,
                              std::span<const double> mesh);

/// Composite trapezoid on `n_nodes` equispaced points including a and b.
QuadratureRule trapezoid(int n_nodes, double a, double b);

/// sum_q w_q f(x_q), accumulated in node order.
template <class F>
auto integrate(const QuadratureRule& rule, F&& f) {
  using R = decltype(f(0.0));
  R sum = R(0.0);
  const auto& x = rule.nodes();
  const auto& w = rule.weights();
  for (std::size_t q = 0; q < x.size(); ++q) sum = sum + w[q] * f(x[q]);
  return sum;
}

/// Same as integrate() for integrand values already sampled at the nodes.
double integrate_values(const QuadratureRule& rule,
                        std::span<const double> values);

}  // namespace rvpinn

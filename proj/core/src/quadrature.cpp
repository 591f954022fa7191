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

#include "rvpinn/quadrature.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "rvpinn/common.hpp"

namespace rvpinn {

namespace {

struct ReferenceRule {
  std::vector<double> x;  // on [-1, 1], ascending
  std::vector<double> w;
};

// Closed-form Gauss-Legendre nodes and weights on [-1, 1].
ReferenceRule reference_gauss(int p) {
  switch (p) {
    case 1:
      return {{0.0}, {2.0}};
    case 2: {
      const double a = 1.0 / std::sqrt(3.0);
      return {{-a, a}, {1.0, 1.0}};
    }
    case 3: {
      const double a = std::sqrt(3.0 / 5.0);
      return {{-a, 0.0, a}, {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0}};
    }
    case 4: {
      const double r = 2.0 / 7.0 * std::sqrt(6.0 / 5.0);
      const double inner = std::sqrt(3.0 / 7.0 - r);
      const double outer = std::sqrt(3.0 / 7.0 + r);
      const double s = std::sqrt(30.0);
      const double wi = (18.0 + s) / 36.0;
      const double wo = (18.0 - s) / 36.0;
      return {{-outer, -inner, inner, outer}, {wo, wi, wi, wo}};
    }
    case 5: {
      const double r = 2.0 * std::sqrt(10.0 / 7.0);
      const double inner = std::sqrt(5.0 - r) / 3.0;
      const double outer = std::sqrt(5.0 + r) / 3.0;
      const double s = 13.0 * std::sqrt(70.0);
      const double wi = (322.0 + s) / 900.0;
      const double wo = (322.0 - s) / 900.0;
      return {{-outer, -inner, 0.0, inner, outer},
              {wo, wi, 128.0 / 225.0, wi, wo}};
    }
    default:
      throw ConfigError("Gauss-Legendre rules are available for 1..5 points");
  }
}

}  // namespace

QuadratureRule::QuadratureRule(Kind kind, std::vector<double> nodes,
                               std::vector<double> weights, double a, double b)
    : kind_(kind),
      nodes_(std::move(nodes)),
      weights_(std::move(weights)),
      a_(a),
      b_(b) {
  if (nodes_.size() != weights_.size())
    throw std::invalid_argument("quadrature nodes and weights differ in size");
}

QuadratureRule gauss_legendre(int points_per_element,
                              std::span<const double> mesh) {
  const ReferenceRule ref = reference_gauss(points_per_element);
  if (mesh.size() < 2) throw ConfigError("mesh needs at least two nodes");
  for (std::size_t i = 0; i + 1 < mesh.size(); ++i)
    if (!(mesh[i] < mesh[i + 1]))
      throw ConfigError("mesh nodes must be strictly increasing");

  std::vector<double> x, w;
  x.reserve((mesh.size() - 1) * ref.x.size());
  w.reserve(x.capacity());
  for (std::size_t e = 0; e + 1 < mesh.size(); ++e) {
    const double mid = 0.5 * (mesh[e] + mesh[e + 1]);
    const double half = 0.5 * (mesh[e + 1] - mesh[e]);
    for (std::size_t q = 0; q < ref.x.size(); ++q) {
      x.push_back(mid + half * ref.x[q]);
      w.push_back(half * ref.w[q]);
    }
  }
  return QuadratureRule(QuadratureRule::Kind::GaussPerElement, std::move(x),
                        std::move(w), mesh.front(), mesh.back());
}

QuadratureRule trapezoid(int n_nodes, double a, double b) {
  if (n_nodes < 2) throw ConfigError("trapezoid rule needs at least 2 nodes");
  if (!(a < b)) throw ConfigError("trapezoid rule needs a < b");
  const auto n = static_cast<std::size_t>(n_nodes);
  const double h = (b - a) / static_cast<double>(n - 1);
  std::vector<double> x(n), w(n, h);
  for (std::size_t i = 0; i < n; ++i) x[i] = a + static_cast<double>(i) * h;
  x.back() = b;
  w.front() = w.back() = 0.5 * h;
  return QuadratureRule(QuadratureRule::Kind::Trapezoid, std::move(x),
                        std::move(w), a, b);
}

double integrate_values(const QuadratureRule& rule,
                        std::span<const double> values) {
  if (values.size() != rule.size())
    throw std::invalid_argument("integrand sample count does not match rule");
  double sum = 0.0;
  for (std::size_t q = 0; q < values.size(); ++q)
    sum += rule.weights()[q] * values[q];
  return sum;
}

}  // namespace rvpinn

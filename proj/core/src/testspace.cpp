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

#include "rvpinn/testspace.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "rvpinn/common.hpp"

namespace rvpinn {

using std::numbers::pi;

namespace {
constexpr int kFeGaussPoints = 5;
constexpr int kSpectralTrapezoidNodes = 4000;
}  // namespace

TestSpace::TestSpace(Kind kind, int dimension, double epsilon)
    : kind_(kind), dimension_(dimension), epsilon_(epsilon) {
  if (dimension < 1) throw ConfigError("test space dimension must be >= 1");
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  scales_.assign(static_cast<std::size_t>(dimension), 1.0);
}

TestSpace TestSpace::fe(int dimension) {
  return TestSpace(Kind::Fe, dimension, 1.0);
}

TestSpace TestSpace::spectral(int dimension, double epsilon) {
  return TestSpace(Kind::Spectral, dimension, epsilon);
}

std::vector<double> TestSpace::mesh() const {
  const int cells = dimension_ + 1;
  std::vector<double> x(static_cast<std::size_t>(cells + 1));
  for (int i = 0; i <= cells; ++i) x[static_cast<std::size_t>(i)] = -1.0 + i * h();
  x.back() = 1.0;
  return x;
}

TestSpace TestSpace::rescaled(int m, double c) const {
  if (m < 1 || m > dimension_) throw std::out_of_range("basis index");
  if (c == 0.0) throw ConfigError("basis scale factor must be non-zero");
  TestSpace copy = *this;
  copy.scales_[static_cast<std::size_t>(m - 1)] *= c;
  return copy;
}

bool TestSpace::unit_scales() const {
  return std::all_of(scales_.begin(), scales_.end(),
                     [](double s) { return s == 1.0; });
}

BasisValue basis_eval(const TestSpace& space, int m, double x) {
  if (m < 1 || m > space.dimension())
    throw std::out_of_range("basis index " + std::to_string(m) +
                            " outside 1.." + std::to_string(space.dimension()));
  const double c = space.scale(m);
  if (space.kind() == TestSpace::Kind::Spectral) {
    if (x <= -1.0 || x >= 1.0) {
      // sin(m pi) is not exactly zero in floating point.
      const double t = m * pi * (x + 1.0) / 2.0;
      return {0.0, c * std::cos(t) / std::sqrt(space.epsilon())};
    }
    const double t = m * pi * (x + 1.0) / 2.0;
    const double sq = std::sqrt(space.epsilon());
    return {c * 2.0 * std::sin(t) / (sq * pi * m), c * std::cos(t) / sq};
  }
  const double h = space.h();
  const double left = -1.0 + (m - 1) * h;
  const double center = -1.0 + m * h;
  const double right = -1.0 + (m + 1) * h;
  if (x < left || x >= right) return {0.0, 0.0};
  if (x < center) return {c * (x - left) / h, c / h};
  return {c * (right - x) / h, -c / h};
}

QuadratureRule default_quadrature(const TestSpace& space) {
  if (space.kind() == TestSpace::Kind::Fe) {
    const std::vector<double> mesh = space.mesh();
    return gauss_legendre(kFeGaussPoints, mesh);
  }
  return trapezoid(kSpectralTrapezoidNodes, -1.0, 1.0);
}

Eigen::MatrixXd gram_assemble(const TestSpace& space, double epsilon) {
  const int n = space.dimension();
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
  if (space.kind() == TestSpace::Kind::Spectral) {
    // Normalized for space.epsilon(); a different weight rescales uniformly.
    const double ratio = epsilon / space.epsilon();
    for (int m = 1; m <= n; ++m) g(m - 1, m - 1) = ratio;
  } else {
    const double h = space.h();
    for (int m = 0; m < n; ++m) {
      g(m, m) = 2.0 * epsilon / h;
      if (m + 1 < n) g(m, m + 1) = g(m + 1, m) = -epsilon / h;
    }
  }
  if (!space.unit_scales()) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g(i, j) *= space.scale(i + 1) * space.scale(j + 1);
  }
  return g;
}

Eigen::MatrixXd gram_assemble_numeric(const TestSpace& space, double epsilon,
                                      const QuadratureRule& quad) {
  const int n = space.dimension();
  const auto& x = quad.nodes();
  const auto& w = quad.weights();
  Eigen::MatrixXd d(n, static_cast<Eigen::Index>(x.size()));
  for (int m = 1; m <= n; ++m)
    for (std::size_t q = 0; q < x.size(); ++q)
      d(m - 1, static_cast<Eigen::Index>(q)) = basis_eval(space, m, x[q]).derivative;
  const Eigen::Map<const Eigen::VectorXd> wv(w.data(), static_cast<Eigen::Index>(w.size()));
  return epsilon * d * wv.asDiagonal() * d.transpose();
}

GramFactorization gram_factorize(const Eigen::MatrixXd& gram) {
  if (gram.rows() != gram.cols() || gram.rows() == 0)
    throw NotSpdError("Gram matrix must be square and non-empty");
  const double tol = 1e-12 * gram.cwiseAbs().maxCoeff();
  if ((gram - gram.transpose()).cwiseAbs().maxCoeff() > tol)
    throw NotSpdError("Gram matrix not SPD: not symmetric");
  Eigen::LLT<Eigen::MatrixXd> llt(gram);
  if (llt.info() != Eigen::Success)
    throw NotSpdError("Gram matrix not SPD: non-positive pivot");
  GramFactorization f;
  f.gram_ = gram;
  f.lower_ = llt.matrixL();
  for (Eigen::Index i = 0; i < f.lower_.rows(); ++i)
    if (!(f.lower_(i, i) > 0.0))
      throw NotSpdError("Gram matrix not SPD: non-positive pivot");
  return f;
}

Eigen::VectorXd riesz_solve(const GramFactorization& fact,
                            const Eigen::VectorXd& rhs) {
  if (rhs.size() != fact.dimension())
    throw std::invalid_argument("riesz_solve: dimension mismatch");
  Eigen::VectorXd y = fact.lower().triangularView<Eigen::Lower>().solve(rhs);
  fact.lower().transpose().triangularView<Eigen::Upper>().solveInPlace(y);
  return y;
}

const char* to_string(TestSpace::Kind kind) {
  return kind == TestSpace::Kind::Fe ? "fe" : "spectral";
}

}  // namespace rvpinn

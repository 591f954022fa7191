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

#include <Eigen/Dense>

#include "rvpinn/quadrature.hpp"

namespace rvpinn {

/// Discrete test space V_M inside H^1_0(-1, 1).
///
/// Fe: the M interior hat functions of a uniform mesh with M + 1 cells,
/// nodes x_i = -1 + i h, h = 2 / (M + 1).
/// Spectral: phi_m = 2 sin(m pi (x + 1) / 2) / (sqrt(eps) pi m), which is
/// orthonormal in the eps-weighted H^1 seminorm.
///
/// Every basis function can carry an extra scale factor (default 1); this is
/// how the basis-rescaling experiments replace phi_k by c phi_k.
class TestSpace {
 public:
  enum class Kind { Fe, Spectral };

  static TestSpace fe(int dimension);
  static TestSpace spectral(int dimension, double epsilon);

  Kind kind() const { return kind_; }
  int dimension() const { return dimension_; }
  /// Diffusion coefficient the spectral basis is normalized with.
  double epsilon() const { return epsilon_; }

  /// FE mesh spacing; 2 / (M + 1).
  double h() const { return 2.0 / (dimension_ + 1); }
  /// FE mesh nodes x_0 = -1, ..., x_{M+1} = 1.
  std::vector<double> mesh() const;

  double scale(int m) const { return scales_[static_cast<std::size_t>(m - 1)]; }
  /// Copy with phi_m replaced by c phi_m.
  TestSpace rescaled(int m, double c) const;
  bool unit_scales() const;

 private:
  TestSpace(Kind kind, int dimension, double epsilon);

  Kind kind_;
  int dimension_;
  double epsilon_;
  std::vector<double> scales_;
};

struct BasisValue {
  double value;
  double derivative;
};

/// phi_m(x) and phi_m'(x) for 1 <= m <= M. FE derivatives are
/// right-continuous at mesh nodes.
BasisValue basis_eval(const TestSpace& space, int m, double x);

/// The default rule for a space: 5-point Gauss per FE cell, or the
/// 4000-node trapezoid rule for spectral functions.
QuadratureRule default_quadrature(const TestSpace& space);

/// G_nm = eps (phi_m', phi_n')_0. FE entries come from closed-form element
/// integrals; the unscaled spectral Gram matrix is the identity.
Eigen::MatrixXd gram_assemble(const TestSpace& space, double epsilon);

/// Same matrix, integrated with `quad` instead of closed forms.
Eigen::MatrixXd gram_assemble_numeric(const TestSpace& space, double epsilon,
                                      const QuadratureRule& quad);

/// Cholesky factorization G = L L^T, built once per run.
class GramFactorization {
 public:
  const Eigen::MatrixXd& gram() const { return gram_; }
  const Eigen::MatrixXd& lower() const { return lower_; }
  int dimension() const { return static_cast<int>(gram_.rows()); }

 private:
  friend GramFactorization gram_factorize(const Eigen::MatrixXd& gram);
  Eigen::MatrixXd gram_;
  Eigen::MatrixXd lower_;
};

/// Throws NotSpdError on a non-positive pivot or an asymmetric matrix.
GramFactorization gram_factorize(const Eigen::MatrixXd& gram);

/// Solves G eta = R by forward and back substitution against the stored
/// factor. Generic in the scalar so it can run on an autodiff tape.
template <class T>
std::vector<T> riesz_solve(const GramFactorization& fact,
                           std::span<const T> rhs) {
  const Eigen::MatrixXd& L = fact.lower();
  const auto n = static_cast<std::size_t>(L.rows());
  if (rhs.size() != n)
    throw std::invalid_argument("riesz_solve: dimension mismatch");
  std::vector<T> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    T s = rhs[i];
    for (std::size_t j = 0; j < i; ++j)
      s = s - L(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * y[j];
    y[i] = s * (1.0 / L(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)));
  }
  for (std::size_t i = n; i-- > 0;) {
    T s = y[i];
    for (std::size_t j = i + 1; j < n; ++j)
      s = s - L(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) * y[j];
    y[i] = s * (1.0 / L(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)));
  }
  return y;
}

Eigen::VectorXd riesz_solve(const GramFactorization& fact,
                            const Eigen::VectorXd& rhs);

const char* to_string(TestSpace::Kind kind);

}  // namespace rvpinn

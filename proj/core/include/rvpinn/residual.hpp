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

#include "rvpinn/autodiff.hpp"
#include "rvpinn/mlp.hpp"
#include "rvpinn/problem.hpp"
#include "rvpinn/quadrature.hpp"
#include "rvpinn/testspace.hpp"

namespace rvpinn {

/// Residual vector, its Riesz coefficients and the resulting loss.
/// Invariants: loss = R.eta + penalty and phi_norm^2 = R.eta.
struct ResidualAssembly {
  Eigen::VectorXd R;
  Eigen::VectorXd eta;
  double loss = 0.0;
  double phi_norm = 0.0;
  double penalty = 0.0;
};

/// R_n = l(phi_n) - sum_q w_q (eps u'(x_q) - beta u(x_q)) phi_n'(x_q).
///
/// The load vector l(phi_n) and the matrix B_nq = w_q phi_n'(x_q) depend only
/// on the problem, the test space and the rule, so they are computed once.
class ResidualOperator {
 public:
  ResidualOperator(Problem problem, TestSpace space, QuadratureRule quad);

  const Problem& problem() const { return problem_; }
  const TestSpace& space() const { return space_; }
  const QuadratureRule& quadrature() const { return quad_; }
  int dimension() const { return space_.dimension(); }

  const Eigen::VectorXd& load() const { return load_; }
  const Eigen::MatrixXd& derivative_weights() const { return b_; }

  /// R for a trial function sampled at the quadrature nodes.
  Eigen::VectorXd residual(const Eigen::VectorXd& u,
                           const Eigen::VectorXd& du) const;

  /// Given dJ/dR, accumulates dJ/du and dJ/du' at the quadrature nodes.
  void pullback(const Eigen::VectorXd& r_adjoint, Eigen::VectorXd& u_adjoint,
                Eigen::VectorXd& du_adjoint) const;

  template <class T>
  std::vector<T> residual(std::span<const ad::Dual<T>> field) const {
    const auto n_nodes = static_cast<Eigen::Index>(quad_.size());
    std::vector<T> flux;
    flux.reserve(field.size());
    for (const auto& f : field)
      flux.push_back(problem_.epsilon * f.dx - problem_.beta * f.value);
    std::vector<T> r;
    r.reserve(static_cast<std::size_t>(dimension()));
    for (Eigen::Index n = 0; n < b_.rows(); ++n) {
      T s = T(load_[n]);
      for (Eigen::Index q = 0; q < n_nodes; ++q)
        if (b_(n, q) != 0.0) s = s - b_(n, q) * flux[static_cast<std::size_t>(q)];
      r.push_back(s);
    }
    return r;
  }

 private:
  Problem problem_;
  TestSpace space_;
  QuadratureRule quad_;
  Eigen::VectorXd load_;
  Eigen::MatrixXd b_;
};

/// The Riesz-representative loss R^T G^{-1} R + C(u_theta) and its gradient.
class LossEvaluator {
 public:
  LossEvaluator(const Problem& problem, const TestSpace& space,
                const QuadratureRule& quad);
  LossEvaluator(const Problem& problem, const TestSpace& space,
                GramFactorization fact, const QuadratureRule& quad);

  const ResidualOperator& residual_operator() const { return op_; }
  const GramFactorization& factorization() const { return fact_; }
  BcMode bc() const { return op_.problem().bc; }

  ResidualAssembly evaluate(const MlpParams& params) const;

  struct WithGradient {
    ResidualAssembly assembly;
    Eigen::VectorXd gradient;
  };
  /// Loss and d(loss)/d(theta) from one batched forward and reverse pass.
  /// Uses d(R^T G^{-1} R)/dR = 2 eta.
  WithGradient evaluate_with_gradient(const MlpParams& params) const;

  /// Bypasses the network: u and du are samples of any trial function at the
  /// quadrature nodes, u_left/u_right its boundary values.
  ResidualAssembly assemble_field(const Eigen::VectorXd& u,
                                  const Eigen::VectorXd& du, double u_left,
                                  double u_right) const;

  /// The same loss recorded on a scalar tape.
  ad::Var evaluate_taped(const TapedNetwork& net) const;

  /// sum_n R_n^2 + C(u_theta); depends on how the basis is scaled.
  double classical_loss(const MlpParams& params) const;

 private:
  ResidualAssembly finish(Eigen::VectorXd R, double penalty) const;
  std::vector<double> batch_nodes() const;

  ResidualOperator op_;
  GramFactorization fact_;
};

Eigen::VectorXd residual_vector(const MlpParams& params, const Problem& problem,
                                const TestSpace& space,
                                const QuadratureRule& quad);

ResidualAssembly rvpinn_loss(const MlpParams& params, const Problem& problem,
                             const TestSpace& space,
                             const GramFactorization& fact,
                             const QuadratureRule& quad);

double classical_vpinn_loss(const MlpParams& params, const Problem& problem,
                            const TestSpace& space, const QuadratureRule& quad);

/// 0 under strong imposition, |u(-1)|^2 + |u(1)|^2 otherwise.
double boundary_penalty(const MlpParams& params, BcMode bc);

/// Loss of a spectral space written out as the weighted series
/// 4 / (eps pi^2) sum_m r(u, s_m)^2 / m^2 + C(u) with the unnormalized sines
/// s_m = sin(m pi (x + 1) / 2). Does not touch TestSpace or the Gram matrix.
double spectral_series_loss(const MlpParams& params, const Problem& problem,
                            int dimension, const QuadratureRule& quad);

}  // namespace rvpinn

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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rvpinn/residual.hpp"

namespace rvpinn {
namespace {

using testing::finite_difference_gradient;
using testing::max_relative_error;
using testing::random_params;
using testing::zero_params;

const std::vector<int> kSmallArch{1, 5, 5, 1};

ResidualAssembly inject_exact(const LossEvaluator& ev, const Problem& p) {
  const ExactSolution e = exact_solution(p);
  const auto& x = ev.residual_operator().quadrature().nodes();
  Eigen::VectorXd u(static_cast<Eigen::Index>(x.size()));
  Eigen::VectorXd du(u.size());
  for (std::size_t q = 0; q < x.size(); ++q) {
    u[static_cast<Eigen::Index>(q)] = e.u(x[q]);
    du[static_cast<Eigen::Index>(q)] = e.du_dx(x[q]);
  }
  return ev.assemble_field(u, du, e.u(-1.0), e.u(1.0));
}

// u(x) = w x + b on the linear [1, 1] network.
MlpParams affine_network(double w, double b) {
  MlpParams p = zero_params({1, 1});
  p.weights[0](0, 0) = w;
  p.biases[0][0] = b;
  return p;
}

TEST(Residual, ZeroNetworkDeltaSpectral) {
  const Problem p = make_delta_problem(BcMode::Strong);
  const TestSpace s = TestSpace::spectral(3, 1.0);
  const Eigen::VectorXd r = residual_vector(zero_params(kSmallArch), p, s, default_quadrature(s));
  EXPECT_NEAR(r[0], std::sqrt(2.0) / std::numbers::pi, 1e-15);
}

TEST(Residual, ExactSolutionInjection) {
  struct Case {
    Problem p;
    TestSpace s;
  };
  const std::vector<Case> cases{
      {make_smooth_problem(BcMode::Strong), TestSpace::spectral(50, 1.0)},
      {make_smooth_problem(BcMode::Strong), TestSpace::fe(100)},
      {make_advection_problem(0.1, BcMode::Strong), TestSpace::fe(100)},
      {make_advection_problem(0.1, BcMode::Constrained), TestSpace::fe(100)},
  };
  for (const auto& c : cases) {
    const LossEvaluator ev(c.p, c.s, default_quadrature(c.s));
    const ResidualAssembly a = inject_exact(ev, c.p);
    EXPECT_LT(a.R.cwiseAbs().maxCoeff(), 1e-6) << to_string(c.p.kind);
    EXPECT_LT(a.loss, 1e-10) << to_string(c.p.kind);
  }
}

TEST(Residual, TemplatedPathMatchesMatrixPath) {
  const Problem p = make_advection_problem(0.1, BcMode::Strong);
  const TestSpace s = TestSpace::fe(6);
  const ResidualOperator op(p, s, default_quadrature(s));
  const MlpParams params = random_params(kSmallArch, 4);
  const BatchValues v = mlp_eval_batch(params, op.quadrature().nodes(), p.bc);
  std::vector<ad::Dual<double>> field;
  for (Eigen::Index i = 0; i < v.u.size(); ++i) field.emplace_back(v.u[i], v.du_dx[i]);
  const auto r_t = op.residual(std::span<const ad::Dual<double>>(field));
  const Eigen::VectorXd r = op.residual(v.u, v.du_dx);
  for (int n = 0; n < 6; ++n) EXPECT_NEAR(r_t[static_cast<std::size_t>(n)], r[n], 1e-14);
}

TEST(Loss, PhiNormSquaredPlusPenaltyIsLoss) {
  for (BcMode bc : {BcMode::Strong, BcMode::Constrained}) {
    const Problem p = make_smooth_problem(bc);
    const TestSpace s = TestSpace::fe(12);
    const LossEvaluator ev(p, s, default_quadrature(s));
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const ResidualAssembly a = ev.evaluate(random_params(kSmallArch, seed));
      EXPECT_GE(a.phi_norm, 0.0);
      EXPECT_NEAR(a.phi_norm * a.phi_norm + a.penalty, a.loss, 1e-13 * a.loss);
      if (bc == BcMode::Strong) EXPECT_EQ(std::sqrt(a.loss), a.phi_norm);
    }
  }
}

TEST(Loss, ZeroResidualLeavesPenaltyOnly) {
  const Problem p = make_smooth_problem(BcMode::Constrained);
  const TestSpace s = TestSpace::fe(4);
  const auto n = static_cast<Eigen::Index>(default_quadrature(s).size());
  Problem homogeneous = p;
  homogeneous.source = ConstantSource{0.0};
  const LossEvaluator hev(homogeneous, s, default_quadrature(s));
  const ResidualAssembly a = hev.assemble_field(Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n), 0.3, 0.4);
  EXPECT_EQ(a.R.cwiseAbs().maxCoeff(), 0.0);
  EXPECT_DOUBLE_EQ(a.loss, 0.25);
}

TEST(Loss, SpectralQuadraticFormEqualsClassical) {
  for (double eps : {1.0, 0.1}) {
    for (BcMode bc : {BcMode::Strong, BcMode::Constrained}) {
      const Problem p = eps == 1.0 ? make_smooth_problem(bc) : make_advection_problem(eps, bc);
      const TestSpace s = TestSpace::spectral(20, eps);
      const auto quad = default_quadrature(s);
      const auto fact = gram_factorize(gram_assemble(s, eps));
      for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const MlpParams params = random_params(kSmallArch, seed);
        const double rv = rvpinn_loss(params, p, s, fact, quad).loss;
        const double cl = classical_vpinn_loss(params, p, s, quad);
        EXPECT_LE(std::abs(rv - cl), 1e-12 * rv);
      }
    }
  }
}

TEST(Loss, SeriesFormMatchesQuadraticForm) {
  std::mt19937_64 gen(77);
  for (int trial = 0; trial < 20; ++trial) {
    const double eps = trial % 2 ? 0.1 : 1.0;
    const BcMode bc = trial % 3 ? BcMode::Strong : BcMode::Constrained;
    const Problem p = eps == 1.0 ? make_smooth_problem(bc) : make_advection_problem(eps, bc);
    const TestSpace s = TestSpace::spectral(50, eps);
    const auto quad = default_quadrature(s);
    const MlpParams params = random_params(kSmallArch, gen());
    const double quadratic = LossEvaluator(p, s, quad).evaluate(params).loss;
    const double series = spectral_series_loss(params, p, 50, quad);
    EXPECT_LT(std::abs(series - quadratic) / quadratic, 1e-10);
  }
}

TEST(Loss, InvariantUnderBasisRescaling) {
  const Problem p = make_smooth_problem(BcMode::Strong);
  const TestSpace s = TestSpace::fe(10);
  const auto quad = default_quadrature(s);
  const MlpParams params = random_params(kSmallArch, 2);
  const double c = 1e3;
  const LossEvaluator base(p, s, quad);
  const LossEvaluator scaled(p, s.rescaled(4, c), quad);
  const ResidualAssembly a = base.evaluate(params);
  const ResidualAssembly b = scaled.evaluate(params);
  EXPECT_LT(std::abs(b.loss - a.loss) / a.loss, 1e-9);
  EXPECT_DOUBLE_EQ(b.R[3] * b.R[3], c * c * a.R[3] * a.R[3]);
  for (int n = 0; n < 10; ++n)
    if (n != 3) EXPECT_EQ(b.R[n], a.R[n]);
  const double classical_growth = scaled.classical_loss(params) - base.classical_loss(params);
  EXPECT_NEAR(classical_growth, (c * c - 1.0) * a.R[3] * a.R[3], 1e-9 * classical_growth);
}

TEST(Loss, InvariantUnderBasisPermutation) {
  const Problem p = make_delta_problem(BcMode::Strong);
  const TestSpace s = TestSpace::fe(15);
  const LossEvaluator ev(p, s, default_quadrature(s));
  const ResidualAssembly a = ev.evaluate(random_params(kSmallArch, 8));
  std::vector<int> perm(15);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), std::mt19937_64(1));
  Eigen::PermutationMatrix<Eigen::Dynamic> P(Eigen::Map<Eigen::VectorXi>(perm.data(), 15));
  const Eigen::MatrixXd g = P * ev.factorization().gram() * P.transpose();
  const Eigen::VectorXd r = P * a.R;
  const double q = r.dot(riesz_solve(gram_factorize(g), r));
  EXPECT_NEAR(q, a.loss, 1e-12 * a.loss);
}

TEST(Loss, GradientMatchesFiniteDifferences) {
  for (bool spectral : {false, true}) {
    for (BcMode bc : {BcMode::Strong, BcMode::Constrained}) {
      const Problem p = make_smooth_problem(bc);
      const TestSpace s = spectral ? TestSpace::spectral(5, 1.0) : TestSpace::fe(5);
      const LossEvaluator ev(p, s, default_quadrature(s));
      const MlpParams params = random_params(kSmallArch, 31);
      const auto g = ev.evaluate_with_gradient(params);
      const Eigen::VectorXd fd = finite_difference_gradient(
          params, [&](const MlpParams& q) { return ev.evaluate(q).loss; });
      EXPECT_LT(max_relative_error(g.gradient, fd), 1e-4)
          << (spectral ? "spectral " : "fe ") << to_string(bc);
      EXPECT_EQ(g.assembly.loss, ev.evaluate(params).loss);
    }
  }
}

TEST(Loss, BatchedGradientMatchesTape) {
  for (BcMode bc : {BcMode::Strong, BcMode::Constrained}) {
    const Problem p = make_advection_problem(0.1, bc);
    const TestSpace s = TestSpace::fe(7);
    const LossEvaluator ev(p, s, default_quadrature(s));
    const MlpParams params = random_params(kSmallArch, 5);
    const auto batched = ev.evaluate_with_gradient(params);
    const ScalarGradient taped =
        grad_scalar(params, [&](const TapedNetwork& net) { return ev.evaluate_taped(net); });
    EXPECT_LT(max_relative_error(batched.gradient, taped.gradient), 1e-10);
    EXPECT_NEAR(taped.value, batched.assembly.loss, 1e-12 * batched.assembly.loss);
  }
}

TEST(Loss, GradientOfZeroLossFieldIsZero) {
  // A zero-source problem and the zero network sit at the global minimum.
  Problem p;
  p.bc = BcMode::Constrained;
  const TestSpace s = TestSpace::fe(4);
  const LossEvaluator ev(p, s, default_quadrature(s));
  const auto g = ev.evaluate_with_gradient(zero_params(kSmallArch));
  EXPECT_EQ(g.assembly.loss, 0.0);
  EXPECT_EQ(g.gradient.cwiseAbs().maxCoeff(), 0.0);
}

TEST(BoundaryPenalty, SpecExamples) {
  EXPECT_EQ(boundary_penalty(random_params(kSmallArch, 1), BcMode::Strong), 0.0);
  // u(x) = -0.15 x - 0.05: u(-1) = 0.1, u(1) = -0.2
  EXPECT_NEAR(boundary_penalty(affine_network(-0.15, -0.05), BcMode::Constrained), 0.05, 1e-15);
}

TEST(LossEvaluator, MismatchedFactorization) {
  const Problem p = make_smooth_problem(BcMode::Strong);
  const TestSpace s = TestSpace::fe(5);
  EXPECT_THROW(LossEvaluator(p, s, gram_factorize(Eigen::MatrixXd::Identity(3, 3)),
                             default_quadrature(s)),
               std::invalid_argument);
}

}  // namespace
}  // namespace rvpinn

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

#include <cmath>
#include <cstring>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rvpinn/mlp.hpp"
#include "rvpinn/problem.hpp"
#include "rvpinn/residual.hpp"
#include "rvpinn/testspace.hpp"

namespace rvpinn {
namespace {

using testing::finite_difference_gradient;
using testing::max_relative_error;
using testing::random_params;

TEST(MlpInit, ParameterCountOfBenchmarkArchitecture) {
  // 1*25+25 + 3*(25*25+25) + 25*1+1
  const MlpParams p = mlp_init(default_architecture(), 3);
  EXPECT_EQ(p.parameter_count(), 2026u);
  EXPECT_EQ(p.flatten().size(), 2026);
}

TEST(MlpInit, SmallestNetwork) {
  const std::vector<int> arch{1, 1};
  EXPECT_EQ(mlp_init(arch, 0).parameter_count(), 2u);
}

TEST(MlpInit, DeterministicInSeed) {
  const auto a = mlp_init(default_architecture(), 42).flatten();
  const auto b = mlp_init(default_architecture(), 42).flatten();
  const auto c = mlp_init(default_architecture(), 43).flatten();
  EXPECT_EQ(0, std::memcmp(a.data(), b.data(), sizeof(double) * a.size()));
  EXPECT_NE(a, c);
}

TEST(MlpInit, GlorotBoundsAndZeroBiases) {
  const MlpParams p = mlp_init(default_architecture(), 1);
  for (std::size_t l = 0; l < p.layer_count(); ++l) {
    const double limit = std::sqrt(6.0 / (p.weights[l].rows() + p.weights[l].cols()));
    EXPECT_LE(p.weights[l].cwiseAbs().maxCoeff(), limit);
    EXPECT_EQ(p.biases[l].cwiseAbs().maxCoeff(), 0.0);
  }
}

TEST(MlpInit, RejectsInvalidArchitectures) {
  EXPECT_THROW(mlp_init(std::vector<int>{}, 0), ConfigError);
  EXPECT_THROW(mlp_init(std::vector<int>{1}, 0), ConfigError);
  EXPECT_THROW(mlp_init(std::vector<int>{1, 0, 1}, 0), ConfigError);
  EXPECT_THROW(mlp_init(std::vector<int>{2, 5, 1}, 0), ConfigError);
  EXPECT_THROW(mlp_init(std::vector<int>{1, 5, 3}, 0), ConfigError);
}

TEST(MlpParams, FlattenUnflattenRoundTrip) {
  std::mt19937_64 gen(9);
  std::uniform_real_distribution<double> d(-3.0, 3.0);
  for (int trial = 0; trial < 10; ++trial) {
    MlpParams p = mlp_init(std::vector<int>{1, 4, 7, 1}, trial);
    Eigen::VectorXd v(static_cast<Eigen::Index>(p.parameter_count()));
    for (auto& x : v) x = d(gen);
    p.unflatten(v);
    EXPECT_EQ(p.flatten(), v);
  }
  MlpParams p = mlp_init(std::vector<int>{1, 3, 1}, 0);
  EXPECT_THROW(p.unflatten(Eigen::VectorXd::Zero(3)), std::invalid_argument);
}

TEST(MlpEval, StrongBcVanishesAtBoundary) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const MlpParams p = random_params({1, 6, 6, 1}, seed);
    EXPECT_EQ(mlp_eval(p, -1.0, BcMode::Strong).u, 0.0);
    EXPECT_EQ(mlp_eval(p, 1.0, BcMode::Strong).u, 0.0);
  }
}

TEST(MlpEval, SpatialDerivativeMatchesFiniteDifferences) {
  const double h = 1e-6;
  for (BcMode bc : {BcMode::Strong, BcMode::Constrained}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const MlpParams p = random_params(default_architecture(), seed);
      for (double x : {-0.97, -0.5, 0.0, 0.31, 0.88}) {
        const double fd = (mlp_eval(p, x + h, bc).u - mlp_eval(p, x - h, bc).u) / (2 * h);
        const double du = mlp_eval(p, x, bc).du_dx;
        EXPECT_LT(std::abs(du - fd), 1e-6 * std::max(1.0, std::abs(du)));
      }
    }
  }
}

TEST(MlpEval, StrongBcProductRule) {
  const MlpParams p = random_params({1, 8, 8, 1}, 4);
  for (double x : {-0.9, -0.2, 0.45, 0.99}) {
    const PointValue raw = mlp_eval(p, x, BcMode::Constrained);
    const PointValue s = mlp_eval(p, x, BcMode::Strong);
    EXPECT_NEAR(s.u, raw.u * (x * x - 1.0), 1e-15);
    EXPECT_NEAR(s.du_dx, raw.du_dx * (x * x - 1.0) + raw.u * 2.0 * x, 1e-14);
  }
}

TEST(MlpEval, RepeatedCallsAreBitIdentical) {
  const MlpParams p = random_params(default_architecture(), 8);
  const PointValue a = mlp_eval(p, 0.123, BcMode::Strong);
  const PointValue b = mlp_eval(p, 0.123, BcMode::Strong);
  EXPECT_EQ(a.u, b.u);
  EXPECT_EQ(a.du_dx, b.du_dx);
}

TEST(BatchEvaluation, MatchesPointwiseEvaluation) {
  const MlpParams p = random_params(default_architecture(), 2);
  std::vector<double> xs;
  for (int i = 0; i <= 40; ++i) xs.push_back(-1.0 + i * 0.05);
  for (BcMode bc : {BcMode::Strong, BcMode::Constrained}) {
    const BatchEvaluation batch(p, xs, bc);
    const BatchValues values = mlp_eval_batch(p, xs, bc);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const PointValue pv = mlp_eval(p, xs[i], bc);
      const auto k = static_cast<Eigen::Index>(i);
      EXPECT_NEAR(batch.u()[k], pv.u, 1e-13);
      EXPECT_NEAR(batch.du_dx()[k], pv.du_dx, 1e-13);
      EXPECT_EQ(values.u[k], batch.u()[k]);
      EXPECT_EQ(values.du_dx[k], batch.du_dx()[k]);
    }
  }
}

// The batched reverse sweep and the scalar tape are independent routes to the
// same gradient of J = sum_i a_i u(x_i) + b_i u'(x_i).
TEST(BatchEvaluation, BackwardAgreesWithScalarTape) {
  const MlpParams p = random_params({1, 6, 5, 1}, 12);
  const std::vector<double> xs{-1.0, -0.6, -0.1, 0.25, 0.7, 1.0};
  std::mt19937_64 gen(1);
  std::normal_distribution<double> d;
  Eigen::VectorXd a(6), b(6);
  for (int i = 0; i < 6; ++i) {
    a[i] = d(gen);
    b[i] = d(gen);
  }
  for (BcMode bc : {BcMode::Strong, BcMode::Constrained}) {
    const BatchEvaluation batch(p, xs, bc);
    const Eigen::VectorXd g_batch = batch.backward(a, b);
    const ScalarGradient g_tape = grad_scalar(p, [&](const TapedNetwork& net) {
      ad::Var j(0.0);
      for (std::size_t i = 0; i < xs.size(); ++i) {
        const TapedDual v = net.eval(xs[i], bc);
        j = j + a[static_cast<Eigen::Index>(i)] * v.value +
            b[static_cast<Eigen::Index>(i)] * v.dx;
      }
      return j;
    });
    EXPECT_LT(max_relative_error(g_batch, g_tape.gradient), 1e-12);
  }
}

TEST(GradScalar, SquaredOutputMatchesFiniteDifferences) {
  const MlpParams p = random_params({1, 5, 1}, 3);
  const ScalarGradient g = grad_scalar(p, [](const TapedNetwork& net) {
    const ad::Var u = net.eval(0.3, BcMode::Constrained).value;
    return u * u;
  });
  const Eigen::VectorXd fd = finite_difference_gradient(p, [](const MlpParams& q) {
    const double u = mlp_eval(q, 0.3, BcMode::Constrained).u;
    return u * u;
  });
  EXPECT_LT(max_relative_error(g.gradient, fd), 1e-5);
  const double u = mlp_eval(p, 0.3, BcMode::Constrained).u;
  EXPECT_DOUBLE_EQ(g.value, u * u);
}

TEST(GradScalar, ConstantHasZeroGradient) {
  const MlpParams p = random_params({1, 5, 1}, 3);
  const ScalarGradient g =
      grad_scalar(p, [](const TapedNetwork&) { return ad::Var(4.0); });
  EXPECT_EQ(g.value, 4.0);
  EXPECT_EQ(g.gradient.size(), 16);
  EXPECT_EQ(g.gradient.cwiseAbs().maxCoeff(), 0.0);
}

TEST(GradScalar, NonFiniteIsANumericalError) {
  const MlpParams p = random_params({1, 5, 1}, 3);
  EXPECT_THROW(grad_scalar(p,
                           [](const TapedNetwork& net) {
                             const ad::Var u = net.eval(0.3, BcMode::Constrained).value;
                             return u / ad::Var(0.0);
                           }),
               NumericalError);
}

TEST(GradScalar, DifferentiatesThroughDerivativeChannel) {
  const MlpParams p = random_params({1, 4, 4, 1}, 6);
  const auto j = [](const TapedNetwork& net) {
    const TapedDual v = net.eval(-0.4, BcMode::Strong);
    return v.dx * v.dx + v.value;
  };
  const ScalarGradient g = grad_scalar(p, j);
  const Eigen::VectorXd fd = finite_difference_gradient(p, [](const MlpParams& q) {
    const PointValue v = mlp_eval(q, -0.4, BcMode::Strong);
    return v.du_dx * v.du_dx + v.u;
  });
  EXPECT_LT(max_relative_error(g.gradient, fd), 1e-5);
}

TEST(GradScalar, FullLossOnFiveFeFunctions) {
  const Problem problem = make_smooth_problem(BcMode::Strong);
  const TestSpace space = TestSpace::fe(5);
  const LossEvaluator ev(problem, space, default_quadrature(space));
  const MlpParams p = random_params({1, 5, 5, 1}, 21);
  const ScalarGradient g =
      grad_scalar(p, [&](const TapedNetwork& net) { return ev.evaluate_taped(net); });
  const Eigen::VectorXd fd = finite_difference_gradient(
      p, [&](const MlpParams& q) { return ev.evaluate(q).loss; });
  EXPECT_LT(max_relative_error(g.gradient, fd), 1e-4);
  EXPECT_NEAR(g.value, ev.evaluate(p).loss, 1e-12 * std::max(1.0, g.value));
}

}  // namespace
}  // namespace rvpinn

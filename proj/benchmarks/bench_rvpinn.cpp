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

#include <benchmark/benchmark.h>

#include "rvpinn/report.hpp"
#include "rvpinn/residual.hpp"
#include "rvpinn/trainer.hpp"

namespace {

using namespace rvpinn;

void BM_LossAndGradient(benchmark::State& state) {
  const bool spectral = state.range(0) == 1;
  const int m = static_cast<int>(state.range(1));
  const Problem p = make_smooth_problem(BcMode::Strong);
  const TestSpace s = spectral ? TestSpace::spectral(m, 1.0) : TestSpace::fe(m);
  const LossEvaluator ev(p, s, default_quadrature(s));
  const MlpParams params = mlp_init(default_architecture(), 0);
  for (auto _ : state) benchmark::DoNotOptimize(ev.evaluate_with_gradient(params));
  state.SetLabel(spectral ? "spectral" : "fe");
}
BENCHMARK(BM_LossAndGradient)->Args({1, 50})->Args({1, 200})->Args({0, 100})->Unit(benchmark::kMillisecond);

void BM_LossOnly(benchmark::State& state) {
  const Problem p = make_smooth_problem(BcMode::Strong);
  const TestSpace s = TestSpace::spectral(50, 1.0);
  const LossEvaluator ev(p, s, default_quadrature(s));
  const MlpParams params = mlp_init(default_architecture(), 0);
  for (auto _ : state) benchmark::DoNotOptimize(ev.evaluate(params));
}
BENCHMARK(BM_LossOnly)->Unit(benchmark::kMillisecond);

void BM_TapedGradient(benchmark::State& state) {
  const Problem p = make_smooth_problem(BcMode::Strong);
  const TestSpace s = TestSpace::fe(5);
  const LossEvaluator ev(p, s, default_quadrature(s));
  const MlpParams params = mlp_init(std::vector<int>{1, 5, 5, 1}, 0);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        grad_scalar(params, [&](const TapedNetwork& net) { return ev.evaluate_taped(net); }));
}
BENCHMARK(BM_TapedGradient)->Unit(benchmark::kMicrosecond);

void BM_EnergyError(benchmark::State& state) {
  const Problem p = make_smooth_problem(BcMode::Strong);
  const ExactSolution e = exact_solution(p);
  const MlpParams params = mlp_init(default_architecture(), 0);
  for (auto _ : state) benchmark::DoNotOptimize(energy_error(params, p, e));
}
BENCHMARK(BM_EnergyError)->Unit(benchmark::kMillisecond);

void BM_GramFactorize(benchmark::State& state) {
  const Eigen::MatrixXd g = gram_assemble(TestSpace::fe(static_cast<int>(state.range(0))), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(gram_factorize(g));
}
BENCHMARK(BM_GramFactorize)->Arg(100)->Arg(400);

void BM_RieszSolve(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const GramFactorization f = gram_factorize(gram_assemble(TestSpace::fe(m), 1.0));
  const Eigen::VectorXd r = Eigen::VectorXd::LinSpaced(m, -1.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(riesz_solve(f, r));
}
BENCHMARK(BM_RieszSolve)->Arg(100)->Arg(400);

void BM_AdamStep(benchmark::State& state) {
  const TrainConfig cfg;
  Eigen::VectorXd theta = mlp_init(default_architecture(), 0).flatten();
  const Eigen::VectorXd g = Eigen::VectorXd::Constant(theta.size(), 1e-3);
  AdamState adam(static_cast<std::size_t>(theta.size()));
  for (auto _ : state) adam_step(adam, theta, g, cfg);
}
BENCHMARK(BM_AdamStep);

}  // namespace

BENCHMARK_MAIN();

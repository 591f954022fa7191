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

#include "rvpinn/residual.hpp"

#include <cmath>
#include <numbers>

namespace rvpinn {

namespace {
// Quadratic forms below this are treated as rounding noise around zero.
constexpr double kSpdSlack = -1e-12;
}  // namespace

ResidualOperator::ResidualOperator(Problem problem, TestSpace space,
                                   QuadratureRule quad)
    : problem_(std::move(problem)),
      space_(std::move(space)),
      quad_(std::move(quad)) {
  problem_.validate();
  const int m_count = space_.dimension();
  const auto& x = quad_.nodes();
  const auto& w = quad_.weights();
  load_.resize(m_count);
  b_.resize(m_count, static_cast<Eigen::Index>(x.size()));
  for (int m = 1; m <= m_count; ++m) {
    load_[m - 1] = linear_l(
        problem_, [&](double t) { return basis_eval(space_, m, t).value; },
        quad_);
    for (std::size_t q = 0; q < x.size(); ++q)
      b_(m - 1, static_cast<Eigen::Index>(q)) =
          w[q] * basis_eval(space_, m, x[q]).derivative;
  }
}

Eigen::VectorXd ResidualOperator::residual(const Eigen::VectorXd& u,
                                           const Eigen::VectorXd& du) const {
  const Eigen::VectorXd flux = problem_.epsilon * du - problem_.beta * u;
  Eigen::VectorXd r = load_;
  r.noalias() -= b_ * flux;
  return r;
}

void ResidualOperator::pullback(const Eigen::VectorXd& r_adjoint,
                                Eigen::VectorXd& u_adjoint,
                                Eigen::VectorXd& du_adjoint) const {
  const Eigen::VectorXd flux_adj = -(b_.transpose() * r_adjoint);
  du_adjoint.head(flux_adj.size()) += problem_.epsilon * flux_adj;
  u_adjoint.head(flux_adj.size()) -= problem_.beta * flux_adj;
}

LossEvaluator::LossEvaluator(const Problem& problem, const TestSpace& space,
                             const QuadratureRule& quad)
    : LossEvaluator(problem, space,
                    gram_factorize(gram_assemble(space, problem.epsilon)),
                    quad) {}

LossEvaluator::LossEvaluator(const Problem& problem, const TestSpace& space,
                             GramFactorization fact, const QuadratureRule& quad)
    : op_(problem, space, quad), fact_(std::move(fact)) {
  if (fact_.dimension() != space.dimension())
    throw std::invalid_argument("Gram factorization does not match test space");
}

std::vector<double> LossEvaluator::batch_nodes() const {
  std::vector<double> xs = op_.quadrature().nodes();
  if (bc() == BcMode::Constrained) {
    xs.push_back(Problem::kLeft);
    xs.push_back(Problem::kRight);
  }
  return xs;
}

ResidualAssembly LossEvaluator::finish(Eigen::VectorXd R,
                                       double penalty) const {
  ResidualAssembly a;
  a.eta = riesz_solve(fact_, R);
  const double q = R.dot(a.eta);
  if (!std::isfinite(q)) throw NumericalError("non-finite residual norm");
  if (q < kSpdSlack)
    throw NumericalError("negative R^T G^-1 R; Gram matrix is not SPD");
  a.R = std::move(R);
  a.penalty = penalty;
  a.phi_norm = std::sqrt(std::max(q, 0.0));
  a.loss = std::max(q, 0.0) + penalty;
  return a;
}

ResidualAssembly LossEvaluator::evaluate(const MlpParams& params) const {
  const std::vector<double> xs = batch_nodes();
  const BatchEvaluation batch(params, xs, bc());
  const auto nq = static_cast<Eigen::Index>(op_.quadrature().size());
  Eigen::VectorXd R = op_.residual(batch.u().head(nq), batch.du_dx().head(nq));
  double penalty = 0.0;
  if (bc() == BcMode::Constrained)
    penalty = batch.u()[nq] * batch.u()[nq] + batch.u()[nq + 1] * batch.u()[nq + 1];
  return finish(std::move(R), penalty);
}

LossEvaluator::WithGradient LossEvaluator::evaluate_with_gradient(
    const MlpParams& params) const {
  const std::vector<double> xs = batch_nodes();
  const BatchEvaluation batch(params, xs, bc());
  const auto nq = static_cast<Eigen::Index>(op_.quadrature().size());
  Eigen::VectorXd R = op_.residual(batch.u().head(nq), batch.du_dx().head(nq));
  double penalty = 0.0;
  Eigen::VectorXd u_adj = Eigen::VectorXd::Zero(batch.u().size());
  Eigen::VectorXd du_adj = Eigen::VectorXd::Zero(batch.u().size());
  if (bc() == BcMode::Constrained) {
    const double ul = batch.u()[nq];
    const double ur = batch.u()[nq + 1];
    penalty = ul * ul + ur * ur;
    u_adj[nq] = 2.0 * ul;
    u_adj[nq + 1] = 2.0 * ur;
  }
  WithGradient out;
  out.assembly = finish(std::move(R), penalty);
  op_.pullback(2.0 * out.assembly.eta, u_adj, du_adj);
  out.gradient = batch.backward(u_adj, du_adj);
  return out;
}

ResidualAssembly LossEvaluator::assemble_field(const Eigen::VectorXd& u,
                                               const Eigen::VectorXd& du,
                                               double u_left,
                                               double u_right) const {
  const double penalty =
      bc() == BcMode::Constrained ? u_left * u_left + u_right * u_right : 0.0;
  return finish(op_.residual(u, du), penalty);
}

ad::Var LossEvaluator::evaluate_taped(const TapedNetwork& net) const {
  const auto& nodes = op_.quadrature().nodes();
  std::vector<TapedDual> field;
  field.reserve(nodes.size());
  for (double x : nodes) field.push_back(net.eval(x, bc()));
  const std::vector<ad::Var> R =
      op_.residual(std::span<const TapedDual>(field));
  const std::vector<ad::Var> eta =
      riesz_solve(fact_, std::span<const ad::Var>(R));
  ad::Var loss(0.0);
  for (std::size_t n = 0; n < R.size(); ++n) loss = loss + R[n] * eta[n];
  if (bc() == BcMode::Constrained) {
    const ad::Var ul = net.eval(Problem::kLeft, bc()).value;
    const ad::Var ur = net.eval(Problem::kRight, bc()).value;
    loss = loss + ul * ul + ur * ur;
  }
  return loss;
}

double LossEvaluator::classical_loss(const MlpParams& params) const {
  const ResidualAssembly a = evaluate(params);
  return a.R.squaredNorm() + a.penalty;
}

Eigen::VectorXd residual_vector(const MlpParams& params, const Problem& problem,
                                const TestSpace& space,
                                const QuadratureRule& quad) {
  const ResidualOperator op(problem, space, quad);
  const BatchValues batch = mlp_eval_batch(params, quad.nodes(), problem.bc);
  return op.residual(batch.u, batch.du_dx);
}

ResidualAssembly rvpinn_loss(const MlpParams& params, const Problem& problem,
                             const TestSpace& space,
                             const GramFactorization& fact,
                             const QuadratureRule& quad) {
  return LossEvaluator(problem, space, fact, quad).evaluate(params);
}

double classical_vpinn_loss(const MlpParams& params, const Problem& problem,
                            const TestSpace& space,
                            const QuadratureRule& quad) {
  return residual_vector(params, problem, space, quad).squaredNorm() +
         boundary_penalty(params, problem.bc);
}

double boundary_penalty(const MlpParams& params, BcMode bc) {
  if (bc == BcMode::Strong) return 0.0;
  const double ul = mlp_eval(params, Problem::kLeft, bc).u;
  const double ur = mlp_eval(params, Problem::kRight, bc).u;
  return ul * ul + ur * ur;
}

double spectral_series_loss(const MlpParams& params, const Problem& problem,
                            int dimension, const QuadratureRule& quad) {
  using std::numbers::pi;
  const BatchValues batch = mlp_eval_batch(params, quad.nodes(), problem.bc);
  const auto& x = quad.nodes();
  const auto& w = quad.weights();
  double sum = 0.0;
  for (int m = 1; m <= dimension; ++m) {
    const double k = m * pi / 2.0;
    const auto s = [k](double t) {
      return (t <= -1.0 || t >= 1.0) ? 0.0 : std::sin(k * (t + 1.0));
    };
    double r = linear_l(problem, s, quad);
    for (std::size_t q = 0; q < x.size(); ++q) {
      const auto i = static_cast<Eigen::Index>(q);
      const double flux =
          problem.epsilon * batch.du_dx[i] - problem.beta * batch.u[i];
      r -= w[q] * flux * k * std::cos(k * (x[q] + 1.0));
    }
    sum += r * r / (static_cast<double>(m) * m);
  }
  return 4.0 / (problem.epsilon * pi * pi) * sum +
         boundary_penalty(params, problem.bc);
}

}  // namespace rvpinn

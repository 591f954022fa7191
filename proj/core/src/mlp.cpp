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

#include "rvpinn/mlp.hpp"

#include <cmath>
#include <random>
#include <string>

namespace rvpinn {

namespace {

void check_architecture(std::span<const int> architecture) {
  if (architecture.size() < 2)
    throw ConfigError("architecture needs at least an input and output width");
  if (architecture.front() != 1 || architecture.back() != 1)
    throw ConfigError("architecture must start and end with width 1");
  for (int w : architecture)
    if (w < 1) throw ConfigError("architecture widths must be >= 1");
}

// Uniform double in [0, 1) from the top 53 bits; independent of the
// standard library's distribution implementation.
double unit_uniform(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

// tanh(a) = 1 - 2 / (exp(2a) + 1). Eigen vectorizes exp but not tanh for
// doubles; absolute error stays within a few ulps of 1.
Eigen::ArrayXXd fast_tanh(const Eigen::ArrayXXd& a) {
  return 1.0 - 2.0 / ((2.0 * a).exp() + 1.0);
}

}  // namespace

std::vector<int> default_architecture() { return {1, 25, 25, 25, 25, 1}; }

std::size_t MlpParams::parameter_count() const {
  std::size_t n = 0;
  for (std::size_t l = 0; l < weights.size(); ++l)
    n += static_cast<std::size_t>(weights[l].size() + biases[l].size());
  return n;
}

Eigen::VectorXd MlpParams::flatten() const {
  Eigen::VectorXd flat(static_cast<Eigen::Index>(parameter_count()));
  Eigen::Index k = 0;
  for (std::size_t l = 0; l < weights.size(); ++l) {
    const auto& w = weights[l];
    for (Eigen::Index i = 0; i < w.rows(); ++i)
      for (Eigen::Index j = 0; j < w.cols(); ++j) flat[k++] = w(i, j);
    for (Eigen::Index i = 0; i < biases[l].size(); ++i) flat[k++] = biases[l][i];
  }
  return flat;
}

void MlpParams::unflatten(const Eigen::VectorXd& flat) {
  if (static_cast<std::size_t>(flat.size()) != parameter_count())
    throw std::invalid_argument("flat parameter vector has wrong length");
  Eigen::Index k = 0;
  for (std::size_t l = 0; l < weights.size(); ++l) {
    auto& w = weights[l];
    for (Eigen::Index i = 0; i < w.rows(); ++i)
      for (Eigen::Index j = 0; j < w.cols(); ++j) w(i, j) = flat[k++];
    for (Eigen::Index i = 0; i < biases[l].size(); ++i) biases[l][i] = flat[k++];
  }
}

MlpParams mlp_init(std::span<const int> architecture, std::uint64_t seed) {
  check_architecture(architecture);
  MlpParams p;
  p.architecture.assign(architecture.begin(), architecture.end());
  p.seed = seed;
  std::mt19937_64 gen(seed);
  for (std::size_t l = 0; l + 1 < architecture.size(); ++l) {
    const int in = architecture[l];
    const int out = architecture[l + 1];
    const double limit = std::sqrt(6.0 / static_cast<double>(in + out));
    Eigen::MatrixXd w(out, in);
    for (int i = 0; i < out; ++i)
      for (int j = 0; j < in; ++j)
        w(i, j) = (2.0 * unit_uniform(gen) - 1.0) * limit;
    p.weights.push_back(std::move(w));
    p.biases.push_back(Eigen::VectorXd::Zero(out));
  }
  return p;
}

PointValue mlp_eval(const MlpParams& params, double x, BcMode bc) {
  Eigen::VectorXd z(1), dz(1);
  z[0] = x;
  dz[0] = 1.0;
  const std::size_t last = params.layer_count() - 1;
  for (std::size_t l = 0; l < last; ++l) {
    Eigen::VectorXd a = params.weights[l] * z + params.biases[l];
    Eigen::VectorXd da = params.weights[l] * dz;
    z = a.array().tanh();
    dz = (1.0 - z.array().square()) * da.array();
  }
  const double raw = (params.weights[last] * z + params.biases[last])[0];
  const double draw = (params.weights[last] * dz)[0];
  if (bc == BcMode::Constrained) return {raw, draw};
  const double m = (x + 1.0) * (x - 1.0);
  return {raw * m, draw * m + raw * 2.0 * x};
}

BatchEvaluation::BatchEvaluation(const MlpParams& params,
                                 std::span<const double> xs, BcMode bc)
    : params_(&params), bc_(bc) {
  const auto n = static_cast<Eigen::Index>(xs.size());
  x_ = Eigen::Map<const Eigen::RowVectorXd>(xs.data(), n);
  const std::size_t layers = params.layer_count();
  h_.resize(layers);
  da_.resize(layers);
  h_[0].resize(1, 2 * n);
  h_[0].leftCols(n) = x_;
  h_[0].rightCols(n).setOnes();
  for (std::size_t l = 0; l + 1 < layers; ++l) {
    // One product advances both the values and their x-derivatives.
    Eigen::MatrixXd p = params.weights[l] * h_[l];
    Eigen::MatrixXd a = p.leftCols(n);
    a.colwise() += params.biases[l];
    da_[l + 1] = p.rightCols(n);
    Eigen::MatrixXd& h = h_[l + 1];
    h.resize(p.rows(), 2 * n);
    h.leftCols(n) = fast_tanh(a.array());
    h.rightCols(n) = (1.0 - h.leftCols(n).array().square()) * da_[l + 1].array();
  }
  const std::size_t last = layers - 1;
  Eigen::RowVectorXd p = params.weights[last] * h_[last];
  raw_ = p.leftCols(n).array() + params.biases[last][0];
  draw_ = p.rightCols(n);

  if (bc == BcMode::Constrained) {
    u_ = raw_.transpose();
    du_ = draw_.transpose();
  } else {
    const Eigen::ArrayXd xa = x_.transpose().array();
    const Eigen::ArrayXd m = (xa + 1.0) * (xa - 1.0);
    u_ = raw_.transpose().array() * m;
    du_ = draw_.transpose().array() * m + raw_.transpose().array() * 2.0 * xa;
  }
}

Eigen::VectorXd BatchEvaluation::backward(
    const Eigen::VectorXd& u_adjoint, const Eigen::VectorXd& du_adjoint) const {
  const MlpParams& p = *params_;
  const auto n = x_.size();
  // adj = [d/d(pre-activation) | d/d(pre-activation x-derivative)]
  Eigen::MatrixXd adj(1, 2 * n);
  if (bc_ == BcMode::Constrained) {
    adj.leftCols(n) = u_adjoint.transpose();
    adj.rightCols(n) = du_adjoint.transpose();
  } else {
    const Eigen::ArrayXd xa = x_.transpose().array();
    const Eigen::ArrayXd m = (xa + 1.0) * (xa - 1.0);
    adj.leftCols(n) =
        (u_adjoint.array() * m + du_adjoint.array() * 2.0 * xa).matrix().transpose();
    adj.rightCols(n) = (du_adjoint.array() * m).matrix().transpose();
  }

  const std::size_t layers = p.layer_count();
  std::vector<Eigen::MatrixXd> grad_w(layers);
  std::vector<Eigen::VectorXd> grad_b(layers);
  for (std::size_t l = layers; l-- > 0;) {
    grad_w[l].noalias() = adj * h_[l].transpose();
    grad_b[l] = adj.leftCols(n).rowwise().sum();
    if (l == 0) break;
    Eigen::MatrixXd prev = p.weights[l].transpose() * adj;
    // z = tanh(a), dz = (1 - z^2) da.
    const auto z = h_[l].leftCols(n).array();
    const Eigen::ArrayXXd slope = 1.0 - z.square();
    prev.leftCols(n).array() -=
        2.0 * prev.rightCols(n).array() * da_[l].array() * z;
    prev.leftCols(n).array() *= slope;
    prev.rightCols(n).array() *= slope;
    adj = std::move(prev);
  }

  Eigen::VectorXd flat(static_cast<Eigen::Index>(p.parameter_count()));
  Eigen::Index k = 0;
  for (std::size_t l = 0; l < layers; ++l) {
    for (Eigen::Index i = 0; i < grad_w[l].rows(); ++i)
      for (Eigen::Index j = 0; j < grad_w[l].cols(); ++j)
        flat[k++] = grad_w[l](i, j);
    for (Eigen::Index i = 0; i < grad_b[l].size(); ++i) flat[k++] = grad_b[l][i];
  }
  return flat;
}

BatchValues mlp_eval_batch(const MlpParams& params, std::span<const double> xs,
                           BcMode bc) {
  const auto n = static_cast<Eigen::Index>(xs.size());
  const Eigen::Map<const Eigen::RowVectorXd> x(xs.data(), n);
  Eigen::MatrixXd z = x;
  Eigen::MatrixXd dz = Eigen::RowVectorXd::Ones(n);
  const std::size_t last = params.layer_count() - 1;
  for (std::size_t l = 0; l < last; ++l) {
    Eigen::MatrixXd a = params.weights[l] * z;
    a.colwise() += params.biases[l];
    const Eigen::MatrixXd da = params.weights[l] * dz;
    z = fast_tanh(a.array());
    dz = (1.0 - z.array().square()) * da.array();
  }
  Eigen::RowVectorXd raw = params.weights[last] * z;
  raw.array() += params.biases[last][0];
  const Eigen::RowVectorXd draw = params.weights[last] * dz;
  BatchValues out;
  if (bc == BcMode::Constrained) {
    out.u = raw.transpose();
    out.du_dx = draw.transpose();
  } else {
    const Eigen::ArrayXd xa = x.transpose().array();
    const Eigen::ArrayXd m = (xa + 1.0) * (xa - 1.0);
    out.u = raw.transpose().array() * m;
    out.du_dx = draw.transpose().array() * m + raw.transpose().array() * 2.0 * xa;
  }
  return out;
}

TapedNetwork::TapedNetwork(const MlpParams& params, ad::Tape& tape)
    : architecture_(params.architecture), tape_(&tape) {
  const Eigen::VectorXd flat = params.flatten();
  flat_.reserve(static_cast<std::size_t>(flat.size()));
  for (Eigen::Index i = 0; i < flat.size(); ++i)
    flat_.push_back(tape.variable(flat[i]));
  std::size_t off = 0;
  for (std::size_t l = 0; l + 1 < architecture_.size(); ++l) {
    offsets_.push_back(off);
    off += static_cast<std::size_t>(architecture_[l + 1]) *
           static_cast<std::size_t>(architecture_[l] + 1);
  }
}

TapedDual TapedNetwork::eval(double x, BcMode bc) const {
  std::vector<TapedDual> z{TapedDual::variable(ad::Var(x))};
  const std::size_t layers = architecture_.size() - 1;
  for (std::size_t l = 0; l < layers; ++l) {
    const auto in = static_cast<std::size_t>(architecture_[l]);
    const auto out = static_cast<std::size_t>(architecture_[l + 1]);
    const std::size_t w0 = offsets_[l];
    const std::size_t b0 = w0 + out * in;
    std::vector<TapedDual> next;
    next.reserve(out);
    for (std::size_t i = 0; i < out; ++i) {
      TapedDual a = TapedDual::constant(flat_[b0 + i]);
      for (std::size_t j = 0; j < in; ++j)
        a = a + flat_[w0 + i * in + j] * z[j];
      next.push_back(l + 1 < layers ? tanh(a) : a);
    }
    z = std::move(next);
  }
  if (bc == BcMode::Constrained) return z[0];
  const TapedDual mult(ad::Var((x + 1.0) * (x - 1.0)), ad::Var(2.0 * x));
  return z[0] * mult;
}

ScalarGradient grad_scalar(
    const MlpParams& params,
    const std::function<ad::Var(const TapedNetwork&)>& scalar_fn) {
  ad::Tape tape;
  TapedNetwork net(params, tape);
  const ad::Var out = scalar_fn(net);
  const auto& vars = net.parameters();
  Eigen::VectorXd grad = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(vars.size()));
  if (!std::isfinite(out.value()))
    throw NumericalError("non-finite scalar value in grad_scalar");
  if (!out.is_constant()) {
    const std::vector<double> adj = tape.adjoints(out.index());
    for (std::size_t i = 0; i < vars.size(); ++i) {
      const double g = adj[vars[i].index()];
      if (!std::isfinite(g))
        throw NumericalError("non-finite gradient for parameter index " +
                             std::to_string(i));
      grad[static_cast<Eigen::Index>(i)] = g;
    }
  }
  return {out.value(), std::move(grad)};
}

}  // namespace rvpinn

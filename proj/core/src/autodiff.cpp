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

#include "rvpinn/autodiff.hpp"

#include <cassert>

namespace rvpinn::ad {

Var Tape::variable(double value) {
  Index i = push(value, kNone, 0.0, kNone, 0.0);
  return Var(this, i, value);
}

Tape::Index Tape::push(double value, Index lhs, double d_lhs, Index rhs,
                       double d_rhs) {
  nodes_.push_back({lhs, rhs, d_lhs, d_rhs});
  values_.push_back(value);
  return static_cast<Index>(nodes_.size() - 1);
}

std::vector<double> Tape::adjoints(Index output) const {
  std::vector<double> adj(nodes_.size(), 0.0);
  if (output == kNone) return adj;
  adj[output] = 1.0;
  for (Index i = output + 1; i-- > 0;) {
    const double a = adj[i];
    if (a == 0.0) continue;
    const Node& n = nodes_[i];
    if (n.lhs != kNone) adj[n.lhs] += a * n.d_lhs;
    if (n.rhs != kNone) adj[n.rhs] += a * n.d_rhs;
  }
  return adj;
}

Var Var::unary(const Var& a, double value, double d) {
  if (a.is_constant()) return Var(value);
  return Var(a.tape_, a.tape_->push(value, a.index_, d, Tape::kNone, 0.0),
             value);
}

Var Var::binary(const Var& a, double da, const Var& b, double db,
                double value) {
  if (a.is_constant() && b.is_constant()) return Var(value);
  if (a.is_constant()) return unary(b, value, db);
  if (b.is_constant()) return unary(a, value, da);
  assert(a.tape_ == b.tape_);
  return Var(a.tape_, a.tape_->push(value, a.index_, da, b.index_, db), value);
}

Var operator+(const Var& a, const Var& b) {
  return Var::binary(a, 1.0, b, 1.0, a.value_ + b.value_);
}

Var operator-(const Var& a, const Var& b) {
  return Var::binary(a, 1.0, b, -1.0, a.value_ - b.value_);
}

Var operator*(const Var& a, const Var& b) {
  return Var::binary(a, b.value_, b, a.value_, a.value_ * b.value_);
}

Var operator/(const Var& a, const Var& b) {
  const double q = a.value_ / b.value_;
  return Var::binary(a, 1.0 / b.value_, b, -q / b.value_, q);
}

Var operator-(const Var& a) { return Var::unary(a, -a.value_, -1.0); }

Var tanh(const Var& a) {
  const double t = std::tanh(a.value_);
  return Var::unary(a, t, 1.0 - t * t);
}

}  // namespace rvpinn::ad

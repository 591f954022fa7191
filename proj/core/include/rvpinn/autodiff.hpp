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

// Scalar reverse-mode tape plus a forward-mode dual number.
//
// Nesting Dual<Var> gives forward-over-reverse differentiation: the dual
// channel carries d/dx of a network output while every primal and tangent
// operation is recorded on the tape, so a loss built from u and du/dx can be
// differentiated with respect to all network parameters in one sweep.

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

namespace rvpinn::ad {

class Var;

/// Wengert list. Every node has at most two parents with their local
/// partial derivatives.
class Tape {
 public:
  using Index = std::uint32_t;
  static constexpr Index kNone = std::numeric_limits<Index>::max();

  Tape() = default;
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  /// Registers an independent variable.
  Var variable(double value);

  Index push(double value, Index lhs, double d_lhs, Index rhs, double d_rhs);

  std::size_t size() const { return nodes_.size(); }
  double value(Index i) const { return values_[i]; }

  /// Reverse sweep seeded with d(output)/d(output) = 1. Returns the adjoint
  /// of every node recorded so far.
  std::vector<double> adjoints(Index output) const;

  void reserve(std::size_t n) {
    nodes_.reserve(n);
    values_.reserve(n);
  }

 private:
  struct Node {
    Index lhs;
    Index rhs;
    double d_lhs;
    double d_rhs;
  };
  std::vector<Node> nodes_;
  std::vector<double> values_;
};

/// A scalar that is either a constant (no tape) or a node on a tape.
class Var {
 public:
  Var() = default;
  Var(double constant) : value_(constant) {}  // NOLINT(google-explicit-constructor)
  Var(Tape* tape, Tape::Index index, double value)
      : tape_(tape), index_(index), value_(value) {}

  double value() const { return value_; }
  Tape* tape() const { return tape_; }
  Tape::Index index() const { return index_; }
  bool is_constant() const { return tape_ == nullptr; }

  Var& operator+=(const Var& o) { return *this = *this + o; }
  Var& operator-=(const Var& o) { return *this = *this - o; }
  Var& operator*=(const Var& o) { return *this = *this * o; }

  friend Var operator+(const Var& a, const Var& b);
  friend Var operator-(const Var& a, const Var& b);
  friend Var operator*(const Var& a, const Var& b);
  friend Var operator/(const Var& a, const Var& b);
  friend Var operator-(const Var& a);
  friend Var tanh(const Var& a);

 private:
  static Var unary(const Var& a, double value, double d);
  static Var binary(const Var& a, double da, const Var& b, double db,
                    double value);

  Tape* tape_ = nullptr;
  Tape::Index index_ = Tape::kNone;
  double value_ = 0.0;
};

inline double value_of(double x) { return x; }
inline double value_of(const Var& x) { return x.value(); }

using std::tanh;

/// Value plus derivative with respect to the spatial input.
template <class T>
struct Dual {
  T value{};
  T dx{};

  Dual() = default;
  Dual(T v, T d) : value(std::move(v)), dx(std::move(d)) {}

  static Dual constant(T v) { return Dual(std::move(v), T(0.0)); }
  static Dual variable(T v) { return Dual(std::move(v), T(1.0)); }

  friend Dual operator+(const Dual& a, const Dual& b) {
    return {a.value + b.value, a.dx + b.dx};
  }
  friend Dual operator-(const Dual& a, const Dual& b) {
    return {a.value - b.value, a.dx - b.dx};
  }
  friend Dual operator*(const Dual& a, const Dual& b) {
    return {a.value * b.value, a.dx * b.value + a.value * b.dx};
  }
  friend Dual operator*(const T& s, const Dual& a) {
    return {s * a.value, s * a.dx};
  }
  friend Dual operator+(const Dual& a, const T& s) {
    return {a.value + s, a.dx};
  }
  friend Dual tanh(const Dual& a) {
    T t = tanh(a.value);
    return {t, (T(1.0) - t * t) * a.dx};
  }
};

}  // namespace rvpinn::ad

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

#include "rvpinn/problem.hpp"

#include <cmath>
#include <numbers>

#include "rvpinn/quadrature.hpp"

namespace rvpinn {

using std::numbers::pi;

void Problem::validate() const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw ConfigError("epsilon must be positive");
  if (!std::isfinite(beta)) throw ConfigError("beta must be finite");
  if (const auto* d = std::get_if<DiracDelta>(&source)) {
    if (!(d->location > kLeft && d->location < kRight))
      throw ConfigError("delta location must lie strictly inside (-1, 1)");
  }
}

Problem make_smooth_problem(BcMode bc, double epsilon) {
  Problem p;
  p.epsilon = epsilon;
  p.beta = 0.0;
  p.bc = bc;
  p.kind = ProblemKind::Smooth;
  p.source = manufactured_source(p);
  p.validate();
  return p;
}

Problem make_delta_problem(BcMode bc) {
  Problem p;
  p.epsilon = 1.0;
  p.beta = 0.0;
  p.bc = bc;
  p.kind = ProblemKind::Delta;
  p.source = DiracDelta{0.5};
  return p;
}

Problem make_advection_problem(double epsilon, BcMode bc) {
  Problem p;
  p.epsilon = epsilon;
  p.beta = 1.0;
  p.bc = bc;
  p.kind = ProblemKind::Advection;
  p.source = ConstantSource{1.0};
  p.validate();
  return p;
}

double linear_l(const Problem& p, const std::function<double(double)>& v,
                const QuadratureRule& quad) {
  return std::visit(
      [&](const auto& s) -> double {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, DiracDelta>) {
          return v(s.location);
        } else if constexpr (std::is_same_v<S, ConstantSource>) {
          return integrate(quad, [&](double x) { return s.value * v(x); });
        } else {
          return integrate(quad, [&](double x) { return s.f(x) * v(x); });
        }
      },
      p.source);
}

namespace {

ExactSolution smooth_solution() {
  return {[](double x) { return x * std::sin(pi * (x + 1.0)); },
          [](double x) {
            const double t = pi * (x + 1.0);
            return std::sin(t) + pi * x * std::cos(t);
          },
          "x sin(pi (x + 1))"};
}

ExactSolution delta_solution(double location) {
  // Green's function of -u'' on (-1, 1) with the pole at `location`.
  const double left_slope = (1.0 - location) / 2.0;
  const double right_slope = -(1.0 + location) / 2.0;
  return {[=](double x) {
            return x <= location ? left_slope * (x + 1.0)
                                 : -right_slope * (1.0 - x);
          },
          [=](double x) { return x <= location ? left_slope : right_slope; },
          "point source"};
}

ExactSolution advection_solution(double eps) {
  // 1 - exp(-2/eps) and 1 - exp((x-1)/eps) through expm1; exponents are
  // never positive so nothing overflows.
  const double denom = -std::expm1(-2.0 / eps);
  return {[=](double x) {
            return 2.0 * (-std::expm1((x - 1.0) / eps)) / denom + x - 1.0;
          },
          [=](double x) {
            return 1.0 - 2.0 / eps * std::exp((x - 1.0) / eps) / denom;
          },
          "boundary layer"};
}

}  // namespace

ExactSolution exact_solution(const Problem& p) {
  switch (p.kind) {
    case ProblemKind::Smooth:
      return smooth_solution();
    case ProblemKind::Delta:
      if (const auto* d = std::get_if<DiracDelta>(&p.source);
          d && p.beta == 0.0 && p.epsilon == 1.0)
        return delta_solution(d->location);
      break;
    case ProblemKind::Advection:
      if (p.beta == 1.0) return advection_solution(p.epsilon);
      break;
    case ProblemKind::Custom:
      break;
  }
  throw NoExactSolution(std::string("no exact solution registered for ") +
                        to_string(p.kind) + " problem");
}

SourceSpec manufactured_source(const Problem& p) {
  const double eps = p.epsilon;
  const double beta = p.beta;
  return AnalyticSource{[eps, beta](double x) {
    const double t = pi * (x + 1.0);
    const double du = std::sin(t) + pi * x * std::cos(t);
    const double d2u = 2.0 * pi * std::cos(t) - pi * pi * x * std::sin(t);
    return -eps * d2u + beta * du;
  }};
}

double continuity_constant(const Problem& p) {
  return 1.0 + kPoincareConstant * std::abs(p.beta) / p.epsilon;
}

double inf_sup_constant(const Problem&) { return 1.0; }

const char* to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::Smooth: return "smooth";
    case ProblemKind::Delta: return "delta";
    case ProblemKind::Advection: return "advection";
    case ProblemKind::Custom: return "custom";
  }
  return "custom";
}

}  // namespace rvpinn

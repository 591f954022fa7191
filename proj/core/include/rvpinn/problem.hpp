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

#include <functional>
#include <string>
#include <variant>

#include "rvpinn/common.hpp"

namespace rvpinn {

class QuadratureRule;

/// Right-hand side of the diffusion-advection problem.
struct AnalyticSource {
  std::function<double(double)> f;
};
struct DiracDelta {
  double location;
};
struct ConstantSource {
  double value;
};
using SourceSpec = std::variant<AnalyticSource, DiracDelta, ConstantSource>;

/// Which closed-form benchmark a problem corresponds to, if any.
enum class ProblemKind { Smooth, Delta, Advection, Custom };

/// -(eps u')' + beta u' = f on (-1, 1), u(-1) = u(1) = 0, in the weak form
/// a(u, v) = ((eps u' - beta u), v')  and  l(v) = <f, v>.
struct Problem {
  double epsilon = 1.0;
  double beta = 0.0;
  SourceSpec source = ConstantSource{0.0};
  BcMode bc = BcMode::Strong;
  ProblemKind kind = ProblemKind::Custom;

  static constexpr double kLeft = -1.0;
  static constexpr double kRight = 1.0;

  /// Throws ConfigError on eps <= 0 or a delta outside (-1, 1).
  void validate() const;
};

/// eps = 1, beta = 0, u(x) = x sin(pi (x + 1)) with the matching source.
Problem make_smooth_problem(BcMode bc, double epsilon = 1.0);
/// eps = 1, beta = 0, unit point source at x = 1/2.
Problem make_delta_problem(BcMode bc);
/// beta = 1, f = 1; boundary layer of width ~eps at x = 1.
Problem make_advection_problem(double epsilon, BcMode bc);

struct ExactSolution {
  std::function<double(double)> u;
  std::function<double(double)> du_dx;
  std::string label;
};

/// Pointwise integrand of a(u, v): (eps du - beta u) dv.
template <class T>
T bilinear_a(const Problem& p, const T& u, const T& du, const T& dv) {
  return (p.epsilon * du - p.beta * u) * dv;
}

/// l(v). Point sources evaluate v exactly; everything else is integrated
/// with `quad`.
double linear_l(const Problem& p, const std::function<double(double)>& v,
                const QuadratureRule& quad);

/// Throws NoExactSolution unless `p` is one of the three benchmarks.
ExactSolution exact_solution(const Problem& p);

/// f = -eps u'' + beta u' for u(x) = x sin(pi (x + 1)).
SourceSpec manufactured_source(const Problem& p);

/// Poincare constant of H^1_0(-1, 1).
inline constexpr double kPoincareConstant = 0.63661977236758134308;  // 2/pi

/// mu = 1 + C |beta| / eps.
double continuity_constant(const Problem& p);

/// Coercivity gives alpha = 1 in the eps-weighted seminorm.
double inf_sup_constant(const Problem& p);

const char* to_string(ProblemKind kind);

}  // namespace rvpinn

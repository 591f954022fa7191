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

#include <stdexcept>
#include <string>

namespace rvpinn {

/// How the homogeneous Dirichlet condition u(-1) = u(1) = 0 is imposed.
///  - Strong: the raw network output is multiplied by (x + 1)(x - 1).
///  - Constrained: the raw output is used as is and |u(-1)|^2 + |u(1)|^2 is
///    added to the loss.
enum class BcMode { Strong, Constrained };

inline const char* to_string(BcMode bc) {
  return bc == BcMode::Strong ? "strong" : "constrained";
}

/// Invalid user-facing configuration (architecture, sizes, config files).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Overflow, NaN or a broken numerical invariant.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A Gram matrix failed Cholesky factorization.
class NotSpdError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Raised when error reporting is requested for a problem without a
/// registered closed-form solution.
class NoExactSolution : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rvpinn

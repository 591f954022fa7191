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

#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"
#include "rvpinn/problem.hpp"
#include "rvpinn/testspace.hpp"
#include "rvpinn/trainer.hpp"

namespace rvpinn::cli {

struct ProblemConfig {
  ProblemKind kind = ProblemKind::Smooth;
  double epsilon = 1.0;
  double beta = 0.0;
  double delta_location = 0.5;
};

struct SpaceConfig {
  TestSpace::Kind kind = TestSpace::Kind::Spectral;
  int dimension = 50;
};

/// Everything a training run needs. Parsed from a single JSON document; all
/// fields are optional and fall back to the smooth benchmark defaults.
struct RunConfig {
  ProblemConfig problem;
  SpaceConfig space;
  BcMode bc = BcMode::Strong;
  TrainConfig train;
  int solution_samples = 1001;
  std::filesystem::path output_dir = "rvpinn_out";

  Problem make_problem() const;
  TestSpace make_space() const;
};

/// Throws ConfigError with a line number (syntax) or a dotted field path
/// (schema) in the message.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

/// The resolved configuration, defaults included.
nlohmann::json to_json(const RunConfig& cfg);

}  // namespace rvpinn::cli

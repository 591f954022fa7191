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

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace rvpinn::cli;

  CLI::App app{"Robust variational PINN solver for 1D diffusion-advection"};
  app.require_subcommand(1);

  std::string output_dir;
  std::uint64_t seed = 0;
  auto* out_opt = app.add_option("--output-dir", output_dir,
                                 "Directory for run outputs (overrides config)");
  auto* seed_opt = app.add_option("--seed", seed, "Initialization seed (overrides config)");

  std::string train_cfg;
  auto* train = app.add_subcommand("train", "Train one configuration");
  train->add_option("config", train_cfg, "JSON run configuration")->required();

  std::string suite;
  auto* verify = app.add_subcommand("verify", "Run a property suite");
  verify->add_option("suite", suite, "gram | grad | rescale | consistency")->required();

  std::string sweep_cfg;
  std::vector<double> epsilons;
  auto* sweep = app.add_subcommand("sweep", "Train across diffusion coefficients");
  sweep->add_option("config", sweep_cfg, "JSON run configuration")->required();
  sweep->add_option("--epsilons", epsilons, "Comma-separated epsilon values")
      ->delimiter(',')
      ->required();

  // Options given after the subcommand name are accepted too.
  for (auto* sub : {train, sweep}) {
    sub->add_option("--output-dir", output_dir, "Directory for run outputs");
    sub->add_option("--seed", seed, "Initialization seed");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  Overrides overrides;
  if (!output_dir.empty()) overrides.output_dir = output_dir;
  if (out_opt->count() > 0 || train->count("--output-dir") > 0 ||
      sweep->count("--output-dir") > 0)
    overrides.output_dir = output_dir;
  if (seed_opt->count() > 0 || train->count("--seed") > 0 || sweep->count("--seed") > 0)
    overrides.seed = seed;

  if (*train) return cmd_train(train_cfg, overrides, std::cout);
  if (*verify) return cmd_verify(suite, std::cout);
  return cmd_sweep(sweep_cfg, epsilons, overrides, std::cout);
}

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

#include "commands.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <random>

#include "rvpinn/report.hpp"
#include "rvpinn/residual.hpp"

namespace rvpinn::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct RunOutcome {
  int exit_code = kOk;
  double final_loss = std::nan("");
  double best_loss = std::nan("");
  double best_energy_error = std::nan("");
  double relative_energy_error = std::nan("");
  BoundSummary bounds;
};

// Shortest representation that reads back to the same double.
std::string short_double(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, r.ptr);
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(); }

void write_json(const fs::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << j.dump(2) << '\n';
}

// Trains `cfg` into cfg.output_dir. The configuration must already be valid.
RunOutcome run_training(const RunConfig& cfg, std::ostream& log) {
  const Problem problem = cfg.make_problem();
  const TestSpace space = cfg.make_space();
  fs::create_directories(cfg.output_dir);
  write_json(cfg.output_dir / "config.json", to_json(cfg));

  log << "training " << to_string(cfg.problem.kind) << " eps=" << problem.epsilon
      << " space=" << to_string(space.kind()) << " M=" << space.dimension()
      << " bc=" << to_string(problem.bc) << " epochs=" << cfg.train.max_epochs
      << " seed=" << cfg.train.seed << '\n';

  RunOutcome out;
  TrainResult result;
  try {
    result = train(problem, space, cfg.train);
  } catch (const TrainingAborted& e) {
    log << "numerical abort: " << e.what() << '\n';
    export_history(e.history(), cfg.output_dir / "history.csv", HistoryFormat::Csv);
    out.exit_code = kNumericalAbort;
    return out;
  }

  export_history(result.history, cfg.output_dir / "history.csv", HistoryFormat::Csv);
  export_solution(result.best_params, problem, cfg.solution_samples,
                  cfg.output_dir / "solution.csv");

  const double mu = continuity_constant(problem);
  out.bounds = verify_bounds(result.history, mu, cfg.train.bound_tolerance);
  out.final_loss = result.history.back().loss;
  out.best_loss = result.best_loss;

  json summary;
  summary["problem"] = to_string(cfg.problem.kind);
  summary["epsilon"] = problem.epsilon;
  summary["beta"] = problem.beta;
  summary["space"] = to_string(space.kind());
  summary["dimension"] = space.dimension();
  summary["bc"] = to_string(problem.bc);
  summary["seed"] = cfg.train.seed;
  summary["epochs"] = cfg.train.max_epochs;
  summary["final_loss"] = out.final_loss;
  summary["final_phi_norm"] = result.history.back().phi_norm;
  summary["best_loss"] = result.best_loss;
  summary["best_epoch"] = result.best_epoch;
  summary["mu"] = mu;
  summary["alpha"] = inf_sup_constant(problem);
  summary["has_exact_solution"] = out.bounds.has_error_data;
  if (out.bounds.has_error_data) {
    const ExactSolution exact = exact_solution(problem);
    const double norm = energy_norm(problem, exact, cfg.train.error_nodes);
    out.best_energy_error =
        energy_error(result.best_params, problem, exact, cfg.train.error_nodes);
    out.relative_energy_error = out.best_energy_error / norm;
    summary["final_energy_error"] = *result.history.back().energy_error;
    summary["best_energy_error"] = out.best_energy_error;
    summary["exact_energy_norm"] = norm;
    summary["relative_energy_error"] = out.relative_energy_error;
    summary["lower_bound_fraction"] = out.bounds.lower_bound_fraction;
    summary["reliability_ratio"] = number_or_null(out.bounds.reliability_ratio);
    summary["log_correlation"] = number_or_null(out.bounds.log_correlation);
  } else {
    summary["note"] = out.bounds.note;
  }
  write_json(cfg.output_dir / "summary.json", summary);

  log << "final loss " << format_double(out.final_loss) << ", best loss "
      << format_double(out.best_loss) << " at epoch " << result.best_epoch << '\n';
  if (out.bounds.has_error_data)
    log << "relative energy error " << format_double(out.relative_energy_error)
        << ", lower bound held at " << out.bounds.lower_bound_fraction * 100.0
        << "% of records\n";
  return out;
}

RunConfig apply(RunConfig cfg, const Overrides& o) {
  if (o.output_dir) cfg.output_dir = *o.output_dir;
  if (o.seed) cfg.train.seed = *o.seed;
  return cfg;
}

// --- verification suites -------------------------------------------------

class Checker {
 public:
  explicit Checker(std::ostream& log) : log_(log) {}
  void check(bool ok, const std::string& name, const std::string& detail) {
    log_ << (ok ? "PASS " : "FAIL ") << name << "  " << detail << '\n';
    all_ &= ok;
  }
  int exit_code() const { return all_ ? kOk : kPropertyFailure; }

 private:
  std::ostream& log_;
  bool all_ = true;
};

MlpParams random_params(std::vector<int> arch, std::uint64_t seed) {
  MlpParams p = mlp_init(arch, seed);
  // Non-zero biases so every parameter influences the loss.
  std::mt19937_64 gen(seed + 1000);
  std::uniform_real_distribution<double> d(-0.5, 0.5);
  for (auto& b : p.biases)
    for (Eigen::Index i = 0; i < b.size(); ++i) b[i] = d(gen);
  return p;
}

void verify_gram(Checker& c) {
  for (double eps : {1.0, 0.1, 0.005}) {
    const TestSpace space = TestSpace::spectral(50, eps);
    const Eigen::MatrixXd g =
        gram_assemble_numeric(space, eps, trapezoid(4000, -1.0, 1.0));
    const double dev = (g - Eigen::MatrixXd::Identity(50, 50)).cwiseAbs().maxCoeff();
    c.check(dev < 1e-5, "spectral orthonormality eps=" + short_double(eps),
            "max|G-I| = " + format_double(dev));
  }
  for (int m : {1, 10, 100}) {
    const TestSpace space = TestSpace::fe(m);
    const Eigen::MatrixXd exact = gram_assemble(space, 1.0);
    const Eigen::MatrixXd numeric =
        gram_assemble_numeric(space, 1.0, default_quadrature(space));
    const double dev = (exact - numeric).cwiseAbs().maxCoeff();
    c.check(dev < 1e-12, "fe gram analytic vs gauss M=" + std::to_string(m),
            "max diff = " + format_double(dev));
  }
}

void verify_grad(Checker& c) {
  const std::vector<int> arch{1, 5, 5, 1};
  for (BcMode bc : {BcMode::Strong, BcMode::Constrained}) {
    for (TestSpace::Kind kind : {TestSpace::Kind::Fe, TestSpace::Kind::Spectral}) {
      const Problem problem = make_smooth_problem(bc);
      const TestSpace space = kind == TestSpace::Kind::Fe
                                  ? TestSpace::fe(5)
                                  : TestSpace::spectral(5, 1.0);
      const LossEvaluator ev(problem, space, default_quadrature(space));
      MlpParams p = random_params(arch, 11);
      const Eigen::VectorXd g = ev.evaluate_with_gradient(p).gradient;
      const Eigen::VectorXd theta = p.flatten();
      double worst = 0.0;
      const double h = 1e-6;
      for (Eigen::Index i = 0; i < theta.size(); ++i) {
        Eigen::VectorXd t = theta;
        t[i] += h;
        p.unflatten(t);
        const double lp = ev.evaluate(p).loss;
        t[i] -= 2.0 * h;
        p.unflatten(t);
        const double lm = ev.evaluate(p).loss;
        const double fd = (lp - lm) / (2.0 * h);
        worst = std::max(worst, std::abs(g[i] - fd) / std::max(1.0, std::abs(g[i])));
      }
      c.check(worst < 1e-4,
              std::string("loss gradient vs finite differences ") +
                  to_string(kind) + "/" + to_string(bc),
              "max rel err = " + format_double(worst));
    }
  }
}

void verify_rescale(Checker& c) {
  const Problem problem = make_smooth_problem(BcMode::Strong);
  const TestSpace space = TestSpace::fe(10);
  const QuadratureRule quad = default_quadrature(space);
  const MlpParams p = random_params({1, 10, 10, 1}, 5);
  const int k = 4;
  const double scale = 1e3;
  const TestSpace scaled = space.rescaled(k, scale);
  const LossEvaluator base(problem, space, quad);
  const LossEvaluator resc(problem, scaled, quad);
  const ResidualAssembly a = base.evaluate(p);
  const ResidualAssembly b = resc.evaluate(p);
  const double drift = std::abs(b.loss - a.loss) / a.loss;
  c.check(drift < 1e-9, "rvpinn loss invariant under phi_k -> c phi_k",
          "relative drift = " + format_double(drift));
  const double term_ratio = (b.R[k - 1] * b.R[k - 1]) / (a.R[k - 1] * a.R[k - 1]);
  const double dev = std::abs(term_ratio / (scale * scale) - 1.0);
  c.check(dev < 1e-9, "classical loss term scales by c^2",
          "ratio / c^2 - 1 = " + format_double(dev));
  const double classical_change =
      resc.classical_loss(p) / base.classical_loss(p);
  c.check(std::abs(classical_change - 1.0) > 1e-3, "classical loss is not invariant",
          "classical loss ratio = " + format_double(classical_change));
}

void verify_consistency(Checker& c) {
  struct Case {
    std::string name;
    Problem problem;
    TestSpace space;
  };
  const std::vector<Case> cases{
      {"smooth/spectral M=50", make_smooth_problem(BcMode::Strong),
       TestSpace::spectral(50, 1.0)},
      {"smooth/fe M=100", make_smooth_problem(BcMode::Strong), TestSpace::fe(100)},
      {"advection eps=0.1/fe M=100", make_advection_problem(0.1, BcMode::Strong),
       TestSpace::fe(100)},
  };
  for (const auto& cs : cases) {
    const QuadratureRule quad = default_quadrature(cs.space);
    const LossEvaluator ev(cs.problem, cs.space, quad);
    const ExactSolution exact = exact_solution(cs.problem);
    Eigen::VectorXd u(static_cast<Eigen::Index>(quad.size()));
    Eigen::VectorXd du(u.size());
    for (std::size_t q = 0; q < quad.size(); ++q) {
      u[static_cast<Eigen::Index>(q)] = exact.u(quad.nodes()[q]);
      du[static_cast<Eigen::Index>(q)] = exact.du_dx(quad.nodes()[q]);
    }
    const ResidualAssembly a =
        ev.assemble_field(u, du, exact.u(-1.0), exact.u(1.0));
    const double rmax = a.R.cwiseAbs().maxCoeff();
    c.check(rmax < 1e-6 && a.loss < 1e-10, "exact solution residual " + cs.name,
            "max|R| = " + format_double(rmax) + ", loss = " + format_double(a.loss));
  }
}

}  // namespace

int cmd_train(const fs::path& config_path, const Overrides& overrides,
              std::ostream& log) {
  RunConfig cfg;
  try {
    cfg = apply(load_config(config_path), overrides);
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << '\n';
    return kConfigError;
  }
  try {
    return run_training(cfg, log).exit_code;
  } catch (const NumericalError& e) {
    log << "numerical abort: " << e.what() << '\n';
    return kNumericalAbort;
  }
}

int cmd_verify(const std::string& suite, std::ostream& log) {
  Checker c(log);
  if (suite == "gram")
    verify_gram(c);
  else if (suite == "grad")
    verify_grad(c);
  else if (suite == "rescale")
    verify_rescale(c);
  else if (suite == "consistency")
    verify_consistency(c);
  else {
    log << "unknown suite '" << suite
        << "'; expected gram, grad, rescale or consistency\n";
    return kConfigError;
  }
  return c.exit_code();
}

int cmd_sweep(const fs::path& config_path, const std::vector<double>& epsilons,
              const Overrides& overrides, std::ostream& log) {
  if (epsilons.empty()) {
    log << "config error: --epsilons needs at least one value\n";
    return kConfigError;
  }
  RunConfig base;
  std::vector<RunConfig> runs;
  try {
    base = apply(load_config(config_path), overrides);
    for (double eps : epsilons) {
      RunConfig cfg = base;
      cfg.problem.epsilon = eps;
      cfg.output_dir = base.output_dir / ("eps_" + short_double(eps));
      (void)cfg.make_problem();
      (void)cfg.make_space();
      runs.push_back(std::move(cfg));
    }
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << '\n';
    return kConfigError;
  }

  fs::create_directories(base.output_dir);
  std::ofstream agg(base.output_dir / "sweep.csv");
  agg << kSweepHeader << '\n';
  int worst = kOk;
  for (const RunConfig& cfg : runs) {
    RunOutcome r;
    try {
      r = run_training(cfg, log);
    } catch (const NumericalError& e) {
      log << "numerical abort: " << e.what() << '\n';
      r.exit_code = kNumericalAbort;
    }
    worst = std::max(worst, r.exit_code);
    agg << format_double(cfg.problem.epsilon) << ',' << r.exit_code << ','
        << format_double(r.final_loss) << ',' << format_double(r.best_loss) << ','
        << format_double(r.best_energy_error) << ','
        << format_double(r.relative_energy_error) << ','
        << format_double(r.bounds.has_error_data ? r.bounds.lower_bound_fraction
                                                 : std::nan(""))
        << ','
        << format_double(r.bounds.has_error_data ? r.bounds.reliability_ratio
                                                 : std::nan(""))
        << '\n';
    agg.flush();
  }
  return worst;
}

}  // namespace rvpinn::cli

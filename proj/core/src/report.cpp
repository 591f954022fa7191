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

#include "rvpinn/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "rvpinn/quadrature.hpp"

namespace rvpinn {

namespace {

constexpr double kTailFraction = 0.2;

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return out;
}

double parse_double(const std::string& field) {
  if (field == "nan") return std::numeric_limits<double>::quiet_NaN();
  std::size_t used = 0;
  const double v = std::stod(field, &used);
  if (used != field.size()) throw std::runtime_error("bad number: " + field);
  return v;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double energy_error(const MlpParams& params, const Problem& problem,
                    int n_nodes) {
  return energy_error(params, problem, exact_solution(problem), n_nodes);
}

double energy_error(const MlpParams& params, const Problem& problem,
                    const ExactSolution& exact, int n_nodes) {
  const QuadratureRule rule = trapezoid(n_nodes, Problem::kLeft, Problem::kRight);
  const BatchValues batch = mlp_eval_batch(params, rule.nodes(), problem.bc);
  double sum = 0.0;
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const double d = exact.du_dx(rule.nodes()[q]) -
                     batch.du_dx[static_cast<Eigen::Index>(q)];
    sum += rule.weights()[q] * d * d;
  }
  return std::sqrt(problem.epsilon * sum);
}

double energy_norm(const Problem& problem, const ExactSolution& exact,
                   int n_nodes) {
  const QuadratureRule rule = trapezoid(n_nodes, Problem::kLeft, Problem::kRight);
  const double sq = integrate(rule, [&](double x) {
    const double d = exact.du_dx(x);
    return d * d;
  });
  return std::sqrt(problem.epsilon * sq);
}

ErrorReport error_report(const MlpParams& params, const Problem& problem,
                         const ResidualAssembly& assembly, double tol,
                         int n_nodes) {
  ErrorReport r;
  r.energy_error = energy_error(params, problem, n_nodes);
  r.phi_norm = assembly.phi_norm;
  r.ratio = std::sqrt(assembly.loss) / r.energy_error;
  r.mu = continuity_constant(problem);
  r.alpha = inf_sup_constant(problem);
  r.lower_bound_satisfied = r.phi_norm / r.mu <= r.energy_error * (1.0 + tol);
  return r;
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const std::size_t n = std::min(a.size(), b.size());
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= static_cast<double>(n);
  mb /= static_cast<double>(n);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (saa == 0.0 || sbb == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return sab / std::sqrt(saa * sbb);
}

BoundSummary verify_bounds(const std::vector<IterationRecord>& history,
                           double mu, double tol) {
  BoundSummary s;
  std::vector<const IterationRecord*> with_error;
  for (const auto& r : history)
    if (r.energy_error) with_error.push_back(&r);
  if (with_error.empty()) {
    s.note = "no exact solution";
    s.lower_bound_fraction = std::numeric_limits<double>::quiet_NaN();
    s.reliability_ratio = std::numeric_limits<double>::quiet_NaN();
    s.log_correlation = std::numeric_limits<double>::quiet_NaN();
    return s;
  }
  s.has_error_data = true;
  s.records_checked = with_error.size();

  std::size_t ok = 0;
  std::vector<double> log_sqrt_loss, log_err;
  for (const auto* r : with_error) {
    if (r->phi_norm / mu <= *r->energy_error * (1.0 + tol)) ++ok;
    if (r->loss > 0.0 && *r->energy_error > 0.0) {
      log_sqrt_loss.push_back(0.5 * std::log(r->loss));
      log_err.push_back(std::log(*r->energy_error));
    }
  }
  s.lower_bound_fraction =
      static_cast<double>(ok) / static_cast<double>(with_error.size());

  const auto tail = std::max<std::size_t>(
      1, static_cast<std::size_t>(
             std::ceil(kTailFraction * static_cast<double>(with_error.size()))));
  double ratio = 0.0;
  for (std::size_t i = with_error.size() - tail; i < with_error.size(); ++i) {
    const auto* r = with_error[i];
    ratio = std::max(ratio, r->phi_norm > 0.0
                                ? *r->energy_error / r->phi_norm
                                : std::numeric_limits<double>::infinity());
  }
  s.reliability_ratio = ratio;
  s.log_correlation = pearson(log_sqrt_loss, log_err);
  return s;
}

void write_history_csv(const std::vector<IterationRecord>& history,
                       std::ostream& out) {
  out << kHistoryHeader << '\n';
  for (const auto& r : history) {
    out << r.epoch << ',' << format_double(r.loss) << ','
        << format_double(std::sqrt(r.loss)) << ',' << format_double(r.phi_norm)
        << ','
        << format_double(r.energy_error ? *r.energy_error
                                        : std::numeric_limits<double>::quiet_NaN())
        << ',' << format_double(r.penalty) << ',';
    if (r.lower_bound_ok) out << (*r.lower_bound_ok ? 1 : 0);
    out << '\n';
  }
}

void write_history_json(const std::vector<IterationRecord>& history,
                        std::ostream& out) {
  nlohmann::json records = nlohmann::json::array();
  for (const auto& r : history) {
    nlohmann::json j;
    j["epoch"] = r.epoch;
    j["loss"] = r.loss;
    j["sqrt_loss"] = std::sqrt(r.loss);
    j["phi_norm"] = r.phi_norm;
    j["energy_error"] = r.energy_error ? nlohmann::json(*r.energy_error) : nlohmann::json();
    j["penalty"] = r.penalty;
    j["lower_bound_ok"] =
        r.lower_bound_ok ? nlohmann::json(*r.lower_bound_ok) : nlohmann::json();
    records.push_back(std::move(j));
  }
  nlohmann::json doc;
  doc["columns"] = {"epoch", "loss", "sqrt_loss", "phi_norm",
                    "energy_error", "penalty", "lower_bound_ok"};
  doc["records"] = std::move(records);
  out << doc.dump(2) << '\n';
}

void export_history(const std::vector<IterationRecord>& history,
                    const std::filesystem::path& path, HistoryFormat format) {
  std::ofstream out = open_for_write(path);
  if (format == HistoryFormat::Csv)
    write_history_csv(history, out);
  else
    write_history_json(history, out);
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::vector<IterationRecord> read_history_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kHistoryHeader)
    throw std::runtime_error("history CSV header mismatch");
  std::vector<IterationRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (line.back() == ',') f.emplace_back();
    if (f.size() != 7) throw std::runtime_error("history CSV row has wrong arity");
    IterationRecord r;
    r.epoch = std::stoi(f[0]);
    r.loss = parse_double(f[1]);
    r.phi_norm = parse_double(f[3]);
    const double err = parse_double(f[4]);
    if (!std::isnan(err)) r.energy_error = err;
    r.penalty = parse_double(f[5]);
    if (!f[6].empty()) r.lower_bound_ok = f[6] == "1";
    out.push_back(r);
  }
  return out;
}

std::vector<IterationRecord> read_history_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_history_csv(in);
}

void export_solution(const MlpParams& params, const Problem& problem,
                     int n_samples, const std::filesystem::path& path) {
  if (n_samples < 2) throw ConfigError("n_samples must be >= 2");
  std::optional<ExactSolution> exact;
  try {
    exact = exact_solution(problem);
  } catch (const NoExactSolution&) {
  }
  const QuadratureRule grid = trapezoid(n_samples, Problem::kLeft, Problem::kRight);
  const BatchValues batch = mlp_eval_batch(params, grid.nodes(), problem.bc);
  std::ofstream out = open_for_write(path);
  out << (exact ? kSolutionHeader : "x,u_theta") << '\n';
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid.nodes()[i];
    out << format_double(x) << ','
        << format_double(batch.u[static_cast<Eigen::Index>(i)]);
    if (exact) out << ',' << format_double(exact->u(x));
    out << '\n';
  }
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace rvpinn

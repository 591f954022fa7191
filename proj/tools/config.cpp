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

#include "config.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace rvpinn::cli {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& msg) {
  throw ConfigError(field + ": " + msg);
}

void reject_unknown(const json& obj, const std::string& where,
                    const std::set<std::string>& allowed) {
  for (const auto& [key, _] : obj.items())
    if (!allowed.count(key))
      fail(where.empty() ? key : where + "." + key, "unknown field");
}

const json* member(const json& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

double get_number(const json& obj, const std::string& path, const char* key,
                  double fallback) {
  const json* v = member(obj, key);
  if (!v) return fallback;
  if (!v->is_number()) fail(path + key, "expected a number");
  return v->get<double>();
}

long long get_integer(const json& obj, const std::string& path, const char* key,
                      long long fallback) {
  const json* v = member(obj, key);
  if (!v) return fallback;
  if (!v->is_number_integer()) fail(path + key, "expected an integer");
  return v->get<long long>();
}

std::string get_string(const json& obj, const std::string& path, const char* key,
                       const std::string& fallback) {
  const json* v = member(obj, key);
  if (!v) return fallback;
  if (!v->is_string()) fail(path + key, "expected a string");
  return v->get<std::string>();
}

const json& get_object(const json& obj, const char* key, const json& empty) {
  const json* v = member(obj, key);
  if (!v) return empty;
  if (!v->is_object()) fail(key, "expected an object");
  return *v;
}

ProblemKind parse_kind(const std::string& s) {
  if (s == "smooth") return ProblemKind::Smooth;
  if (s == "delta") return ProblemKind::Delta;
  if (s == "advection") return ProblemKind::Advection;
  fail("problem.kind", "expected smooth, delta or advection, got '" + s + "'");
}

int to_int(long long v, const std::string& field) {
  if (v < 0 || v > std::numeric_limits<int>::max())
    fail(field, "out of range");
  return static_cast<int>(v);
}

int line_of_offset(const std::string& text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<int>(std::count(text.begin(),
                                         text.begin() + static_cast<long>(offset), '\n'));
}

}  // namespace

Problem RunConfig::make_problem() const {
  Problem p;
  switch (problem.kind) {
    case ProblemKind::Smooth:
      p = make_smooth_problem(bc, problem.epsilon);
      p.beta = problem.beta;
      p.source = manufactured_source(p);
      break;
    case ProblemKind::Delta:
      p = make_delta_problem(bc);
      p.epsilon = problem.epsilon;
      p.beta = problem.beta;
      p.source = DiracDelta{problem.delta_location};
      break;
    case ProblemKind::Advection:
      p = make_advection_problem(problem.epsilon, bc);
      p.beta = problem.beta;
      break;
    case ProblemKind::Custom:
      throw ConfigError("problem.kind: custom problems cannot be configured");
  }
  p.validate();
  return p;
}

TestSpace RunConfig::make_space() const {
  return space.kind == TestSpace::Kind::Fe
             ? TestSpace::fe(space.dimension)
             : TestSpace::spectral(space.dimension, problem.epsilon);
}

RunConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("line " + std::to_string(line_of_offset(text, e.byte)) +
                      ": " + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config: expected a JSON object");
  reject_unknown(doc, "", {"problem", "space", "bc", "train", "output_dir",
                           "solution_samples"});
  const json empty = json::object();
  RunConfig cfg;

  const json& pj = get_object(doc, "problem", empty);
  reject_unknown(pj, "problem", {"kind", "epsilon", "beta", "delta_location"});
  cfg.problem.kind = parse_kind(get_string(pj, "problem.", "kind", "smooth"));
  const double default_eps = cfg.problem.kind == ProblemKind::Advection ? 0.1 : 1.0;
  const double default_beta = cfg.problem.kind == ProblemKind::Advection ? 1.0 : 0.0;
  cfg.problem.epsilon = get_number(pj, "problem.", "epsilon", default_eps);
  cfg.problem.beta = get_number(pj, "problem.", "beta", default_beta);
  cfg.problem.delta_location = get_number(pj, "problem.", "delta_location", 0.5);
  if (!(cfg.problem.epsilon > 0.0)) fail("problem.epsilon", "must be positive");
  if (!(cfg.problem.delta_location > -1.0 && cfg.problem.delta_location < 1.0))
    fail("problem.delta_location", "must lie strictly inside (-1, 1)");

  const json& sj = get_object(doc, "space", empty);
  reject_unknown(sj, "space", {"kind", "dimension"});
  const std::string sk = get_string(sj, "space.", "kind", "spectral");
  if (sk == "fe")
    cfg.space.kind = TestSpace::Kind::Fe;
  else if (sk == "spectral")
    cfg.space.kind = TestSpace::Kind::Spectral;
  else
    fail("space.kind", "expected fe or spectral, got '" + sk + "'");
  cfg.space.dimension = to_int(get_integer(sj, "space.", "dimension", 50), "space.dimension");
  if (cfg.space.dimension < 1) fail("space.dimension", "must be >= 1");

  const std::string bc = get_string(doc, "", "bc", "strong");
  if (bc == "strong")
    cfg.bc = BcMode::Strong;
  else if (bc == "constrained")
    cfg.bc = BcMode::Constrained;
  else
    fail("bc", "expected strong or constrained, got '" + bc + "'");

  const json& tj = get_object(doc, "train", empty);
  reject_unknown(tj, "train",
                 {"learning_rate", "max_epochs", "adam_beta1", "adam_beta2",
                  "adam_epsilon", "seed", "record_every", "architecture",
                  "error_nodes", "bound_tolerance"});
  TrainConfig& t = cfg.train;
  t.learning_rate = get_number(tj, "train.", "learning_rate", t.learning_rate);
  t.max_epochs = to_int(get_integer(tj, "train.", "max_epochs", t.max_epochs), "train.max_epochs");
  t.adam_beta1 = get_number(tj, "train.", "adam_beta1", t.adam_beta1);
  t.adam_beta2 = get_number(tj, "train.", "adam_beta2", t.adam_beta2);
  t.adam_epsilon = get_number(tj, "train.", "adam_epsilon", t.adam_epsilon);
  {
    const json* v = member(tj, "seed");
    if (v) {
      if (!v->is_number_unsigned()) fail("train.seed", "expected a non-negative integer");
      t.seed = v->get<std::uint64_t>();
    }
  }
  t.record_every = to_int(get_integer(tj, "train.", "record_every", t.record_every), "train.record_every");
  t.error_nodes = to_int(get_integer(tj, "train.", "error_nodes", t.error_nodes), "train.error_nodes");
  t.bound_tolerance = get_number(tj, "train.", "bound_tolerance", t.bound_tolerance);
  if (const json* a = member(tj, "architecture")) {
    if (!a->is_array()) fail("train.architecture", "expected an array of integers");
    t.architecture.clear();
    for (const auto& w : *a) {
      if (!w.is_number_integer()) fail("train.architecture", "expected integers");
      t.architecture.push_back(to_int(w.get<long long>(), "train.architecture"));
    }
  }
  try {
    t.validate();
  } catch (const ConfigError& e) {
    fail("train", e.what());
  }

  cfg.solution_samples = to_int(get_integer(doc, "", "solution_samples", cfg.solution_samples), "solution_samples");
  if (cfg.solution_samples < 2) fail("solution_samples", "must be >= 2");
  cfg.output_dir = get_string(doc, "", "output_dir", cfg.output_dir.string());

  // Surfaces remaining inconsistencies (e.g. a zero-width test space).
  try {
    (void)cfg.make_problem();
    (void)cfg.make_space();
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open config file");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_config(ss.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

nlohmann::json to_json(const RunConfig& cfg) {
  json j;
  j["problem"] = {{"kind", to_string(cfg.problem.kind)},
                  {"epsilon", cfg.problem.epsilon},
                  {"beta", cfg.problem.beta},
                  {"delta_location", cfg.problem.delta_location}};
  j["space"] = {{"kind", to_string(cfg.space.kind)},
                {"dimension", cfg.space.dimension}};
  j["bc"] = to_string(cfg.bc);
  const TrainConfig& t = cfg.train;
  j["train"] = {{"learning_rate", t.learning_rate},
                {"max_epochs", t.max_epochs},
                {"adam_beta1", t.adam_beta1},
                {"adam_beta2", t.adam_beta2},
                {"adam_epsilon", t.adam_epsilon},
                {"seed", t.seed},
                {"record_every", t.record_every},
                {"architecture", t.architecture},
                {"error_nodes", t.error_nodes},
                {"bound_tolerance", t.bound_tolerance}};
  j["solution_samples"] = cfg.solution_samples;
  j["output_dir"] = cfg.output_dir.string();
  return j;
}

}  // namespace rvpinn::cli

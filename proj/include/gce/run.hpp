// Copyright 2026 The Authors.
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

#ifndef GCE_RUN_HPP_
#define GCE_RUN_HPP_

// Cross-validated runs: per fold, train a model, take the test rows it
// predicts negative, run the engine on them and evaluate the actions.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gce/classifier.hpp"
#include "gce/glance.hpp"
#include "gce/metrics.hpp"
#include "gce/tabular.hpp"
#include "json.hpp"

namespace gce {

inline constexpr int kReportSchemaVersion = 1;

struct ModelConfig {
  std::string type = "logistic";  // "logistic" or "knn"
  LogisticHyper logistic;
  std::size_t knn_k = 5;

  std::string label() const;  // "LR" / "KNN"
};

struct Gates {
  std::optional<double> min_eff;
  std::optional<double> max_cost;
};

struct RunConfig {
  std::string name;
  std::string dataset_name;
  std::filesystem::path dataset_path;
  SchemaConfig schema;
  ModelConfig model;
  GlanceConfig glance;
  std::size_t folds = 5;
  std::uint64_t seed = 13;
  std::filesystem::path output_dir;
  std::size_t curve_steps = 50;
  std::size_t jobs = 1;
  Gates gates;
  // Normalized configuration as parsed (paths as written).
  nlohmann::json source;

  // Parses a config document. Relative dataset/schema paths resolve
  // against base_dir; a relative output dir resolves against the
  // GCE_OUTPUT_ROOT environment variable when set, else base_dir. All
  // problems are collected and reported together as one ConfigError.
  static RunConfig from_json(const nlohmann::json& j,
                             const std::filesystem::path& base_dir);
  static RunConfig load(const std::filesystem::path& path,
                        const std::vector<std::string>& overrides = {});
  std::string digest() const;
};

// Applies "a.b.c=value" overrides; values parse as JSON, else as strings.
void apply_overrides(nlohmann::json& j, const std::vector<std::string>& overrides);

std::unique_ptr<Classifier> train_model(const ModelConfig& config,
                                        const Dataset& train);

struct FoldOutcome {
  std::size_t fold = 0;
  std::size_t train_rows = 0;
  std::size_t test_rows = 0;
  double test_accuracy = 0.0;
  std::size_t affected = 0;
  GceSolution solution;
  Coverage coverage;
  FoldResult result;
  nlohmann::json model;
  Schema schema;
};

struct RunResult {
  std::vector<FoldOutcome> folds;
  EvalRecord record;
  RecordFlags flags;
  std::vector<CurvePoint> curve;
  bool gates_passed = true;
  std::vector<std::string> gate_failures;
  // Deterministic body: no timings, timestamps or host details.
  nlohmann::json report;
  // Timings and timestamps.
  nlohmann::json manifest;
};

// Runs every fold (up to config.jobs concurrently). A failing fold aborts
// the run with an Error naming the fold.
RunResult execute_run(const RunConfig& config);

// Writes report.json, curves.csv, records.json, manifest.json and
// models/fold_<i>.json under config.output_dir.
void write_run_outputs(const RunConfig& config, const RunResult& result);

}  // namespace gce

#endif  // GCE_RUN_HPP_

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

#ifndef GCE_METRICS_HPP_
#define GCE_METRICS_HPP_

// Evaluation of global counterfactual action sets: recourse cost,
// effectiveness, average cost, effectiveness-cost curves, fold aggregation,
// Pareto dominance and practicality/robustness flags.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gce/action.hpp"
#include "gce/classifier.hpp"
#include "gce/kernels.hpp"
#include "gce/tabular.hpp"
#include "json.hpp"

namespace gce {

// Minimum cost over the actions that flip x; nullopt when none does.
std::optional<double> recourse_cost(std::span<const Action> actions,
                                    const Instance& x, const Classifier& model,
                                    const Schema& schema);

struct Coverage {
  // Recourse cost per affected instance.
  std::vector<std::optional<double>> recourse;
  // Index of the cheapest effective action per instance (first on ties).
  std::vector<std::optional<std::size_t>> chosen;
  std::size_t covered = 0;
  double effectiveness = 0.0;
  std::optional<double> average_cost;
};

// One pass over all (action, instance) pairs. Throws Error on empty xa.
Coverage evaluate_coverage(std::span<const Action> actions,
                           std::span<const Instance> xa,
                           const Classifier& model, const Schema& schema,
                           Execution exec = Execution::kParallel);

// Fraction of xa with a recourse. Throws Error on empty xa.
double effectiveness(std::span<const Action> actions,
                     std::span<const Instance> xa, const Classifier& model,
                     const Schema& schema);

// Mean recourse cost over covered instances; nullopt at zero coverage.
std::optional<double> average_cost(std::span<const Action> actions,
                                   std::span<const Instance> xa,
                                   const Classifier& model,
                                   const Schema& schema);

struct CurvePoint {
  double cost_threshold = 0.0;
  double covered_fraction = 0.0;
};

// Fraction of all instances with recourse cost <= t, per threshold. Throws
// Error when the grid is not sorted ascending.
std::vector<CurvePoint> effectiveness_cost_curve(const Coverage& coverage,
                                                 std::span<const double> grid);
std::vector<CurvePoint> effectiveness_cost_curve(std::span<const Action> actions,
                                                 std::span<const Instance> xa,
                                                 const Classifier& model,
                                                 const Schema& schema,
                                                 std::span<const double> grid);

// `steps` + 1 evenly spaced thresholds from 0 to max_cost.
std::vector<double> curve_grid(double max_cost, std::size_t steps);

// "cost_threshold,covered_fraction" header plus one line per point.
std::string curve_to_csv(std::span<const CurvePoint> curve);

struct FoldResult {
  // Fraction in [0, 1].
  double effectiveness = 0.0;
  std::optional<double> average_cost;
  std::size_t size = 0;
  double runtime_seconds = 0.0;
};

enum class StdKind { kPopulation, kSample };

struct EvalRecord {
  std::string method;
  std::string dataset;
  std::string model;
  std::size_t s = 0;
  // Percentages.
  double eff_mean = 0.0;
  double eff_std = 0.0;
  // Absent when no fold had coverage.
  std::optional<double> cost_mean;
  double cost_std = 0.0;
  // Mean solution size across folds.
  double size_actual = 0.0;
  double runtime_seconds = 0.0;
  // Folds whose average cost was absent.
  std::size_t cost_absent_folds = 0;
  // Per-fold values; empty for imported summary records.
  std::vector<FoldResult> folds;
};

// Means and standard deviations over folds, effectiveness in percent. Folds
// without coverage are left out of the cost statistics and counted.
EvalRecord aggregate_folds(std::span<const FoldResult> folds,
                           StdKind std_kind = StdKind::kPopulation);

double mean(std::span<const double> values);
double stddev(std::span<const double> values, StdKind kind);

enum class DominanceMode { kMeans, kPerFold };

// r1 is at least as effective and at most as costly, strictly better in one.
// An absent cost counts as worse than any cost. Throws Error when the
// records differ in dataset, model or s, or (per-fold mode) lack matching
// fold vectors.
bool pareto_dominates(const EvalRecord& r1, const EvalRecord& r2,
                      DominanceMode mode = DominanceMode::kMeans);

inline constexpr double kPracticalEffectiveness = 80.0;
inline constexpr double kMaxEffStd = 5.0;

struct RecordFlags {
  bool practical = false;
  bool eff_robust = false;
  bool cost_robust = false;
  bool robust = false;
};

// practical: eff_mean >= 80. robust: eff_std <= 5 and cost_std <= cost_mean/2.
RecordFlags flag_record(const EvalRecord& r);

nlohmann::json record_to_json(const EvalRecord& r);
EvalRecord record_from_json(const nlohmann::json& j);
// Accepts a single record, an array of records, or {"records": [...]}.
std::vector<EvalRecord> records_from_json(const nlohmann::json& j);

struct DominanceEntry {
  std::string dataset;
  std::string model;
  std::size_t s = 0;
  std::string dominator;
  std::string dominated;
};

struct PairTally {
  std::string method;
  std::string other;
  std::size_t comparisons = 0;
  std::size_t dominates = 0;
  std::size_t dominated_by = 0;
};

struct MethodTally {
  std::string method;
  std::size_t comparisons = 0;
  std::size_t dominates = 0;
  std::size_t dominated_by = 0;
};

struct DominanceReport {
  std::vector<DominanceEntry> matrix;
  // Every ordered pair of distinct methods that met on some key.
  std::vector<PairTally> pairs;
  std::vector<MethodTally> methods;
  std::vector<RecordFlags> flags;
  std::vector<EvalRecord> records;

  const MethodTally* method(const std::string& name) const;
  const PairTally* pair(const std::string& method, const std::string& other) const;
  nlohmann::json to_json() const;
};

// Compares all records that share (dataset, model). Throws Error listing
// the offending records when a method appears twice for one (dataset,
// model, s) or when records for one (dataset, model) disagree on s.
DominanceReport compare_records(std::vector<EvalRecord> records,
                                DominanceMode mode = DominanceMode::kMeans);

}  // namespace gce

#endif  // GCE_METRICS_HPP_

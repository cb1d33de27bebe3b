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

#ifndef GCE_GLANCE_HPP_
#define GCE_GLANCE_HPP_

// The GLANCE engine: cluster the affected population, generate candidate
// actions per cluster centroid, merge clusters pairwise by the smallest
// combined feature-space and action-space distance until s remain, then
// pick one action per surviving cluster.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gce/action.hpp"
#include "gce/classifier.hpp"
#include "gce/clustering.hpp"
#include "gce/generators.hpp"
#include "gce/kernels.hpp"
#include "gce/tabular.hpp"
#include "json.hpp"

namespace gce {

struct SelectionStrategy {
  enum class Kind { kMaxEffectiveness, kMinCost, kMinCostAboveEff, kMaxEffBelowCost };

  Kind kind = Kind::kMaxEffectiveness;
  // MinCostAboveEff: minimum cluster-local effectiveness in [0, 1].
  double threshold = 0.0;
  // MaxEffBelowCost: maximum cluster-local average cost, >= 0.
  double budget = 0.0;

  static SelectionStrategy max_effectiveness() { return {}; }
  static SelectionStrategy min_cost() { return {Kind::kMinCost, 0.0, 0.0}; }
  static SelectionStrategy min_cost_above_eff(double t) {
    return {Kind::kMinCostAboveEff, t, 0.0};
  }
  static SelectionStrategy max_eff_below_cost(double b) {
    return {Kind::kMaxEffBelowCost, 0.0, b};
  }

  void validate() const;
  // "max_effectiveness", "min_cost", "min_cost_above_eff:0.9",
  // "max_eff_below_cost:2.5".
  std::string to_string() const;
  static SelectionStrategy parse(const std::string& text);
};

// Population used to score candidates at selection time.
enum class SelectionScope { kCluster, kGlobal };

struct GlanceConfig {
  std::size_t s = 4;
  std::size_t k = 100;
  std::size_t m = 10;
  // m and seed here override the generator's own fields.
  GeneratorConfig generator;
  SelectionStrategy selection;
  SelectionScope scope = SelectionScope::kCluster;
  std::uint64_t seed = 13;
  Execution exec = Execution::kParallel;

  void validate() const;
};

struct CandidateScore {
  // Fraction of the population flipped.
  double effectiveness = 0.0;
  // Mean cost over flipped members; +inf when none flips.
  double cost = 0.0;
};

// Scores every candidate against a population.
std::vector<CandidateScore> score_candidates(std::span<const Action> candidates,
                                             std::span<const Instance> population,
                                             const Classifier& model,
                                             const Schema& schema,
                                             Execution exec = Execution::kParallel);

// Index of the chosen candidate, or nullopt for an empty pool. `actions`
// breaks exact ties in canonical order.
std::optional<std::size_t> choose(std::span<const CandidateScore> scores,
                                  std::span<const Action> actions,
                                  const SelectionStrategy& strategy);

struct Selection {
  Action action;
  CandidateScore score;
};

// Picks one candidate of the cluster, scored on its own members.
std::optional<Selection> select_final(const ClusterState& cluster,
                                      const SelectionStrategy& strategy,
                                      const Classifier& model,
                                      const Schema& schema,
                                      Execution exec = Execution::kParallel);

struct ActionDiagnostics {
  std::size_t source_cluster = 0;
  std::size_t cluster_size = 0;
  double local_effectiveness = 0.0;
  double local_cost = 0.0;
};

struct MergeStep {
  std::size_t id1 = 0;
  std::size_t id2 = 0;
  double d1 = 0.0;
  double d2 = 0.0;
};

struct GceSolution {
  std::vector<Action> actions;
  std::vector<ActionDiagnostics> diagnostics;
  std::vector<std::string> warnings;
  // Phase name -> seconds.
  std::map<std::string, double> timings;
  std::size_t initial_clusters = 0;
  std::vector<MergeStep> merges;
  // Union of all generated candidates, deduplicated, in cluster order.
  std::vector<Action> candidate_pool;
  // Cluster id per affected instance after merging.
  std::vector<std::size_t> final_assignment;
};

nlohmann::json solution_to_json(const GceSolution& solution,
                                const Schema& schema, bool include_timings);

// Runs with the generator named in cfg.generator, fitted on train.
GceSolution glance(std::span<const Instance> xa, const Classifier& model,
                   const Dataset& train, const GlanceConfig& cfg);

// Runs with a caller-supplied generator.
GceSolution glance(std::span<const Instance> xa, const Classifier& model,
                   const Schema& schema, const CandidateGenerator& generator,
                   const GlanceConfig& cfg);

}  // namespace gce

#endif  // GCE_GLANCE_HPP_

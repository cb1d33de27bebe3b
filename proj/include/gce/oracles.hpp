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

#ifndef GCE_ORACLES_HPP_
#define GCE_ORACLES_HPP_

// Reference solvers for the explicit-pool problem: choose at most s actions
// from a given pool. Exhaustive enumeration gives the optimum on small
// instances; the greedy cover carries the usual (1 - 1/e) coverage bound.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gce/action.hpp"
#include "gce/classifier.hpp"
#include "gce/tabular.hpp"
#include "json.hpp"

namespace gce {

struct ExplicitInstance {
  Schema schema;
  std::vector<Instance> xa;
  std::vector<Action> pool;
  std::shared_ptr<const Classifier> model;
  std::size_t s = 1;

  // Throws Error on an empty pool, s == 0 or a missing model.
  void validate() const;
};

struct OracleSolution {
  // Pool indices, ascending.
  std::vector<std::size_t> indices;
  std::vector<Action> actions;
  double effectiveness = 0.0;
  std::optional<double> average_cost;
};

inline constexpr std::uint64_t kEnumerationBudget = 1'000'000;

// Number of nonempty subsets of size <= s, saturating at UINT64_MAX.
std::uint64_t subset_count(std::size_t pool, std::size_t s);

// Lexicographically first subset (by sorted pool indices) of size <= s that
// maximizes effectiveness, then minimizes average cost. Throws Error when
// the subset count exceeds the budget.
OracleSolution exhaustive_best(const ExplicitInstance& inst,
                               std::uint64_t budget = kEnumerationBudget);

// Non-dominated (effectiveness, average cost) pairs over all subsets of
// size <= s, one lexicographically first subset per pair, by decreasing
// effectiveness.
std::vector<OracleSolution> pareto_front(const ExplicitInstance& inst,
                                         std::uint64_t budget = kEnumerationBudget);

// s rounds of maximum marginal coverage; ties by lower mean cost over the
// newly covered instances, then canonical action order. Stops at zero gain.
OracleSolution greedy_cover(const ExplicitInstance& inst);

// Max-cover instance: one numeric feature and one affected point e_j per
// element, one action per set adding (i + 1) to every feature, and a lookup
// model flipping a_i(x_j) exactly when element j belongs to set i.
ExplicitInstance max_cover_reduction(std::span<const std::size_t> universe,
                                     const std::vector<std::vector<std::size_t>>& family,
                                     std::size_t s);

// Seeded random instance: alternately a random max-cover reduction or a
// small two-feature linear-model instance with a random integer pool.
ExplicitInstance random_explicit_instance(std::uint64_t seed,
                                          std::size_t max_xa = 15,
                                          std::size_t max_pool = 10,
                                          std::size_t max_s = 3);

struct OracleCase {
  std::uint64_t seed = 0;
  std::size_t xa = 0;
  std::size_t pool = 0;
  std::size_t s = 0;
  double optimum = 0.0;
  double greedy = 0.0;
  double glance = 0.0;
  bool glance_ok = false;
  bool greedy_ok = false;
};

struct OracleReport {
  std::vector<OracleCase> cases;
  double seconds = 0.0;

  bool all_ok() const;
  nlohmann::json to_json() const;
};

// GLANCE restricted to each pool against the exhaustive optimum, and greedy
// against (1 - 1/e) of the optimum, over `count` seeded random instances.
OracleReport run_oracle_suite(std::size_t count, std::uint64_t seed);

}  // namespace gce

#endif  // GCE_ORACLES_HPP_

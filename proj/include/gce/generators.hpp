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

#ifndef GCE_GENERATORS_HPP_
#define GCE_GENERATORS_HPP_

// Candidate counterfactual action generators. Each produces up to m
// distinct actions that flip a given (possibly synthetic) instance to the
// positive class. All generators are deterministic in (inputs, seed).

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gce/action.hpp"
#include "gce/classifier.hpp"
#include "gce/tabular.hpp"

namespace gce {

enum class GeneratorKind {
  kRandomSampling,
  kNearestNeighbors,
  kNearestNeighborsScaled,
};

std::string to_string(GeneratorKind kind);
GeneratorKind parse_generator_kind(const std::string& name);

struct GeneratorConfig {
  GeneratorKind kind = GeneratorKind::kRandomSampling;
  std::size_t m = 10;
  // Random sampling: number of most important features that may change.
  std::size_t k_f = 3;
  // Random sampling: replacement labels per categorical feature, taken from
  // the most frequent among positively predicted training rows.
  std::size_t k_c = 10;
  // Scaled nearest neighbors: samples along each centroid-neighbor segment.
  std::size_t line_samples = 20;
  // Random sampling: proposals per requested candidate.
  std::size_t proposals_per_candidate = 50;
  std::uint64_t seed = 13;

  // Throws ConfigError on out-of-range values.
  void validate() const;
};

struct FeatureImportance {
  std::vector<double> scores;
  // Feature indices by decreasing score, ties by index.
  std::vector<std::size_t> ranking;
};

// Per feature: fraction of predictions that change when that feature's
// column is shuffled once (stream derived from seed and the feature index).
FeatureImportance permutation_importance(const Classifier& model,
                                         const Dataset& data,
                                         std::uint64_t seed);

struct Candidates {
  std::vector<Action> actions;
  std::optional<std::string> warning;
};

class CandidateGenerator {
 public:
  virtual ~CandidateGenerator() = default;
  virtual Candidates generate(const Instance& centroid,
                              std::uint64_t seed) const = 0;
  // Upper bound on model predictions per generate() call.
  virtual std::size_t prediction_budget() const = 0;
  virtual std::string name() const = 0;
};

// Changes one random top-k_f feature at a time until the prediction flips
// (or every top feature has changed), for m * proposals_per_candidate
// proposals. Numeric steps are +-{1..10} bin widths. Returns the m cheapest
// distinct flips, cost ascending, ties in canonical action order.
class RandomSamplingGenerator final : public CandidateGenerator {
 public:
  RandomSamplingGenerator(const Classifier& model, const Dataset& train,
                          GeneratorConfig config);

  Candidates generate(const Instance& centroid,
                      std::uint64_t seed) const override;
  std::size_t prediction_budget() const override;
  std::string name() const override { return "random_sampling"; }

  const FeatureImportance& importance() const { return importance_; }
  const std::vector<std::size_t>& features() const { return features_; }
  // Replacement labels per feature (empty for numerics).
  const std::vector<std::vector<std::size_t>>& replacement_labels() const {
    return labels_;
  }

 private:
  const Classifier& model_;
  Schema schema_;
  GeneratorConfig config_;
  FeatureImportance importance_;
  std::vector<std::size_t> features_;
  std::vector<std::vector<std::size_t>> labels_;
};

// Actions that move the centroid onto its nearest positively predicted
// training rows (encoded L1). The scaled variant stops at the first sampled
// point along each segment that is already positive.
class NearestNeighborsGenerator final : public CandidateGenerator {
 public:
  // Throws Error("no unaffected population") without positive rows.
  NearestNeighborsGenerator(const Classifier& model, const Dataset& train,
                            GeneratorConfig config, bool scaled);

  Candidates generate(const Instance& centroid,
                      std::uint64_t seed) const override;
  std::size_t prediction_budget() const override;
  std::string name() const override {
    return scaled_ ? "nearest_neighbors_scaled" : "nearest_neighbors";
  }

  // Indices into the positive rows, nearest first.
  std::vector<std::size_t> neighbor_order(const Instance& centroid) const;
  const std::vector<Instance>& positives() const { return positives_; }

  // Action turning `from` into `to`: numeric differences and categorical
  // sets where labels differ.
  Action action_to(const Instance& from, const Instance& to) const;
  // Line search from `from` towards `to`; falls back to action_to().
  Action scaled_action_to(const Instance& from, const Instance& to) const;

 private:
  const Classifier& model_;
  Schema schema_;
  GeneratorConfig config_;
  bool scaled_;
  std::vector<Instance> positives_;
  EncodedMatrix encoded_positives_;
};

// Returns a fixed pool for every centroid (restricting the engine to an
// explicit candidate set).
class FixedPoolGenerator final : public CandidateGenerator {
 public:
  explicit FixedPoolGenerator(std::vector<Action> pool)
      : pool_(deduplicate(std::move(pool))) {}

  Candidates generate(const Instance&, std::uint64_t) const override {
    return {pool_, std::nullopt};
  }
  std::size_t prediction_budget() const override { return 0; }
  std::string name() const override { return "fixed_pool"; }

 private:
  std::vector<Action> pool_;
};

std::unique_ptr<CandidateGenerator> make_generator(const GeneratorConfig& config,
                                                   const Classifier& model,
                                                   const Dataset& train);

std::vector<Action> generate_random_sampling(const Instance& centroid,
                                             const Classifier& model,
                                             const Dataset& train,
                                             const GeneratorConfig& config);
std::vector<Action> generate_nearest_neighbors(const Instance& centroid,
                                               const Classifier& model,
                                               const Dataset& train,
                                               const GeneratorConfig& config);
std::vector<Action> generate_nearest_neighbors_scaled(
    const Instance& centroid, const Classifier& model, const Dataset& train,
    const GeneratorConfig& config);

}  // namespace gce

#endif  // GCE_GENERATORS_HPP_

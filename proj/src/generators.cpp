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

#include "gce/generators.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "gce/error.hpp"
#include "gce/kernels.hpp"
#include "gce/rng.hpp"

namespace gce {

std::string to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::kRandomSampling:
      return "random_sampling";
    case GeneratorKind::kNearestNeighbors:
      return "nearest_neighbors";
    case GeneratorKind::kNearestNeighborsScaled:
      return "nearest_neighbors_scaled";
  }
  return "unknown";
}

GeneratorKind parse_generator_kind(const std::string& name) {
  if (name == "random_sampling") return GeneratorKind::kRandomSampling;
  if (name == "nearest_neighbors") return GeneratorKind::kNearestNeighbors;
  if (name == "nearest_neighbors_scaled") {
    return GeneratorKind::kNearestNeighborsScaled;
  }
  throw ConfigError("unknown generator '" + name + "'");
}

void GeneratorConfig::validate() const {
  if (m < 1) throw ConfigError("generator m must be >= 1");
  if (k_f < 1) throw ConfigError("generator k_f must be >= 1");
  if (k_c < 1) throw ConfigError("generator k_c must be >= 1");
  if (line_samples < 2) throw ConfigError("line_samples must be >= 2");
  if (proposals_per_candidate < 1) {
    throw ConfigError("proposals_per_candidate must be >= 1");
  }
}

namespace {

bool flips(const Classifier& model, const Action& a, const Instance& x,
           const Schema& schema) {
  return predict(model, apply(a, x), schema) == kPositive;
}

std::vector<std::size_t> positive_rows(const Classifier& model,
                                       const Dataset& train) {
  const std::vector<int> pred =
      model.predict_batch(encode_all(train.rows, train.schema));
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (pred[i] == kPositive) out.push_back(i);
  }
  return out;
}

const char* kAlreadyPositive = "centroid is already predicted positive";

}  // namespace

RandomSamplingGenerator::RandomSamplingGenerator(const Classifier& model,
                                                 const Dataset& train,
                                                 GeneratorConfig config)
    : model_(model), schema_(train.schema), config_(config) {
  config_.validate();
  importance_ = permutation_importance(model, train, config_.seed);
  const std::size_t nf = std::min(config_.k_f, schema_.size());
  features_.assign(importance_.ranking.begin(),
                   importance_.ranking.begin() + static_cast<long>(nf));

  const std::vector<std::size_t> pos = positive_rows(model, train);
  labels_.assign(schema_.size(), {});
  for (std::size_t f : features_) {
    const auto& feature = schema_.feature(f);
    if (feature.is_numeric()) continue;
    std::vector<std::size_t> counts(feature.categories.size(), 0);
    for (std::size_t r : pos) ++counts[train.rows[r].category(f)];
    std::vector<std::size_t> order;
    for (std::size_t c = 0; c < counts.size(); ++c) {
      if (counts[c] > 0) order.push_back(c);
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                       return counts[a] > counts[b];
                     });
    if (order.size() > config_.k_c) order.resize(config_.k_c);
    labels_[f] = std::move(order);
  }
}

std::size_t RandomSamplingGenerator::prediction_budget() const {
  return 1 + config_.m * config_.proposals_per_candidate * features_.size();
}

Candidates RandomSamplingGenerator::generate(const Instance& centroid,
                                             std::uint64_t seed) const {
  if (predict(model_, centroid, schema_) == kPositive) {
    return {{}, kAlreadyPositive};
  }
  Rng rng(seed);
  std::map<std::string, std::pair<double, Action>> found;
  const std::size_t budget = config_.m * config_.proposals_per_candidate;
  for (std::size_t p = 0; p < budget; ++p) {
    Action a;
    std::vector<std::size_t> remaining = features_;
    while (!remaining.empty()) {
      const std::size_t pick = rng.uniform_index(remaining.size());
      const std::size_t f = remaining[pick];
      remaining.erase(remaining.begin() + static_cast<long>(pick));
      const auto& feature = schema_.feature(f);
      if (feature.is_numeric()) {
        const auto steps = static_cast<double>(rng.uniform_int(1, 10));
        const double sign = rng.coin() ? 1.0 : -1.0;
        a.set_delta(f, sign * steps * feature.bin_width);
      } else {
        std::vector<std::size_t> options;
        for (std::size_t c : labels_[f]) {
          if (c != centroid.category(f)) options.push_back(c);
        }
        if (options.empty()) continue;
        a.set_category(f, options[rng.uniform_index(options.size())]);
      }
      if (flips(model_, a, centroid, schema_)) {
        std::string key = canonical_key(a);
        if (!found.count(key)) {
          const double c = cost(a, centroid, schema_);
          found.emplace(std::move(key), std::make_pair(c, a));
        }
        break;
      }
    }
  }
  std::vector<std::pair<double, Action>> ranked;
  ranked.reserve(found.size());
  for (auto& [key, entry] : found) ranked.push_back(std::move(entry));
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second < b.second;
  });
  Candidates out;
  for (std::size_t i = 0; i < ranked.size() && i < config_.m; ++i) {
    out.actions.push_back(std::move(ranked[i].second));
  }
  if (out.actions.empty()) {
    out.warning = "random sampling found no flipping action";
  }
  return out;
}

NearestNeighborsGenerator::NearestNeighborsGenerator(const Classifier& model,
                                                     const Dataset& train,
                                                     GeneratorConfig config,
                                                     bool scaled)
    : model_(model), schema_(train.schema), config_(config), scaled_(scaled) {
  config_.validate();
  for (std::size_t r : positive_rows(model, train)) {
    positives_.push_back(train.rows[r]);
  }
  if (positives_.empty()) throw Error("no unaffected population");
  encoded_positives_ = encode_all(positives_, schema_);
}

std::size_t NearestNeighborsGenerator::prediction_budget() const {
  // One validation per positive row in the worst case, times the line search.
  const std::size_t per = scaled_ ? 2 * config_.line_samples + 1 : 1;
  return 1 + positives_.size() * per;
}

std::vector<std::size_t> NearestNeighborsGenerator::neighbor_order(
    const Instance& centroid) const {
  const EncodedPoint c = encode(centroid, schema_);
  std::vector<double> dist(positives_.size());
  for (std::size_t i = 0; i < positives_.size(); ++i) {
    dist[i] = l1_distance(c, encoded_positives_.row(i));
  }
  std::vector<std::size_t> order(positives_.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return dist[a] < dist[b]; });
  return order;
}

Action NearestNeighborsGenerator::action_to(const Instance& from,
                                            const Instance& to) const {
  Action a;
  for (std::size_t f = 0; f < schema_.size(); ++f) {
    if (schema_.feature(f).is_numeric()) {
      a.set_delta(f, to.values[f] - from.values[f]);
    } else if (to.category(f) != from.category(f)) {
      a.set_category(f, to.category(f));
    }
  }
  return a;
}

Action NearestNeighborsGenerator::scaled_action_to(const Instance& from,
                                                   const Instance& to) const {
  const Action full = action_to(from, to);
  std::vector<std::pair<std::size_t, double>> numeric;
  std::vector<std::pair<std::size_t, std::size_t>> categorical;
  for (const auto& [f, change] : full.changes()) {
    if (const auto* d = std::get_if<NumericDelta>(&change)) {
      numeric.emplace_back(f, d->delta);
    } else {
      categorical.emplace_back(f, std::get<CategoricalSet>(change).target);
    }
  }
  if (numeric.empty()) return full;
  const std::size_t steps = config_.line_samples;
  for (std::size_t i = 1; i <= steps; ++i) {
    Action partial;
    for (const auto& [f, delta] : numeric) {
      const double d = i == steps ? delta
                                  : delta * static_cast<double>(i) /
                                        static_cast<double>(steps);
      partial.set_delta(f, d);
    }
    if (i == steps && categorical.empty()) return full;
    if (flips(model_, partial, from, schema_)) return partial;
    if (!categorical.empty()) {
      if (i == steps) return full;
      Action with_labels = partial;
      for (const auto& [f, target] : categorical) {
        with_labels.set_category(f, target);
      }
      if (flips(model_, with_labels, from, schema_)) return with_labels;
    }
  }
  return full;
}

Candidates NearestNeighborsGenerator::generate(const Instance& centroid,
                                               std::uint64_t) const {
  // A centroid on a positive row yields the empty action, so no early exit.
  Candidates out;
  std::set<std::string> seen;
  for (std::size_t idx : neighbor_order(centroid)) {
    if (out.actions.size() >= config_.m) break;
    const Instance& nb = positives_[idx];
    Action a = scaled_ ? scaled_action_to(centroid, nb) : action_to(centroid, nb);
    // Floating-point round trips can land a hair short of the neighbor.
    if (!flips(model_, a, centroid, schema_)) continue;
    if (seen.insert(canonical_key(a)).second) out.actions.push_back(std::move(a));
  }
  if (out.actions.empty()) {
    out.warning = "no neighbor action flips the centroid";
  }
  return out;
}

std::unique_ptr<CandidateGenerator> make_generator(const GeneratorConfig& config,
                                                   const Classifier& model,
                                                   const Dataset& train) {
  switch (config.kind) {
    case GeneratorKind::kRandomSampling:
      return std::make_unique<RandomSamplingGenerator>(model, train, config);
    case GeneratorKind::kNearestNeighbors:
      return std::make_unique<NearestNeighborsGenerator>(model, train, config,
                                                         false);
    case GeneratorKind::kNearestNeighborsScaled:
      return std::make_unique<NearestNeighborsGenerator>(model, train, config,
                                                         true);
  }
  throw ConfigError("unknown generator kind");
}

std::vector<Action> generate_random_sampling(const Instance& centroid,
                                             const Classifier& model,
                                             const Dataset& train,
                                             const GeneratorConfig& config) {
  return RandomSamplingGenerator(model, train, config)
      .generate(centroid, config.seed)
      .actions;
}

std::vector<Action> generate_nearest_neighbors(const Instance& centroid,
                                               const Classifier& model,
                                               const Dataset& train,
                                               const GeneratorConfig& config) {
  return NearestNeighborsGenerator(model, train, config, false)
      .generate(centroid, config.seed)
      .actions;
}

std::vector<Action> generate_nearest_neighbors_scaled(
    const Instance& centroid, const Classifier& model, const Dataset& train,
    const GeneratorConfig& config) {
  return NearestNeighborsGenerator(model, train, config, true)
      .generate(centroid, config.seed)
      .actions;
}

}  // namespace gce

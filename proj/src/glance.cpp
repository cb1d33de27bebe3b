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

#include "gce/glance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gce/error.hpp"
#include "gce/rng.hpp"

namespace gce {

void SelectionStrategy::validate() const {
  if (kind == Kind::kMinCostAboveEff && !(threshold >= 0.0 && threshold <= 1.0)) {
    throw ConfigError("selection threshold must lie in [0, 1]");
  }
  if (kind == Kind::kMaxEffBelowCost && !(budget >= 0.0 && std::isfinite(budget))) {
    throw ConfigError("selection cost budget must be finite and >= 0");
  }
}

std::string SelectionStrategy::to_string() const {
  switch (kind) {
    case Kind::kMaxEffectiveness:
      return "max_effectiveness";
    case Kind::kMinCost:
      return "min_cost";
    case Kind::kMinCostAboveEff:
      return "min_cost_above_eff:" + format_double(threshold);
    case Kind::kMaxEffBelowCost:
      return "max_eff_below_cost:" + format_double(budget);
  }
  return "unknown";
}

SelectionStrategy SelectionStrategy::parse(const std::string& text) {
  const auto colon = text.find(':');
  const std::string name = text.substr(0, colon);
  auto argument = [&]() {
    if (colon == std::string::npos) {
      throw ConfigError("selection '" + name + "' needs a ':<value>' argument");
    }
    try {
      std::size_t used = 0;
      const std::string arg = text.substr(colon + 1);
      const double v = std::stod(arg, &used);
      if (used != arg.size()) throw std::invalid_argument(arg);
      return v;
    } catch (const std::logic_error&) {
      throw ConfigError("bad selection argument in '" + text + "'");
    }
  };
  SelectionStrategy out;
  if (name == "max_effectiveness") {
    out = max_effectiveness();
  } else if (name == "min_cost") {
    out = min_cost();
  } else if (name == "min_cost_above_eff") {
    out = min_cost_above_eff(argument());
  } else if (name == "max_eff_below_cost") {
    out = max_eff_below_cost(argument());
  } else {
    throw ConfigError("unknown selection strategy '" + text + "'");
  }
  out.validate();
  return out;
}

void GlanceConfig::validate() const {
  if (s < 1) throw ConfigError("s must be >= 1");
  if (s > k) throw ConfigError("s must not exceed k");
  if (m < 1) throw ConfigError("m must be >= 1");
  GeneratorConfig g = generator;
  g.m = m;
  g.validate();
  selection.validate();
}

std::vector<CandidateScore> score_candidates(std::span<const Action> candidates,
                                             std::span<const Instance> population,
                                             const Classifier& model,
                                             const Schema& schema,
                                             Execution exec) {
  const CostMatrix costs =
      evaluate_actions(candidates, population, model, schema, exec);
  std::vector<CandidateScore> out(candidates.size());
  for (std::size_t a = 0; a < candidates.size(); ++a) {
    std::size_t hit = 0;
    double total = 0.0;
    for (std::size_t i = 0; i < population.size(); ++i) {
      if (costs.effective(a, i)) {
        ++hit;
        total += costs.at(a, i);
      }
    }
    out[a].effectiveness =
        population.empty()
            ? 0.0
            : static_cast<double>(hit) / static_cast<double>(population.size());
    out[a].cost = hit == 0 ? std::numeric_limits<double>::infinity()
                           : total / static_cast<double>(hit);
  }
  return out;
}

namespace {

// Higher effectiveness, then lower cost, then canonical order.
bool better_by_effectiveness(const CandidateScore& a, const Action& aa,
                             const CandidateScore& b, const Action& ab) {
  if (a.effectiveness != b.effectiveness) return a.effectiveness > b.effectiveness;
  if (a.cost != b.cost) return a.cost < b.cost;
  return aa < ab;
}

// Lower cost, then higher effectiveness, then canonical order.
bool better_by_cost(const CandidateScore& a, const Action& aa,
                    const CandidateScore& b, const Action& ab) {
  if (a.cost != b.cost) return a.cost < b.cost;
  if (a.effectiveness != b.effectiveness) return a.effectiveness > b.effectiveness;
  return aa < ab;
}

template <typename Eligible, typename Better>
std::optional<std::size_t> best_of(std::span<const CandidateScore> scores,
                                   std::span<const Action> actions,
                                   Eligible eligible, Better better) {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (!eligible(scores[i])) continue;
    if (!best || better(scores[i], actions[i], scores[*best], actions[*best])) {
      best = i;
    }
  }
  return best;
}

}  // namespace

std::optional<std::size_t> choose(std::span<const CandidateScore> scores,
                                  std::span<const Action> actions,
                                  const SelectionStrategy& strategy) {
  if (scores.size() != actions.size()) {
    throw Error("choose: scores and actions differ in length");
  }
  if (scores.empty()) return std::nullopt;
  auto any = [](const CandidateScore&) { return true; };
  const auto fallback = best_of(scores, actions, any, better_by_effectiveness);
  std::optional<std::size_t> picked;
  using Kind = SelectionStrategy::Kind;
  switch (strategy.kind) {
    case Kind::kMaxEffectiveness:
      return fallback;
    case Kind::kMinCost:
      picked = best_of(
          scores, actions,
          [](const CandidateScore& s) { return s.effectiveness > 0.0; },
          better_by_cost);
      break;
    case Kind::kMinCostAboveEff:
      picked = best_of(
          scores, actions,
          [&](const CandidateScore& s) {
            return s.effectiveness > 0.0 && s.effectiveness >= strategy.threshold;
          },
          better_by_cost);
      break;
    case Kind::kMaxEffBelowCost:
      picked = best_of(
          scores, actions,
          [&](const CandidateScore& s) {
            return s.effectiveness > 0.0 && s.cost <= strategy.budget;
          },
          better_by_effectiveness);
      break;
  }
  return picked ? picked : fallback;
}

std::optional<Selection> select_final(const ClusterState& cluster,
                                      const SelectionStrategy& strategy,
                                      const Classifier& model,
                                      const Schema& schema, Execution exec) {
  const auto scores = score_candidates(cluster.candidate_actions,
                                       cluster.members, model, schema, exec);
  const auto idx = choose(scores, cluster.candidate_actions, strategy);
  if (!idx) return std::nullopt;
  return Selection{cluster.candidate_actions[*idx], scores[*idx]};
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

EncodedMatrix stack(const std::vector<std::vector<double>>& rows,
                    std::size_t cols) {
  EncodedMatrix m;
  m.rows = rows.size();
  m.cols = cols;
  m.data.reserve(rows.size() * cols);
  for (const auto& r : rows) m.data.insert(m.data.end(), r.begin(), r.end());
  return m;
}

}  // namespace

GceSolution glance(std::span<const Instance> xa, const Classifier& model,
                   const Dataset& train, const GlanceConfig& cfg) {
  cfg.validate();
  GeneratorConfig g = cfg.generator;
  g.m = cfg.m;
  g.seed = cfg.seed;
  const auto generator = make_generator(g, model, train);
  return glance(xa, model, train.schema, *generator, cfg);
}

GceSolution glance(std::span<const Instance> xa, const Classifier& model,
                   const Schema& schema, const CandidateGenerator& generator,
                   const GlanceConfig& cfg) {
  cfg.validate();
  if (xa.empty()) throw Error("affected population is empty");
  {
    const std::vector<int> pred = model.predict_batch(encode_all(xa, schema));
    for (std::size_t i = 0; i < pred.size(); ++i) {
      if (pred[i] != kNegative) {
        throw DataError("affected instance " + std::to_string(i) +
                        " is predicted positive");
      }
    }
  }
  GceSolution out;

  auto start = Clock::now();
  std::vector<ClusterState> clusters =
      kmeans(xa, schema, cfg.k, derive_seed(cfg.seed, 0x6b6d));
  out.initial_clusters = clusters.size();
  out.timings["clustering"] = seconds_since(start);

  start = Clock::now();
  std::vector<Candidates> generated(clusters.size());
  parallel_for(
      clusters.size(),
      [&](std::size_t c) {
        generated[c] =
            generator.generate(clusters[c].centroid, derive_seed(cfg.seed, c));
      },
      cfg.exec);
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    clusters[c].candidate_actions = std::move(generated[c].actions);
    clusters[c].warning = generated[c].warning;
    if (clusters[c].warning) {
      out.warnings.push_back("cluster " + std::to_string(clusters[c].id) + ": " +
                             *clusters[c].warning);
    }
    out.candidate_pool.insert(out.candidate_pool.end(),
                              clusters[c].candidate_actions.begin(),
                              clusters[c].candidate_actions.end());
  }
  out.candidate_pool = deduplicate(std::move(out.candidate_pool));
  out.timings["generation"] = seconds_since(start);

  start = Clock::now();
  const std::size_t dim = schema.encoded_dim();
  std::vector<std::vector<double>> centers;
  std::vector<std::vector<double>> means;
  auto mean_of = [&](const ClusterState& c) {
    return c.candidate_actions.empty()
               ? std::vector<double>(dim, 0.0)
               : mean_action_vector(c.candidate_actions, schema);
  };
  for (const auto& c : clusters) {
    centers.push_back(encode(c.centroid, schema));
    means.push_back(mean_of(c));
  }
  // Clusters stay sorted by id, so scanning pairs (i < j) in order visits
  // (id1, id2) lexicographically.
  while (clusters.size() > cfg.s) {
    const std::size_t n = clusters.size();
    const std::vector<double> dc = pairwise_l1(stack(centers, dim), cfg.exec);
    const std::vector<double> da = pairwise_l1(stack(means, dim), cfg.exec);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (clusters[i].candidate_actions.empty()) continue;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (clusters[j].candidate_actions.empty()) continue;
        worst = std::max(worst, dc[i * n + j] + da[i * n + j]);
      }
    }
    const double penalty = worst > 0.0 ? 2.0 * worst : 1.0;
    std::size_t bi = 0;
    std::size_t bj = 1;
    double best = std::numeric_limits<double>::infinity();
    double best_d1 = 0.0;
    double best_d2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const bool empty = clusters[i].candidate_actions.empty() ||
                           clusters[j].candidate_actions.empty();
        const double a = dc[i * n + j];
        const double b = empty ? penalty : da[i * n + j];
        if (a + b < best) {
          best = a + b;
          bi = i;
          bj = j;
          best_d1 = a;
          best_d2 = b;
        }
      }
    }
    out.merges.push_back({clusters[bi].id, clusters[bj].id, best_d1, best_d2});
    clusters[bi] = merge(clusters[bi], clusters[bj], schema);
    centers[bi] = encode(clusters[bi].centroid, schema);
    means[bi] = mean_of(clusters[bi]);
    clusters.erase(clusters.begin() + static_cast<long>(bj));
    centers.erase(centers.begin() + static_cast<long>(bj));
    means.erase(means.begin() + static_cast<long>(bj));
  }
  out.timings["merging"] = seconds_since(start);

  start = Clock::now();
  out.final_assignment.assign(xa.size(), 0);
  std::vector<std::string> seen;
  for (const auto& c : clusters) {
    for (std::size_t i : c.member_indices) out.final_assignment[i] = c.id;
    std::optional<Selection> pick;
    if (cfg.scope == SelectionScope::kCluster) {
      pick = select_final(c, cfg.selection, model, schema, cfg.exec);
    } else {
      const auto scores =
          score_candidates(c.candidate_actions, xa, model, schema, cfg.exec);
      if (const auto idx = choose(scores, c.candidate_actions, cfg.selection)) {
        pick = Selection{c.candidate_actions[*idx], scores[*idx]};
      }
    }
    if (!pick) {
      out.warnings.push_back("cluster " + std::to_string(c.id) +
                             " has no candidate actions");
      continue;
    }
    const std::string key = canonical_key(pick->action);
    if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
    seen.push_back(key);
    out.actions.push_back(pick->action);
    out.diagnostics.push_back({c.id, c.members.size(), pick->score.effectiveness,
                               pick->score.cost});
  }
  out.timings["selection"] = seconds_since(start);
  return out;
}

nlohmann::json solution_to_json(const GceSolution& solution,
                                const Schema& schema, bool include_timings) {
  nlohmann::json actions = nlohmann::json::array();
  for (std::size_t i = 0; i < solution.actions.size(); ++i) {
    const auto& d = solution.diagnostics[i];
    nlohmann::json cost = std::isfinite(d.local_cost) ? nlohmann::json(d.local_cost)
                                                      : nlohmann::json(nullptr);
    actions.push_back({{"action", action_to_json(solution.actions[i], schema)},
                       {"source_cluster", d.source_cluster},
                       {"cluster_size", d.cluster_size},
                       {"local_effectiveness", d.local_effectiveness},
                       {"local_cost", cost}});
  }
  nlohmann::json merges = nlohmann::json::array();
  for (const auto& m : solution.merges) {
    merges.push_back({{"id1", m.id1}, {"id2", m.id2}, {"d1", m.d1}, {"d2", m.d2}});
  }
  nlohmann::json j = {{"actions", actions},
                      {"warnings", solution.warnings},
                      {"initial_clusters", solution.initial_clusters},
                      {"candidate_pool_size", solution.candidate_pool.size()},
                      {"merges", merges}};
  if (include_timings) j["timings"] = solution.timings;
  return j;
}

}  // namespace gce

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

#include "gce/oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>

#include "gce/error.hpp"
#include "gce/generators.hpp"
#include "gce/glance.hpp"
#include "gce/kernels.hpp"
#include "gce/metrics.hpp"
#include "gce/rng.hpp"

namespace gce {

void ExplicitInstance::validate() const {
  if (pool.empty()) throw Error("explicit instance needs a nonempty pool");
  if (s == 0) throw Error("explicit instance needs s >= 1");
  if (!model) throw Error("explicit instance needs a model");
  if (xa.empty()) throw Error("explicit instance needs affected instances");
}

std::uint64_t subset_count(std::size_t pool, std::size_t s) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t total = 0;
  std::uint64_t binom = 1;  // C(pool, j)
  for (std::size_t j = 1; j <= std::min(s, pool); ++j) {
    // binom * (pool - j + 1) / j is exact for consecutive binomials.
    const std::uint64_t num = pool - j + 1;
    if (binom > kMax / num) return kMax;
    binom = binom * num / j;
    if (total > kMax - binom) return kMax;
    total += binom;
  }
  return total;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Effective cost table: cost[a][i] or +inf.
std::vector<std::vector<double>> cost_table(const ExplicitInstance& inst) {
  const CostMatrix m =
      evaluate_actions(inst.pool, inst.xa, *inst.model, inst.schema);
  std::vector<std::vector<double>> out(inst.pool.size(),
                                       std::vector<double>(inst.xa.size(), kInf));
  for (std::size_t a = 0; a < inst.pool.size(); ++a) {
    for (std::size_t i = 0; i < inst.xa.size(); ++i) {
      if (m.effective(a, i)) out[a][i] = m.at(a, i);
    }
  }
  return out;
}

struct Score {
  std::size_t covered = 0;
  double total = 0.0;

  double avg() const {
    return covered == 0 ? kInf : total / static_cast<double>(covered);
  }
};

Score score(const std::vector<double>& best) {
  Score s;
  for (double c : best) {
    if (c != kInf) {
      ++s.covered;
      s.total += c;
    }
  }
  return s;
}

// Visits every nonempty subset of size <= s in lexicographic order of the
// sorted index sequence, with the per-instance minimum cost of the subset.
template <typename Visit>
void enumerate(const std::vector<std::vector<double>>& table, std::size_t n,
               std::size_t s, Visit&& visit) {
  const std::size_t p = table.size();
  std::vector<std::size_t> chosen;
  std::vector<std::vector<double>> best(s + 1, std::vector<double>(n, kInf));
  auto rec = [&](auto&& self, std::size_t start) -> void {
    const std::size_t depth = chosen.size();
    for (std::size_t a = start; a < p; ++a) {
      auto& cur = best[depth + 1];
      for (std::size_t i = 0; i < n; ++i) {
        cur[i] = std::min(best[depth][i], table[a][i]);
      }
      chosen.push_back(a);
      visit(chosen, cur);
      if (depth + 1 < s) self(self, a + 1);
      chosen.pop_back();
    }
  };
  rec(rec, 0);
}

OracleSolution make_solution(const ExplicitInstance& inst,
                             const std::vector<std::size_t>& indices,
                             const Score& sc) {
  OracleSolution out;
  out.indices = indices;
  for (std::size_t i : indices) out.actions.push_back(inst.pool[i]);
  out.effectiveness =
      static_cast<double>(sc.covered) / static_cast<double>(inst.xa.size());
  if (sc.covered > 0) out.average_cost = sc.avg();
  return out;
}

void check_budget(const ExplicitInstance& inst, std::uint64_t budget) {
  const std::uint64_t count = subset_count(inst.pool.size(), inst.s);
  if (count > budget) {
    throw Error("exhaustive search over " + std::to_string(count) +
                " subsets exceeds the budget of " + std::to_string(budget));
  }
}

}  // namespace

OracleSolution exhaustive_best(const ExplicitInstance& inst,
                               std::uint64_t budget) {
  inst.validate();
  check_budget(inst, budget);
  const auto table = cost_table(inst);
  std::vector<std::size_t> best_idx;
  Score best_score;
  bool have = false;
  enumerate(table, inst.xa.size(), inst.s,
            [&](const std::vector<std::size_t>& idx, const std::vector<double>& mins) {
              const Score sc = score(mins);
              const bool better =
                  !have || sc.covered > best_score.covered ||
                  (sc.covered == best_score.covered && sc.avg() < best_score.avg());
              if (better) {
                have = true;
                best_score = sc;
                best_idx = idx;
              }
            });
  return make_solution(inst, best_idx, best_score);
}

std::vector<OracleSolution> pareto_front(const ExplicitInstance& inst,
                                         std::uint64_t budget) {
  inst.validate();
  check_budget(inst, budget);
  const auto table = cost_table(inst);
  // covered -> (lowest average, first subset reaching it)
  std::map<std::size_t, std::pair<Score, std::vector<std::size_t>>> best;
  enumerate(table, inst.xa.size(), inst.s,
            [&](const std::vector<std::size_t>& idx, const std::vector<double>& mins) {
              const Score sc = score(mins);
              auto it = best.find(sc.covered);
              if (it == best.end()) {
                best.emplace(sc.covered, std::make_pair(sc, idx));
              } else if (sc.avg() < it->second.first.avg()) {
                it->second = {sc, idx};
              }
            });
  std::vector<OracleSolution> out;
  double cheapest = kInf;
  for (auto it = best.rbegin(); it != best.rend(); ++it) {
    const double avg = it->second.first.avg();
    if (it->first == 0) continue;
    if (avg < cheapest) {
      cheapest = avg;
      out.push_back(make_solution(inst, it->second.second, it->second.first));
    }
  }
  return out;
}

OracleSolution greedy_cover(const ExplicitInstance& inst) {
  inst.validate();
  const auto table = cost_table(inst);
  const std::size_t n = inst.xa.size();
  std::vector<double> mins(n, kInf);
  std::vector<std::size_t> chosen;
  std::vector<bool> used(inst.pool.size(), false);
  for (std::size_t round = 0; round < inst.s; ++round) {
    std::optional<std::size_t> pick;
    std::size_t pick_gain = 0;
    double pick_cost = kInf;
    for (std::size_t a = 0; a < inst.pool.size(); ++a) {
      if (used[a]) continue;
      std::size_t gain = 0;
      double total = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (mins[i] == kInf && table[a][i] != kInf) {
          ++gain;
          total += table[a][i];
        }
      }
      if (gain == 0) continue;
      const double c = total / static_cast<double>(gain);
      const bool better =
          !pick || gain > pick_gain ||
          (gain == pick_gain &&
           (c < pick_cost || (c == pick_cost && inst.pool[a] < inst.pool[*pick])));
      if (better) {
        pick = a;
        pick_gain = gain;
        pick_cost = c;
      }
    }
    if (!pick) break;
    used[*pick] = true;
    chosen.push_back(*pick);
    for (std::size_t i = 0; i < n; ++i) mins[i] = std::min(mins[i], table[*pick][i]);
  }
  std::sort(chosen.begin(), chosen.end());
  return make_solution(inst, chosen, score(mins));
}

ExplicitInstance max_cover_reduction(std::span<const std::size_t> universe,
                                     const std::vector<std::vector<std::size_t>>& family,
                                     std::size_t s) {
  if (family.empty()) throw Error("max-cover reduction needs a nonempty family");
  if (universe.empty()) throw Error("max-cover reduction needs elements");
  const std::size_t n = universe.size();
  std::map<std::size_t, std::size_t> position;
  for (std::size_t j = 0; j < n; ++j) {
    if (!position.emplace(universe[j], j).second) {
      throw Error("duplicate element id in universe");
    }
  }
  std::vector<FeatureSchema> features;
  for (std::size_t j = 0; j < n; ++j) {
    features.push_back(FeatureSchema::numeric("e" + std::to_string(universe[j]),
                                              0.0, kBinsPerRange));
  }
  ExplicitInstance inst;
  inst.schema = Schema(std::move(features));
  inst.s = s;
  for (std::size_t j = 0; j < n; ++j) {
    Instance x;
    x.values.assign(n, 0.0);
    x.values[j] = 1.0;
    x.id = "x" + std::to_string(universe[j]);
    inst.xa.push_back(std::move(x));
  }
  auto model = std::make_shared<LookupClassifier>();
  for (std::size_t i = 0; i < family.size(); ++i) {
    Action a;
    for (std::size_t f = 0; f < n; ++f) {
      a.set_delta(f, static_cast<double>(i + 1));
    }
    for (std::size_t element : family[i]) {
      const auto it = position.find(element);
      if (it == position.end()) {
        throw Error("set " + std::to_string(i) + " names element " +
                    std::to_string(element) + " outside the universe");
      }
      model->set(encode(apply(a, inst.xa[it->second]), inst.schema), kPositive);
    }
    inst.pool.push_back(std::move(a));
  }
  inst.model = std::move(model);
  return inst;
}

ExplicitInstance random_explicit_instance(std::uint64_t seed,
                                          std::size_t max_xa,
                                          std::size_t max_pool,
                                          std::size_t max_s) {
  Rng rng(seed);
  const std::size_t s = 1 + rng.uniform_index(max_s);
  const std::size_t pool = 1 + rng.uniform_index(max_pool);
  if (rng.coin()) {
    const std::size_t n = 2 + rng.uniform_index(max_xa - 1);
    std::vector<std::size_t> universe(n);
    for (std::size_t j = 0; j < n; ++j) universe[j] = j;
    std::vector<std::vector<std::size_t>> family(pool);
    for (auto& set : family) {
      for (std::size_t j = 0; j < n; ++j) {
        if (rng.uniform01() < 0.3) set.push_back(j);
      }
    }
    return max_cover_reduction(universe, family, s);
  }
  // Two numeric features on a unit-bin grid; positive iff w . x > b.
  ExplicitInstance inst;
  inst.schema = Schema({FeatureSchema::numeric("x", 0.0, kBinsPerRange),
                        FeatureSchema::numeric("y", 0.0, kBinsPerRange)});
  inst.s = s;
  const double w1 = static_cast<double>(rng.uniform_int(1, 3));
  const double w2 = static_cast<double>(rng.uniform_int(1, 3));
  const double b = static_cast<double>(rng.uniform_int(8, 14));
  inst.model = std::make_shared<LogisticModel>(std::vector<double>{w1, w2}, -b);
  const std::size_t n = 1 + rng.uniform_index(max_xa);
  while (inst.xa.size() < n) {
    Instance x;
    x.values = {static_cast<double>(rng.uniform_int(0, 5)),
                static_cast<double>(rng.uniform_int(0, 5))};
    if (w1 * x.values[0] + w2 * x.values[1] - b > 0.0) continue;
    x.id = "p" + std::to_string(inst.xa.size());
    inst.xa.push_back(std::move(x));
  }
  while (inst.pool.size() < pool) {
    Action a;
    if (rng.coin()) a.set_delta(0, static_cast<double>(rng.uniform_int(-2, 6)));
    if (rng.coin()) a.set_delta(1, static_cast<double>(rng.uniform_int(-2, 6)));
    if (a.empty()) continue;
    inst.pool.push_back(std::move(a));
  }
  inst.pool = deduplicate(std::move(inst.pool));
  return inst;
}

bool OracleReport::all_ok() const {
  for (const auto& c : cases) {
    if (!c.glance_ok || !c.greedy_ok) return false;
  }
  return true;
}

nlohmann::json OracleReport::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : cases) {
    arr.push_back({{"seed", c.seed},
                   {"xa", c.xa},
                   {"pool", c.pool},
                   {"s", c.s},
                   {"optimum", c.optimum},
                   {"greedy", c.greedy},
                   {"glance", c.glance},
                   {"glance_ok", c.glance_ok},
                   {"greedy_ok", c.greedy_ok}});
  }
  return {{"cases", arr}, {"all_ok", all_ok()}};
}

OracleReport run_oracle_suite(std::size_t count, std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  const double bound = 1.0 - 1.0 / std::exp(1.0);
  OracleReport report;
  for (std::size_t t = 0; t < count; ++t) {
    OracleCase c;
    c.seed = derive_seed(seed, t);
    const ExplicitInstance inst = random_explicit_instance(c.seed);
    c.xa = inst.xa.size();
    c.pool = inst.pool.size();
    c.s = inst.s;
    const OracleSolution opt = exhaustive_best(inst);
    const OracleSolution greedy = greedy_cover(inst);
    c.optimum = opt.effectiveness;
    c.greedy = greedy.effectiveness;

    GlanceConfig cfg;
    cfg.s = inst.s;
    cfg.k = std::max<std::size_t>(inst.s, std::min<std::size_t>(inst.xa.size(), 5));
    cfg.m = inst.pool.size();
    cfg.seed = c.seed;
    const FixedPoolGenerator gen(inst.pool);
    const GceSolution sol = glance(inst.xa, *inst.model, inst.schema, gen, cfg);
    c.glance = evaluate_coverage(sol.actions, inst.xa, *inst.model, inst.schema)
                   .effectiveness;
    c.glance_ok = c.glance <= c.optimum;
    c.greedy_ok = c.greedy >= bound * c.optimum;
    report.cases.push_back(c);
  }
  report.seconds = std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return report;
}

}  // namespace gce

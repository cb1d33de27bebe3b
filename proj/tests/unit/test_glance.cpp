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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "gce/glance.hpp"
#include "gce/metrics.hpp"
#include "gce/oracles.hpp"
#include "gce/rng.hpp"
#include "support.hpp"

using namespace gce;

namespace {

Action delta(std::size_t f, double d) {
  Action a;
  a.set_delta(f, d);
  return a;
}

Dataset grid_dataset(const Classifier& model) {
  Dataset d;
  d.schema = test::numeric_schema(2);
  d.rows = test::grid_points(2, 0.0, 10.0, 0.5);
  for (const auto& r : d.rows) d.labels.push_back(predict(model, r, d.schema));
  return d;
}

GlanceConfig small_config(std::size_t s, std::size_t k) {
  GlanceConfig c;
  c.s = s;
  c.k = k;
  c.m = 5;
  return c;
}

}  // namespace

TEST_CASE("one action flipping everyone is the whole solution") {
  const Schema s = test::numeric_schema(2);
  const auto model = test::linear({1.0, 0.0}, -5.0);
  std::vector<Instance> xa;
  for (double v = 0.0; v <= 4.0; v += 0.5) xa.push_back(test::point({v, v}));
  const FixedPoolGenerator pool({delta(0, 1.0), delta(0, 10.0), delta(1, 3.0)});
  const auto sol = glance(xa, model, s, pool, small_config(1, 2));
  REQUIRE(sol.actions.size() == 1);
  CHECK(sol.actions[0] == delta(0, 10.0));
  CHECK(evaluate_coverage(sol.actions, xa, model, s).effectiveness == 1.0);
}

TEST_CASE("identical seeds give identical solutions") {
  const auto model = test::linear({1.0, 1.0}, -12.0);
  const Dataset train = grid_dataset(model);
  const auto xa = affected_set(model, train);
  auto cfg = small_config(3, 20);
  for (auto kind : {GeneratorKind::kRandomSampling, GeneratorKind::kNearestNeighbors,
                    GeneratorKind::kNearestNeighborsScaled}) {
    cfg.generator.kind = kind;
    const auto a = glance(xa, model, train, cfg);
    const auto b = glance(xa, model, train, cfg);
    CHECK(a.actions == b.actions);
    CHECK(solution_to_json(a, train.schema, false) ==
          solution_to_json(b, train.schema, false));
    cfg.exec = Execution::kSerial;
    const auto c = glance(xa, model, train, cfg);
    CHECK(c.actions == a.actions);
    cfg.exec = Execution::kParallel;
  }
}

TEST_CASE("select_final: the 0.98 / 1.0 trade-off") {
  const std::vector<CandidateScore> scores{{0.98, 1.0}, {1.0, 2.3}};
  const std::vector<Action> actions{delta(0, 1.0), delta(0, 2.3)};
  CHECK(choose(scores, actions, SelectionStrategy::max_effectiveness()) == 1u);
  CHECK(choose(scores, actions, SelectionStrategy::min_cost_above_eff(0.95)) == 0u);
  CHECK(choose(scores, actions, SelectionStrategy::min_cost()) == 0u);
  CHECK(choose(scores, actions, SelectionStrategy::max_eff_below_cost(1.5)) == 0u);
  // Nothing qualifies: fall back to maximum effectiveness.
  CHECK(choose(scores, actions, SelectionStrategy::min_cost_above_eff(0.999)) == 1u);
  CHECK(!choose({}, {}, SelectionStrategy::max_effectiveness()).has_value());
}

TEST_CASE("select_final scores on cluster members; empty pool gives nothing") {
  const Schema s = test::numeric_schema(1);
  const auto model = test::linear({1.0}, -5.0);
  ClusterState c;
  for (double v : {1.0, 2.0, 3.0, 4.0}) c.members.push_back(test::point({v}));
  c.centroid = centroid(c.members, s);
  CHECK(!select_final(c, SelectionStrategy::max_effectiveness(), model, s).has_value());
  c.candidate_actions = {delta(0, 2.5), delta(0, 4.5), delta(0, 1.5)};
  const auto pick = select_final(c, SelectionStrategy::max_effectiveness(), model, s);
  REQUIRE(pick.has_value());
  CHECK(pick->action == delta(0, 4.5));
  CHECK(pick->score.effectiveness == 1.0);
  CHECK(pick->score.cost == doctest::Approx(4.5));
  const auto cheap = select_final(c, SelectionStrategy::min_cost(), model, s);
  CHECK(cheap->action == delta(0, 1.5));
  CHECK(cheap->score.effectiveness == doctest::Approx(0.25));
}

TEST_CASE("selection ties go to lower cost, then canonical order") {
  const std::vector<CandidateScore> scores{{1.0, 2.0}, {1.0, 1.0}, {1.0, 1.0}};
  const std::vector<Action> actions{delta(0, 2.0), delta(1, 1.0), delta(0, 1.0)};
  CHECK(choose(scores, actions, SelectionStrategy::max_effectiveness()) == 2u);
}

TEST_CASE("strategy parsing round-trips and validates") {
  for (const std::string text : {"max_effectiveness", "min_cost", "min_cost_above_eff:0.9",
                                 "max_eff_below_cost:2.5"}) {
    CHECK(SelectionStrategy::parse(text).to_string() == text);
  }
  CHECK_THROWS_AS(SelectionStrategy::parse("min_cost_above_eff:1.5"), ConfigError);
  CHECK_THROWS_AS(SelectionStrategy::parse("cheapest"), ConfigError);
}

TEST_CASE("merging runs k' - s times and actions come from the pool") {
  const auto model = test::linear({1.0, 1.0}, -12.0);
  const Dataset train = grid_dataset(model);
  const auto xa = affected_set(model, train);
  for (std::size_t s : {1, 2, 4, 7}) {
    auto cfg = small_config(s, 15);
    const auto sol = glance(xa, model, train, cfg);
    CHECK(sol.initial_clusters <= 15);
    CHECK(sol.merges.size() == sol.initial_clusters - std::min(s, sol.initial_clusters));
    CHECK(sol.actions.size() <= s);
    std::set<std::string> pool;
    for (const auto& a : sol.candidate_pool) pool.insert(canonical_key(a));
    for (const auto& a : sol.actions) CHECK(pool.count(canonical_key(a)) == 1);
    CHECK(sol.final_assignment.size() == xa.size());
  }
}

TEST_CASE("property: GLANCE on an explicit pool never beats the exhaustive optimum") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const ExplicitInstance inst = random_explicit_instance(seed);
    const auto best = exhaustive_best(inst);
    const FixedPoolGenerator gen(inst.pool);
    GlanceConfig cfg;
    cfg.s = inst.s;
    cfg.k = std::max(inst.s, std::min<std::size_t>(inst.xa.size(), 5));
    const auto sol = glance(inst.xa, *inst.model, inst.schema, gen, cfg);
    const auto cov = evaluate_coverage(sol.actions, inst.xa, *inst.model, inst.schema);
    CHECK(cov.effectiveness <= best.effectiveness + 1e-12);
    CHECK(sol.actions.size() <= inst.s);
  }
}

TEST_CASE("effectiveness against s is reported") {
  const auto model = test::linear({1.0, 0.7}, -11.0);
  const Dataset train = grid_dataset(model);
  const auto xa = affected_set(model, train);
  for (std::size_t s = 1; s <= 6; ++s) {
    const auto sol = glance(xa, model, train, small_config(s, 30));
    const auto cov = evaluate_coverage(sol.actions, xa, model, train.schema);
    MESSAGE("s=" << s << " eff=" << cov.effectiveness << " cost="
                 << cov.average_cost.value_or(-1.0));
  }
}

TEST_CASE("configuration and input errors") {
  const auto model = test::linear({1.0, 0.0}, -5.0);
  const Dataset train = grid_dataset(model);
  const auto xa = affected_set(model, train);
  CHECK_THROWS_AS(glance(xa, model, train, small_config(5, 3)), ConfigError);
  CHECK_THROWS_AS(glance(std::vector<Instance>{}, model, train, small_config(1, 3)), Error);
  const std::vector<Instance> positive{test::point({9.0, 0.0})};
  CHECK_THROWS_AS(glance(positive, model, train, small_config(1, 3)), DataError);
}

TEST_CASE("clusters without candidates are reported, not fatal") {
  const Schema s = test::numeric_schema(1);
  const auto model = test::linear({1.0}, -5.0);
  std::vector<Instance> xa{test::point({1.0}), test::point({2.0}), test::point({4.0})};
  const FixedPoolGenerator empty({});
  const auto sol = glance(xa, model, s, empty, small_config(2, 3));
  CHECK(sol.actions.empty());
  CHECK(!sol.warnings.empty());
}

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

#include <algorithm>
#include <numeric>
#include <set>

#include "gce/generators.hpp"
#include "gce/kernels.hpp"
#include "gce/rng.hpp"
#include "support.hpp"

using namespace gce;

namespace {

// Rows on the integer grid of [0, 10]^n with every label filled in.
Dataset grid_dataset(std::size_t n, const Classifier& model) {
  Dataset d;
  d.schema = test::numeric_schema(n);
  d.rows = test::grid_points(n, 0.0, 10.0, 1.0);
  for (const auto& r : d.rows) d.labels.push_back(predict(model, r, d.schema));
  return d;
}

Dataset line_dataset(std::vector<double> xs, const Classifier& model) {
  Dataset d;
  d.schema = test::numeric_schema(1);
  for (double x : xs) {
    d.rows.push_back(test::point({x}));
    d.labels.push_back(predict(model, d.rows.back(), d.schema));
  }
  return d;
}

GeneratorConfig config(std::size_t m) {
  GeneratorConfig c;
  c.m = m;
  return c;
}

bool flips(const Classifier& model, const Action& a, const Instance& x,
           const Schema& s) {
  return predict(model, apply(a, x), s) == kPositive;
}

}  // namespace

TEST_CASE("importance: ignored features score zero") {
  const auto model = test::linear({1.0, 0.0}, -5.0);
  const Dataset d = grid_dataset(2, model);
  const auto imp = permutation_importance(model, d, 13);
  CHECK(imp.scores[1] == 0.0);
  CHECK(imp.scores[0] > 0.0);
  CHECK(imp.ranking == std::vector<std::size_t>{0, 1});
}

TEST_CASE("importance: score equals the disagreement of a re-predicted copy") {
  const auto model = test::linear({0.0, 1.0}, -4.5);
  const Dataset d = grid_dataset(2, model);
  const std::uint64_t seed = 77;
  const auto imp = permutation_importance(model, d, seed);

  std::vector<double> column;
  for (const auto& r : d.rows) column.push_back(r.values[1]);
  Rng rng(derive_seed(seed, 1));
  rng.shuffle(column);
  std::size_t flips_seen = 0;
  for (std::size_t i = 0; i < d.rows.size(); ++i) {
    Instance copy = d.rows[i];
    copy.values[1] = column[i];
    flips_seen += predict(model, copy, d.schema) != predict(model, d.rows[i], d.schema);
  }
  CHECK(imp.scores[1] ==
        doctest::Approx(static_cast<double>(flips_seen) / d.rows.size()));
}

TEST_CASE("importance: a duplicate column the model ignores scores zero") {
  const auto model = test::linear({1.0, 0.0}, -5.0);
  Dataset d;
  d.schema = test::numeric_schema(2);
  for (int i = 0; i <= 10; ++i) {
    d.rows.push_back(test::point({double(i), double(i)}));
    d.labels.push_back(predict(model, d.rows.back(), d.schema));
  }
  const auto imp = permutation_importance(model, d, 5);
  CHECK(imp.scores[1] == 0.0);
  CHECK(imp.scores[0] > 0.0);
}

TEST_CASE("random sampling crosses x0 = 5 from x0 = 3") {
  const auto model = test::linear({1.0, 0.0}, -5.0);
  const Dataset d = grid_dataset(2, model);
  auto cfg = config(10);
  cfg.k_f = 1;
  const RandomSamplingGenerator gen(model, d, cfg);
  REQUIRE(gen.features() == std::vector<std::size_t>{0});
  const Instance x = test::point({3.0, 6.0});
  const auto out = gen.generate(x, 1);
  REQUIRE(!out.actions.empty());
  for (const auto& a : out.actions) {
    const auto change = a.change_for(0);
    REQUIRE(change.has_value());
    const auto* delta = std::get_if<NumericDelta>(&*change);
    REQUIRE(delta != nullptr);
    CHECK(delta->delta > 2.0);
    CHECK(flips(model, a, x, d.schema));
    CHECK(!a.change_for(1).has_value());
  }
  for (std::size_t i = 1; i < out.actions.size(); ++i) {
    CHECK(cost(out.actions[i - 1], x, d.schema) <= cost(out.actions[i], x, d.schema));
  }
}

TEST_CASE("random sampling with m = 1 keeps the cheapest proposal") {
  const auto model = test::linear({1.0, 1.0}, -12.0);
  const Dataset d = grid_dataset(2, model);
  const Instance x = test::point({4.0, 3.0});
  // Same seed and the same 40 proposals: m = 40 with one proposal each
  // exposes every distinct flip, m = 1 with forty proposals keeps one.
  auto wide = config(40);
  wide.proposals_per_candidate = 1;
  auto narrow = config(1);
  narrow.proposals_per_candidate = 40;
  const auto all = RandomSamplingGenerator(model, d, wide).generate(x, 9).actions;
  const auto one = RandomSamplingGenerator(model, d, narrow).generate(x, 9).actions;
  REQUIRE(!all.empty());
  REQUIRE(one.size() == 1);
  CHECK(one[0] == all[0]);
  for (const auto& a : all) CHECK(cost(one[0], x, d.schema) <= cost(a, x, d.schema));
}

TEST_CASE("random sampling returns nothing for a positive centroid") {
  const auto model = test::linear({1.0, 0.0}, -5.0);
  const Dataset d = grid_dataset(2, model);
  const auto out = RandomSamplingGenerator(model, d, config(5)).generate(
      test::point({8.0, 1.0}), 1);
  CHECK(out.actions.empty());
  CHECK(out.warning.has_value());
}

TEST_CASE("random sampling draws labels from frequent positive rows") {
  // Positive iff c is "B" or "C"; B is more common among positives.
  const Schema s({FeatureSchema::numeric("n", 0.0, 10.0),
                  FeatureSchema::categorical("c", {"A", "B", "C"})});
  LookupClassifier model;
  Dataset d;
  d.schema = s;
  for (int n = 0; n <= 10; ++n) {
    for (std::size_t c = 0; c < 3; ++c) {
      for (int rep = 0; rep < (c == 1 ? 2 : 1); ++rep) {
        d.rows.push_back(test::point({double(n), double(c)}));
      }
      model.set(encode(test::point({double(n), double(c)}), s),
                c == 0 ? kNegative : kPositive);
    }
  }
  for (const auto& r : d.rows) d.labels.push_back(predict(model, r, s));
  auto cfg = config(5);
  cfg.k_f = 2;
  cfg.k_c = 1;
  const RandomSamplingGenerator gen(model, d, cfg);
  CHECK(gen.replacement_labels()[1] == std::vector<std::size_t>{1});
  const auto out = gen.generate(test::point({4.0, 0.0}), 3);
  REQUIRE(!out.actions.empty());
  Action to_b;
  to_b.set_category(1, 1);
  CHECK(out.actions[0] == to_b);
}

TEST_CASE("nearest neighbor at L1 distance 2 gives cost 2") {
  const auto model = test::linear({1.0}, -5.0);
  const Dataset d = line_dataset({1.0, 7.0, 9.5, 2.0}, model);
  const auto out = generate_nearest_neighbors(test::point({5.0}), model, d, config(1));
  REQUIRE(out.size() == 1);
  CHECK(cost(out[0], test::point({5.0}), d.schema) == doctest::Approx(2.0));
}

TEST_CASE("a centroid on a positive row yields the empty action") {
  const auto model = test::linear({1.0}, -5.0);
  const Dataset d = line_dataset({1.0, 7.0, 9.0}, model);
  const auto out = generate_nearest_neighbors(test::point({7.0}), model, d, config(1));
  REQUIRE(out.size() == 1);
  CHECK(out[0].empty());
  CHECK(cost(out[0], test::point({7.0}), d.schema) == 0.0);
}

TEST_CASE("no positive rows is an error") {
  const auto model = test::linear({0.0}, -1.0);
  const Dataset d = line_dataset({1.0, 2.0}, model);
  try {
    generate_nearest_neighbors(test::point({1.0}), model, d, config(1));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()) == "no unaffected population");
  }
}

TEST_CASE("five positives, m = 3: the three closest by brute-force sort") {
  const auto model = test::linear({1.0, 0.0}, -5.0);
  Dataset d;
  d.schema = test::numeric_schema(2);
  d.rows = {test::point({1.0, 1.0}), test::point({6.0, 0.0}), test::point({7.0, 3.0}),
            test::point({9.0, 1.0}), test::point({8.0, 8.0}), test::point({6.0, 5.0})};
  for (const auto& r : d.rows) d.labels.push_back(predict(model, r, d.schema));
  const Instance c = test::point({2.0, 2.0});
  const auto out = generate_nearest_neighbors(c, model, d, config(3));

  std::vector<std::pair<double, std::size_t>> order;
  for (std::size_t i = 1; i < d.rows.size(); ++i) {
    double dist = 0.0;
    for (std::size_t f = 0; f < 2; ++f) dist += std::abs(d.rows[i].values[f] - c.values[f]);
    order.emplace_back(dist, i);
  }
  std::sort(order.begin(), order.end());
  REQUIRE(out.size() == 3);
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(apply(out[k], c) == d.rows[order[k].second]);
    CHECK(cost(out[k], c, d.schema) == doctest::Approx(order[k].first));
  }
}

TEST_CASE("scaled neighbors stop within one step of the boundary") {
  // Boundary at x0 = 5; the neighbor sits four bins past it.
  const auto model = test::linear({1.0, 0.0}, -5.0);
  Dataset d;
  d.schema = test::numeric_schema(2);
  d.rows = {test::point({9.0, 3.0}), test::point({0.0, 0.0})};
  d.labels = {kPositive, kNegative};
  const Instance c = test::point({2.0, 3.0});
  auto cfg = config(1);
  cfg.line_samples = 20;
  const auto out = generate_nearest_neighbors_scaled(c, model, d, cfg);
  REQUIRE(out.size() == 1);
  const double got = cost(out[0], c, d.schema);

  double dense = 7.0;
  for (int i = 1; i <= 1000; ++i) {
    const double t = i / 1000.0;
    if (predict(model, test::point({2.0 + 7.0 * t, 3.0}), d.schema) == kPositive) {
      dense = 7.0 * t;
      break;
    }
  }
  CHECK(got < 7.0);
  CHECK(got >= dense - 1e-9);
  CHECK(got - dense <= 7.0 / 20.0 + 1e-9);
  CHECK(flips(model, out[0], c, d.schema));
}

TEST_CASE("scaled neighbors fall back to the full action") {
  const Schema s = test::numeric_schema(2);
  LookupClassifier model;
  model.set(encode(test::point({9.0, 3.0}), s), kPositive);
  Dataset d;
  d.schema = s;
  d.rows = {test::point({9.0, 3.0}), test::point({0.0, 0.0})};
  d.labels = {kPositive, kNegative};
  const Instance c = test::point({2.0, 1.0});
  const auto out = generate_nearest_neighbors_scaled(c, model, d, config(1));
  REQUIRE(out.size() == 1);
  CHECK(apply(out[0], c) == d.rows[0]);
}

TEST_CASE("scaled equals plain neighbors on a purely categorical schema") {
  const Schema s({FeatureSchema::categorical("a", {"p", "q", "r"}),
                  FeatureSchema::categorical("b", {"u", "v"})});
  LookupClassifier model;
  Dataset d;
  d.schema = s;
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = 0; b < 2; ++b) {
      const Instance x = test::point({double(a), double(b)});
      const int label = (a + b) % 2 ? kPositive : kNegative;
      model.set(encode(x, s), label);
      d.rows.push_back(x);
      d.labels.push_back(label);
    }
  }
  for (const auto& x : d.rows) {
    CHECK(generate_nearest_neighbors_scaled(x, model, d, config(3)) ==
          generate_nearest_neighbors(x, model, d, config(3)));
  }
}

TEST_CASE("property: generated actions flip, are distinct and deterministic") {
  Rng rng(31);
  for (int t = 0; t < 40; ++t) {
    const auto model = test::linear({1.0 + rng.uniform01(), 1.0 + rng.uniform01()},
                                    -(8.0 + rng.uniform01() * 6.0));
    const Dataset d = grid_dataset(2, model);
    const Instance c =
        test::point({rng.uniform01() * 4.0, rng.uniform01() * 4.0});
    auto cfg = config(1 + rng.uniform_index(8));
    cfg.k_f = 2;
    for (auto kind : {GeneratorKind::kRandomSampling, GeneratorKind::kNearestNeighbors,
                      GeneratorKind::kNearestNeighborsScaled}) {
      cfg.kind = kind;
      const auto gen = make_generator(cfg, model, d);
      const auto a = gen->generate(c, 1000 + t).actions;
      const auto b = gen->generate(c, 1000 + t).actions;
      CHECK(a == b);
      CHECK(a.size() <= cfg.m);
      std::set<std::string> keys;
      for (const auto& act : a) {
        CHECK(flips(model, act, c, d.schema));
        CHECK(keys.insert(canonical_key(act)).second);
      }
    }
  }
}

TEST_CASE("property: the scaled neighbor action never costs more") {
  Rng rng(32);
  for (int t = 0; t < 40; ++t) {
    const auto model = test::linear({1.0 + rng.uniform01(), rng.uniform01() - 0.2},
                                    -(4.0 + rng.uniform01() * 4.0));
    const Dataset d = grid_dataset(2, model);
    const NearestNeighborsGenerator gen(model, d, config(5), true);
    const Instance c = test::point({rng.uniform01() * 2.0, rng.uniform01() * 2.0});
    for (std::size_t idx : gen.neighbor_order(c)) {
      const auto& nb = gen.positives()[idx];
      CHECK(cost(gen.scaled_action_to(c, nb), c, d.schema) <=
            cost(gen.action_to(c, nb), c, d.schema) + 1e-12);
    }
  }
}

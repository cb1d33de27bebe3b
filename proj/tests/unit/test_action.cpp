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

#include "gce/action.hpp"
#include "gce/rng.hpp"
#include "support.hpp"

using namespace gce;

namespace {

// education-num (bin width 1.6), hours (bin width 10), country {CA, MX, US}.
Schema census_schema() {
  return Schema({FeatureSchema::numeric("education-num", 1.0, 17.0),
                 FeatureSchema::numeric("hours", 0.0, 100.0),
                 FeatureSchema::categorical("country", {"CA", "MX", "US"})});
}

Action random_action(Rng& rng, const Schema& s) {
  Action a;
  for (std::size_t f = 0; f < s.size(); ++f) {
    if (!rng.coin()) continue;
    if (s.feature(f).is_numeric()) {
      a.set_delta(f, static_cast<double>(rng.uniform_int(-20, 20)) * 0.5);
    } else {
      a.set_category(f, rng.uniform_index(s.feature(f).categories.size()));
    }
  }
  return a;
}

Instance random_instance(Rng& rng, const Schema& s) {
  Instance x;
  for (std::size_t f = 0; f < s.size(); ++f) {
    const auto& fs = s.feature(f);
    x.values.push_back(fs.is_numeric()
                           ? fs.observed_min +
                                 rng.uniform01() * (fs.observed_max - fs.observed_min)
                           : static_cast<double>(rng.uniform_index(fs.categories.size())));
  }
  return x;
}

}  // namespace

TEST_CASE("apply: empty action, numeric increment and idempotent set") {
  const Schema s = census_schema();
  const Instance x = test::point({10.0, 40.0, 2.0});
  CHECK(apply(Action{}, x) == x);

  Action edu;
  edu.set_delta(0, 2.0);
  const Instance y = apply(edu, x);
  CHECK(y.values[0] == 12.0);
  CHECK(y.values[1] == 40.0);
  CHECK(x.values[0] == 10.0);

  Action us;
  us.set_category(2, *s.feature(2).category_index("US"));
  CHECK(apply(us, x) == x);
}

TEST_CASE("cost: empty, categorical switch, fractional bins plus no-op") {
  const Schema s = census_schema();
  const Instance x = test::point({10.0, 40.0, 0.0});
  CHECK(cost(Action{}, x, s) == 0.0);

  Action mx;
  mx.set_category(2, 1);
  CHECK(cost(mx, x, s) == 1.0);

  Action mixed;
  mixed.set_delta(1, 1.5 * s.feature(1).bin_width).set_category(2, 0);
  CHECK(cost(mixed, x, s) == doctest::Approx(1.5));
}

TEST_CASE("action vectors and their means") {
  const Schema s({FeatureSchema::numeric("n", 0.0, 100.0),
                  FeatureSchema::categorical("c", {"A", "B", "C"})});
  CHECK(to_action_vector(Action{}, s) == ActionVector{0, 0, 0, 0});
  Action d20;
  d20.set_delta(0, 20.0);
  CHECK(to_action_vector(d20, s)[0] == 2.0);
  Action setb;
  setb.set_category(1, 1);
  CHECK(to_action_vector(setb, s) == ActionVector{0, 0, 1, 0});

  const std::vector<Action> one{d20};
  CHECK(mean_action_vector(one, s) == to_action_vector(d20, s));
  Action d10;
  d10.set_delta(0, 10.0);
  Action d30;
  d30.set_delta(0, 30.0);
  const std::vector<Action> pair{d10, d30};
  CHECK(mean_action_vector(pair, s)[0] == doctest::Approx(2.0));

  const Schema ab({FeatureSchema::categorical("c", {"A", "B"})});
  Action a;
  a.set_category(0, 0);
  Action b;
  b.set_category(0, 1);
  const std::vector<Action> cats{a, b};
  CHECK(mean_action_vector(cats, ab) == ActionVector{0.5, 0.5});
  CHECK_THROWS_AS(mean_action_vector(std::vector<Action>{}, s), Error);
}

TEST_CASE("validation rejects kind mismatches and unknown labels") {
  const Schema s = census_schema();
  Action bad_delta;
  bad_delta.set_delta(2, 1.0);
  CHECK_THROWS_AS(validate_action(bad_delta, s), SchemaError);
  Action bad_set;
  bad_set.set_category(0, 0);
  CHECK_THROWS_AS(validate_action(bad_set, s), SchemaError);
  Action bad_label;
  bad_label.set_category(2, 7);
  CHECK_THROWS_AS(validate_action(bad_label, s), SchemaError);
  Action outside;
  outside.set_delta(9, 1.0);
  CHECK_THROWS_AS(validate_action(outside, s), SchemaError);
}

TEST_CASE("one change per feature; zero deltas vanish") {
  Action a;
  a.set_delta(0, 1.0).set_delta(0, 3.0);
  CHECK(a.size() == 1);
  CHECK(std::get<NumericDelta>(*a.change_for(0)).delta == 3.0);
  a.set_delta(0, 0.0);
  CHECK(a.empty());
}

TEST_CASE("interchange format round-trips") {
  const Schema s = census_schema();
  Action a;
  a.set_delta(0, 2.0).set_category(2, 2);
  const auto j = action_to_json(a, s);
  CHECK(j == nlohmann::json::parse(R"({"education-num": {"delta": 2.0}, "country": {"set": "US"}})"));
  CHECK(action_from_json(j, s) == a);
  CHECK_THROWS_AS(action_from_json(nlohmann::json::parse(R"({"zip": {"delta": 1}})"), s),
                  DataError);
  CHECK(describe(a, s) == "{education-num -> +2, country -> US}");
}

TEST_CASE("deduplication keeps first occurrences by canonical key") {
  Action a;
  a.set_delta(1, 2.0).set_category(2, 0);
  Action b;
  b.set_category(2, 0).set_delta(1, 2.0);
  Action c;
  c.set_delta(1, 2.5);
  const auto out = deduplicate({a, c, b});
  REQUIRE(out.size() == 2);
  CHECK(out[0] == a);
  CHECK(out[1] == c);
  CHECK(canonical_key(a) == canonical_key(b));
}

TEST_CASE("property: cost is nonnegative, zero exactly when nothing changes") {
  const Schema s = census_schema();
  Rng rng(11);
  for (int t = 0; t < 1000; ++t) {
    const Action a = random_action(rng, s);
    const Instance x = random_instance(rng, s);
    const double c = cost(a, x, s);
    CHECK(c >= 0.0);
    CHECK((c == 0.0) == (apply(a, x) == x));
  }
}

TEST_CASE("property: cost is additive over disjoint feature splits") {
  const Schema s = census_schema();
  Rng rng(12);
  for (int t = 0; t < 1000; ++t) {
    const Action a = random_action(rng, s);
    const Instance x = random_instance(rng, s);
    Action left;
    Action right;
    for (const auto& [f, change] : a.changes()) {
      (rng.coin() ? left : right).set(f, change);
    }
    CHECK(cost(left, x, s) + cost(right, x, s) == doctest::Approx(cost(a, x, s)).epsilon(1e-12));
  }
}

TEST_CASE("property: apply is pure and categorical actions are idempotent") {
  const Schema s = census_schema();
  Rng rng(13);
  for (int t = 0; t < 500; ++t) {
    Action a = random_action(rng, s);
    const Instance x = random_instance(rng, s);
    CHECK(apply(a, x) == apply(a, x));
    Action cats;
    for (const auto& [f, change] : a.changes()) {
      if (std::holds_alternative<CategoricalSet>(change)) cats.set(f, change);
    }
    CHECK(apply(cats, apply(cats, x)) == apply(cats, x));
  }
}

TEST_CASE("property: action-vector L1 norm bounds cost, tight without no-ops") {
  const Schema s = census_schema();
  Rng rng(14);
  for (int t = 0; t < 1000; ++t) {
    const Action a = random_action(rng, s);
    const Instance x = random_instance(rng, s);
    double norm = 0.0;
    for (double v : to_action_vector(a, s)) norm += std::abs(v);
    const double c = cost(a, x, s);
    CHECK(norm >= c - 1e-12);
    bool noop = false;
    for (const auto& [f, change] : a.changes()) {
      if (const auto* set = std::get_if<CategoricalSet>(&change)) {
        noop |= set->target == x.category(f);
      }
    }
    if (!noop) CHECK(norm == doctest::Approx(c).epsilon(1e-12));
  }
}

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

#include "gce/clustering.hpp"
#include "gce/rng.hpp"
#include "support.hpp"

using namespace gce;

namespace {

ClusterState cluster_at(Instance c, std::vector<Action> actions, std::size_t id) {
  ClusterState s;
  s.members = {c};
  s.member_indices = {id};
  s.centroid = std::move(c);
  s.candidate_actions = std::move(actions);
  s.id = id;
  return s;
}

Action delta(std::size_t f, double d) {
  Action a;
  a.set_delta(f, d);
  return a;
}

std::vector<Instance> random_points(Rng& rng, std::size_t n, const Schema& s) {
  std::vector<Instance> out;
  for (std::size_t i = 0; i < n; ++i) {
    Instance x;
    for (std::size_t f = 0; f < s.size(); ++f) {
      const auto& fs = s.feature(f);
      x.values.push_back(fs.is_numeric()
                             ? static_cast<double>(rng.uniform_int(0, 20)) * 0.5
                             : static_cast<double>(rng.uniform_index(fs.categories.size())));
    }
    out.push_back(std::move(x));
  }
  return out;
}

const Schema& mixed_schema() {
  static const Schema s({FeatureSchema::numeric("a", 0.0, 10.0),
                         FeatureSchema::numeric("b", 0.0, 10.0),
                         FeatureSchema::categorical("c", {"A", "B", "C"})});
  return s;
}

}  // namespace

TEST_CASE("k = 1 puts every point in one cluster") {
  Rng rng(1);
  const auto pts = random_points(rng, 30, mixed_schema());
  const auto clusters = kmeans(pts, mixed_schema(), 1, 13);
  REQUIRE(clusters.size() == 1);
  CHECK(clusters[0].members.size() == 30);
}

TEST_CASE("two well-separated blobs are recovered exactly") {
  const Schema s = test::numeric_schema(2, 10.0);
  Rng rng(2);
  std::vector<Instance> pts;
  for (int i = 0; i < 40; ++i) {
    const double base = i < 20 ? 0.0 : 90.0;
    pts.push_back(test::point({base + rng.uniform01() * 3, base + rng.uniform01() * 3}));
  }
  for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
    const auto res = kmeans_detailed(pts, s, 2, seed);
    REQUIRE(res.clusters.size() == 2);
    for (int i = 0; i < 40; ++i) {
      CHECK((res.assignment[i] == res.assignment[0]) == (i < 20));
    }
  }
}

TEST_CASE("k larger than the number of points gives singletons") {
  const Schema s = test::numeric_schema(1);
  std::vector<Instance> pts;
  for (int i = 0; i < 5; ++i) pts.push_back(test::point({double(i * 2)}));
  const auto clusters = kmeans(pts, s, 7, 13);
  REQUIRE(clusters.size() == 5);
  for (const auto& c : clusters) CHECK(c.members.size() == 1);
}

TEST_CASE("property: k-means partitions the input and never raises the objective") {
  Rng rng(3);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 5 + rng.uniform_index(80);
    const auto pts = random_points(rng, n, mixed_schema());
    const std::size_t k = 1 + rng.uniform_index(12);
    const auto res = kmeans_detailed(pts, mixed_schema(), k, 100 + t);
    std::set<std::size_t> seen;
    std::size_t total = 0;
    for (std::size_t c = 0; c < res.clusters.size(); ++c) {
      CHECK(!res.clusters[c].members.empty());
      CHECK(res.clusters[c].id == c);
      for (std::size_t idx : res.clusters[c].member_indices) {
        CHECK(seen.insert(idx).second);
        CHECK(res.assignment[idx] == c);
      }
      total += res.clusters[c].members.size();
    }
    CHECK(total == n);
    CHECK(res.clusters.size() <= k);
    for (std::size_t i = 1; i < res.objective_trace.size(); ++i) {
      CHECK(res.objective_trace[i] <= res.objective_trace[i - 1] + 1e-9);
    }
    CHECK(res.iterations <= kMaxLloydIterations);
  }
}

TEST_CASE("k-means is deterministic and the parallel path matches serial") {
  Rng rng(4);
  const auto pts = random_points(rng, 200, mixed_schema());
  const auto a = kmeans_detailed(pts, mixed_schema(), 8, 21, kMaxLloydIterations,
                                 Execution::kSerial);
  const auto b = kmeans_detailed(pts, mixed_schema(), 8, 21, kMaxLloydIterations,
                                 Execution::kParallel);
  CHECK(a.assignment == b.assignment);
  CHECK(a.objective_trace == b.objective_trace);
}

TEST_CASE("centroid examples") {
  const Schema s({FeatureSchema::numeric("n", 0.0, 10.0),
                  FeatureSchema::categorical("c", {"A", "B"})});
  const std::vector<Instance> one{test::point({3.0, 1.0})};
  CHECK(centroid(one, s) == one[0]);
  const std::vector<Instance> two{test::point({0.0, 0.0}), test::point({2.0, 1.0})};
  CHECK(centroid(two, s).values[0] == 1.0);
  CHECK(centroid(two, s).category(1) == 0);  // tie goes to the first label
  const std::vector<Instance> three{test::point({0.0, 0.0}), test::point({0.0, 0.0}),
                                    test::point({0.0, 1.0})};
  CHECK(centroid(three, s).category(1) == 0);
}

TEST_CASE("d1 examples") {
  const Schema cats({FeatureSchema::categorical("c", {"A", "B", "C"})});
  const auto a = cluster_at(test::point({0.0}), {}, 0);
  const auto b = cluster_at(test::point({2.0}), {}, 1);
  CHECK(d1(a, a, cats) == 0.0);
  CHECK(d1(a, b, cats) == 2.0);
  const Schema nums = test::numeric_schema(1);
  CHECK(d1(cluster_at(test::point({2.0}), {}, 0), cluster_at(test::point({5.0}), {}, 1),
           nums) == 3.0);
}

TEST_CASE("d2 examples and the empty-set sentinel") {
  const Schema s = test::numeric_schema(1, 10.0);
  const auto a = cluster_at(test::point({0.0}), {delta(0, 10.0)}, 0);
  const auto b = cluster_at(test::point({0.0}), {delta(0, 30.0)}, 1);
  const auto e = cluster_at(test::point({0.0}), {}, 2);
  CHECK(d2(a, a, s, 99.0) == 0.0);
  CHECK(d2(a, b, s, 99.0) == doctest::Approx(2.0));
  CHECK(d2(a, e, s, 99.0) == 99.0);
  CHECK(d2(e, e, s, 99.0) == 99.0);

  // Sentinel: twice the largest d1 + d2 over nonempty pairs.
  const auto far = cluster_at(test::point({50.0}), {delta(0, 10.0)}, 3);
  const std::vector<ClusterState> cs{a, b, e, far};
  double worst = 0.0;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    for (std::size_t j = i + 1; j < cs.size(); ++j) {
      if (cs[i].candidate_actions.empty() || cs[j].candidate_actions.empty()) continue;
      worst = std::max(worst, d1(cs[i], cs[j], s) + d2(cs[i], cs[j], s, 0.0));
    }
  }
  CHECK(worst == doctest::Approx(7.0));
  CHECK(empty_candidate_penalty(cs, s) == doctest::Approx(2.0 * worst));
  const std::vector<ClusterState> only_empty{e, cluster_at(test::point({1.0}), {}, 4)};
  CHECK(empty_candidate_penalty(only_empty, s) == 1.0);
}

TEST_CASE("property: d1 and d2 are symmetric and nonnegative") {
  Rng rng(5);
  const Schema& s = mixed_schema();
  for (int t = 0; t < 500; ++t) {
    const auto pts = random_points(rng, 2, s);
    std::vector<Action> p1{delta(0, rng.uniform_int(-5, 5)), delta(1, 2.0)};
    std::vector<Action> p2{delta(1, rng.uniform_int(-5, 5))};
    const auto a = cluster_at(pts[0], p1, 0);
    const auto b = cluster_at(pts[1], p2, 1);
    CHECK(d1(a, b, s) == d1(b, a, s));
    CHECK(d2(a, b, s, 1.0) == d2(b, a, s, 1.0));
    CHECK(d1(a, b, s) >= 0.0);
    CHECK(d2(a, b, s, 1.0) >= 0.0);
  }
}

TEST_CASE("merge: midpoint centroid, deduplicated actions, lower id") {
  const Schema s = test::numeric_schema(2);
  const auto x = cluster_at(test::point({0.0, 4.0}), {delta(0, 1.0)}, 5);
  const auto y = cluster_at(test::point({2.0, 8.0}), {delta(0, 1.0)}, 2);
  const auto m = merge(x, y, s);
  CHECK(m.members.size() == 2);
  CHECK(m.centroid.values == std::vector<double>{1.0, 6.0});
  CHECK(m.candidate_actions.size() == 1);
  CHECK(m.id == 2);
  CHECK_THROWS_AS(merge(x, x, s), Error);
}

TEST_CASE("property: merge conserves members and keeps the union of actions") {
  Rng rng(6);
  const Schema& s = mixed_schema();
  for (int t = 0; t < 300; ++t) {
    auto pa = random_points(rng, 1 + rng.uniform_index(5), s);
    auto pb = random_points(rng, 1 + rng.uniform_index(5), s);
    ClusterState a;
    a.members = pa;
    a.centroid = centroid(pa, s);
    a.id = 0;
    ClusterState b;
    b.members = pb;
    b.centroid = centroid(pb, s);
    b.id = 1;
    for (int i = 0; i < 4; ++i) {
      a.candidate_actions.push_back(delta(0, rng.uniform_int(1, 3)));
      b.candidate_actions.push_back(delta(0, rng.uniform_int(1, 3)));
    }
    const auto m = merge(a, b, s);
    CHECK(m.members.size() == pa.size() + pb.size());
    std::set<std::string> want;
    for (const auto& act : a.candidate_actions) want.insert(canonical_key(act));
    for (const auto& act : b.candidate_actions) want.insert(canonical_key(act));
    std::set<std::string> got;
    for (const auto& act : m.candidate_actions) CHECK(got.insert(canonical_key(act)).second);
    CHECK(got == want);
  }
}

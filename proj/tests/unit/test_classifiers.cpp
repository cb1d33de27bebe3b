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

#include <cstring>
#include <fstream>

#include "gce/classifier.hpp"
#include "gce/rng.hpp"
#include "support.hpp"

using namespace gce;

namespace {

Dataset two_point_set() {
  Dataset d;
  d.schema = test::numeric_schema(2);
  d.rows = {test::point({1.0, 1.0}), test::point({8.0, 9.0})};
  d.labels = {kNegative, kPositive};
  return d;
}

Dataset load_german() {
  std::ifstream in(test::config_dir() + "/german.schema.json");
  const auto cfg = SchemaConfig::from_json(nlohmann::json::parse(in));
  return ingest_csv(test::data_dir() + "/german.csv", cfg).dataset;
}

}  // namespace

TEST_CASE("logistic fit separates a two-point set") {
  const LogisticModel m = train_logistic(two_point_set(), {});
  CHECK(m.training_accuracy == 1.0);
}

TEST_CASE("logistic fit is bitwise deterministic") {
  const auto a = train_logistic(two_point_set(), {});
  const auto b = train_logistic(two_point_set(), {});
  REQUIRE(a.weights().size() == b.weights().size());
  CHECK(std::memcmp(a.weights().data(), b.weights().data(),
                    a.weights().size() * sizeof(double)) == 0);
  CHECK(a.bias() == b.bias());
}

TEST_CASE("logistic fit rejects single-class data") {
  Dataset d = two_point_set();
  d.labels = {kPositive, kPositive};
  CHECK_THROWS_AS(train_logistic(d, {}), DataError);
}

TEST_CASE("German Credit 5-fold logistic test accuracy lies in [0.70, 0.80]") {
  const Dataset data = load_german();
  double total = 0.0;
  const auto folds = split_kfold(data, 5, 13);
  for (const auto& f : folds) {
    const auto m = train_logistic(f.train, {});
    total += accuracy(m, f.test);
  }
  const double mean = total / 5.0;
  MESSAGE("mean test accuracy " << mean);
  CHECK(mean >= 0.70);
  CHECK(mean <= 0.80);
}

TEST_CASE("linear decision rule and the zero tie") {
  const LogisticModel m({1.0, 0.0}, -4.0);
  CHECK(m.predict(std::vector<double>{5.0, 7.0}) == kPositive);
  CHECK(m.predict(std::vector<double>{3.0, 7.0}) == kNegative);
  CHECK(m.predict(std::vector<double>{4.0, 0.0}) == kNegative);
}

TEST_CASE("1-NN returns the label of a stored point") {
  EncodedMatrix pts;
  pts.rows = 3;
  pts.cols = 2;
  pts.data = {0, 0, 5, 5, 9, 9};
  const KnnModel m(pts, {kNegative, kPositive, kNegative}, 1);
  CHECK(m.predict(std::vector<double>{5.0, 5.0}) == kPositive);
  CHECK(m.predict(std::vector<double>{0.0, 1.0}) == kNegative);
}

TEST_CASE("k-NN distance ties resolve to the lower stored index") {
  EncodedMatrix pts;
  pts.rows = 2;
  pts.cols = 1;
  pts.data = {0.0, 2.0};
  const KnnModel m(pts, {kPositive, kNegative}, 1);
  CHECK(m.predict(std::vector<double>{1.0}) == kPositive);
  const KnnModel flipped(pts, {kNegative, kPositive}, 1);
  CHECK(flipped.predict(std::vector<double>{1.0}) == kNegative);
}

TEST_CASE("k-NN needs an odd k no larger than the stored set") {
  CHECK_THROWS_AS(train_knn(two_point_set(), 2), ConfigError);
  CHECK_THROWS_AS(train_knn(two_point_set(), 3), ConfigError);
  CHECK_NOTHROW(train_knn(two_point_set(), 1));
}

TEST_CASE("affected set examples") {
  Dataset d;
  d.schema = test::numeric_schema(1);
  d.rows = {test::point({2.0}), test::point({6.0}), test::point({4.0})};
  const LogisticModel all_pos({0.0}, 1.0);
  const LogisticModel all_neg({0.0}, -1.0);
  CHECK(affected_set(all_pos, d).empty());
  CHECK(affected_set(all_neg, d).size() == 3);

  // Threshold at 5: enumerate the rows and keep those predicted negative.
  const LogisticModel threshold({1.0}, -5.0);
  std::vector<Instance> expected;
  for (const auto& r : d.rows) {
    if (r.values[0] - 5.0 <= 0.0) expected.push_back(r);
  }
  CHECK(affected_set(threshold, d) == expected);
}

TEST_CASE("property: affected set and its complement partition the rows") {
  Rng rng(21);
  for (int t = 0; t < 50; ++t) {
    Dataset d;
    d.schema = test::numeric_schema(3);
    for (int i = 0; i < 40; ++i) {
      d.rows.push_back(test::point({rng.uniform01() * 10, rng.uniform01() * 10,
                                    rng.uniform01() * 10}));
    }
    const LogisticModel m({rng.uniform01() - 0.5, rng.uniform01() - 0.5,
                           rng.uniform01() - 0.5},
                          rng.uniform01() - 0.5);
    const auto xa = affected_set(m, d);
    std::size_t neg = 0;
    for (const auto& r : d.rows) neg += predict(m, r, d.schema) == kNegative;
    CHECK(xa.size() == neg);
    for (const auto& x : xa) CHECK(predict(m, x, d.schema) == kNegative);
  }
}

TEST_CASE("property: predict_batch agrees with predict") {
  Rng rng(22);
  Dataset d;
  d.schema = test::numeric_schema(2);
  for (int i = 0; i < 60; ++i) {
    d.rows.push_back(test::point({rng.uniform01() * 10, rng.uniform01() * 10}));
    d.labels.push_back(rng.coin() ? kPositive : kNegative);
  }
  const KnnModel knn = train_knn(d, 5);
  const LogisticModel lr({0.3, -0.2}, 0.1);
  const EncodedMatrix enc = encode_all(d.rows, d.schema);
  for (const Classifier* m : {static_cast<const Classifier*>(&knn),
                              static_cast<const Classifier*>(&lr)}) {
    const auto batch = m->predict_batch(enc);
    for (std::size_t i = 0; i < d.rows.size(); ++i) {
      CHECK(batch[i] == m->predict(enc.row(i)));
    }
  }
}

TEST_CASE("models round-trip through the saved artifact") {
  const Dataset d = two_point_set();
  const LogisticModel lr = train_logistic(d, {});
  const auto lr2 = load_model(save_model(lr, d.schema), d.schema);
  const KnnModel knn = train_knn(d, 1);
  const auto knn2 = load_model(save_model(knn, d.schema), d.schema);
  for (double a = 0; a <= 10; a += 0.5) {
    const std::vector<double> z{a, 10 - a};
    CHECK(lr2->predict(z) == lr.predict(z));
    CHECK(knn2->predict(z) == knn.predict(z));
  }
  const Schema other = test::numeric_schema(2, 2.0);
  CHECK_THROWS_AS(load_model(save_model(lr, d.schema), other), DataError);
}

TEST_CASE("counting classifier forwards and counts") {
  const LogisticModel m({1.0}, -1.0);
  CountingClassifier counter(m);
  EncodedMatrix pts;
  pts.rows = 4;
  pts.cols = 1;
  pts.data = {0, 1, 2, 3};
  const auto out = counter.predict_batch(pts);
  CHECK(out == std::vector<int>{kNegative, kNegative, kPositive, kPositive});
  CHECK(counter.calls() == 4);
  counter.reset();
  CHECK(counter.calls() == 0);
}

TEST_CASE("lookup classifier lists positives explicitly") {
  LookupClassifier m;
  m.set({1.0, 2.0}, kPositive);
  CHECK(m.predict(std::vector<double>{1.0, 2.0}) == kPositive);
  CHECK(m.predict(std::vector<double>{2.0, 1.0}) == kNegative);
}

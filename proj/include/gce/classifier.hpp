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

#ifndef GCE_CLASSIFIER_HPP_
#define GCE_CLASSIFIER_HPP_

// Black-box binary classifier contract and the bundled models.
//
// Everything downstream (generators, clustering, the engine, metrics) talks
// to models only through Classifier::predict on encoded points.

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "gce/tabular.hpp"
#include "json.hpp"

namespace gce {

class Classifier {
 public:
  virtual ~Classifier() = default;

  // kPositive or kNegative. Must be deterministic and safe to call
  // concurrently.
  virtual int predict(std::span<const double> encoded) const = 0;

  // One prediction per matrix row; agrees elementwise with predict().
  virtual void predict_batch(const EncodedMatrix& points,
                             std::span<int> out) const;
  std::vector<int> predict_batch(const EncodedMatrix& points) const;

  virtual std::string descriptor() const = 0;
};

int predict(const Classifier& model, const Instance& x, const Schema& schema);

// Rows predicted negative, in dataset order.
std::vector<Instance> affected_set(const Classifier& model,
                                   const Dataset& data);

double accuracy(const Classifier& model, const Dataset& data);

struct LogisticHyper {
  double learning_rate = 0.5;
  int iterations = 1000;
  // Multiplies 0.5 * |w|^2 (on internally standardized inputs) against the
  // mean log-loss.
  double l2 = 1e-3;
  std::uint64_t seed = 13;
};

// sign(w . z + b) with a zero decision value mapped to the negative class.
class LogisticModel final : public Classifier {
 public:
  LogisticModel(std::vector<double> weights, double bias);

  int predict(std::span<const double> encoded) const override;
  std::string descriptor() const override;

  double decision_value(std::span<const double> encoded) const;
  const std::vector<double>& weights() const { return weights_; }
  double bias() const { return bias_; }

  LogisticHyper hyper;
  double training_accuracy = 0.0;

 private:
  std::vector<double> weights_;
  double bias_;
};

// Full-batch gradient descent on the mean logistic loss. Throws DataError
// when the training data holds a single class.
LogisticModel train_logistic(const Dataset& train, const LogisticHyper& hyper);

// Majority vote over the k nearest stored points in encoded L1 distance;
// distance ties resolve to the lower stored index.
class KnnModel final : public Classifier {
 public:
  KnnModel(EncodedMatrix points, std::vector<int> labels, std::size_t k);

  int predict(std::span<const double> encoded) const override;
  std::string descriptor() const override;

  std::size_t k() const { return k_; }
  const EncodedMatrix& points() const { return points_; }
  const std::vector<int>& labels() const { return labels_; }

 private:
  EncodedMatrix points_;
  std::vector<int> labels_;
  std::size_t k_;
};

// Throws ConfigError when k is even or zero, DataError on unlabeled data.
KnnModel train_knn(const Dataset& train, std::size_t k);

// Forwards to another classifier and counts predicted points.
class CountingClassifier final : public Classifier {
 public:
  explicit CountingClassifier(const Classifier& inner) : inner_(inner) {}

  int predict(std::span<const double> encoded) const override {
    calls_.fetch_add(1, std::memory_order_relaxed);
    return inner_.predict(encoded);
  }
  std::string descriptor() const override {
    return "counting(" + inner_.descriptor() + ")";
  }

  std::uint64_t calls() const { return calls_.load(); }
  void reset() { calls_.store(0); }

 private:
  const Classifier& inner_;
  mutable std::atomic<std::uint64_t> calls_{0};
};

// Explicit table from encoded point to label; unlisted points are negative.
class LookupClassifier final : public Classifier {
 public:
  void set(EncodedPoint point, int label) { table_[std::move(point)] = label; }
  int predict(std::span<const double> encoded) const override;
  std::string descriptor() const override;
  std::size_t size() const { return table_.size(); }

 private:
  std::map<EncodedPoint, int> table_;
};

// Structured text artifact: {"type", parameters, "schema_digest"}.
nlohmann::json save_model(const Classifier& model, const Schema& schema);
// Throws DataError on an unknown type or a schema digest mismatch.
std::unique_ptr<Classifier> load_model(const nlohmann::json& j,
                                       const Schema& schema);

}  // namespace gce

#endif  // GCE_CLASSIFIER_HPP_

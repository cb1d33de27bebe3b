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

#include <cmath>
#include <cstdio>

#include "gce/classifier.hpp"
#include "gce/error.hpp"

namespace gce {

LogisticModel::LogisticModel(std::vector<double> weights, double bias)
    : weights_(std::move(weights)), bias_(bias) {
  for (double w : weights_) {
    if (!std::isfinite(w)) throw Error("non-finite logistic weight");
  }
  if (!std::isfinite(bias_)) throw Error("non-finite logistic bias");
}

double LogisticModel::decision_value(std::span<const double> encoded) const {
  double z = bias_;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    z += weights_[i] * encoded[i];
  }
  return z;
}

int LogisticModel::predict(std::span<const double> encoded) const {
  return decision_value(encoded) > 0.0 ? kPositive : kNegative;
}

std::string LogisticModel::descriptor() const {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "logistic(dim=%zu, lr=%g, iters=%d)",
                weights_.size(), hyper.learning_rate, hyper.iterations);
  return buf;
}

LogisticModel train_logistic(const Dataset& train, const LogisticHyper& hyper) {
  if (!train.labeled() || train.rows.empty()) {
    throw DataError("logistic regression needs labeled rows");
  }
  bool has_pos = false;
  bool has_neg = false;
  for (int y : train.labels) {
    has_pos |= y == kPositive;
    has_neg |= y == kNegative;
  }
  if (!has_pos || !has_neg) {
    throw DataError("logistic regression needs both classes in training data");
  }
  if (hyper.iterations < 0 || !(hyper.learning_rate > 0.0)) {
    throw ConfigError("logistic regression needs iterations >= 0 and lr > 0");
  }

  const EncodedMatrix x = encode_all(train.rows, train.schema);
  const std::size_t n = x.rows;
  const std::size_t d = x.cols;

  // Descent runs on standardized columns; the result is mapped back to the
  // encoded geometry so the model is a plain linear rule on EncodedPoints.
  std::vector<double> mean(d, 0.0);
  std::vector<double> scale(d, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = x.row(i);
    for (std::size_t c = 0; c < d; ++c) mean[c] += r[c];
  }
  for (double& m : mean) m /= static_cast<double>(n);
  for (std::size_t c = 0; c < d; ++c) {
    double var = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double t = x.row(i)[c] - mean[c];
      var += t * t;
    }
    var /= static_cast<double>(n);
    scale[c] = var > 1e-12 ? std::sqrt(var) : 1.0;
  }
  EncodedMatrix z = x;
  for (std::size_t i = 0; i < n; ++i) {
    auto r = z.row(i);
    for (std::size_t c = 0; c < d; ++c) r[c] = (r[c] - mean[c]) / scale[c];
  }

  std::vector<double> w(d, 0.0);
  double b = 0.0;
  std::vector<double> grad(d);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (int it = 0; it < hyper.iterations; ++it) {
    std::fill(grad.begin(), grad.end(), 0.0);
    double grad_b = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto r = z.row(i);
      double s = b;
      for (std::size_t c = 0; c < d; ++c) s += w[c] * r[c];
      const double y = train.labels[i] == kPositive ? 1.0 : 0.0;
      const double p = 1.0 / (1.0 + std::exp(-s));
      const double e = (p - y) * inv_n;
      for (std::size_t c = 0; c < d; ++c) grad[c] += e * r[c];
      grad_b += e;
    }
    for (std::size_t c = 0; c < d; ++c) {
      w[c] -= hyper.learning_rate * (grad[c] + hyper.l2 * w[c]);
    }
    b -= hyper.learning_rate * grad_b;
  }

  std::vector<double> weights(d);
  double bias = b;
  for (std::size_t c = 0; c < d; ++c) {
    weights[c] = w[c] / scale[c];
    bias -= weights[c] * mean[c];
  }
  LogisticModel model(std::move(weights), bias);
  model.hyper = hyper;
  model.training_accuracy = accuracy(model, train);
  return model;
}

}  // namespace gce

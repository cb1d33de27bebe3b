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

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gce/classifier.hpp"
#include "gce/error.hpp"

namespace gce {

KnnModel::KnnModel(EncodedMatrix points, std::vector<int> labels, std::size_t k)
    : points_(std::move(points)), labels_(std::move(labels)), k_(k) {
  if (k_ == 0 || k_ % 2 == 0) throw ConfigError("k-NN needs an odd k");
  if (labels_.size() != points_.rows || points_.rows == 0) {
    throw DataError("k-NN needs one label per stored point");
  }
  if (k_ > points_.rows) {
    throw ConfigError("k-NN k exceeds the number of stored points");
  }
}

int KnnModel::predict(std::span<const double> encoded) const {
  // (distance, index) of the current k best, kept sorted.
  std::vector<std::pair<double, std::size_t>> best;
  best.reserve(k_ + 1);
  for (std::size_t i = 0; i < points_.rows; ++i) {
    const auto r = points_.row(i);
    double dist = 0.0;
    for (std::size_t c = 0; c < r.size(); ++c) dist += std::abs(r[c] - encoded[c]);
    if (best.size() == k_ && dist >= best.back().first) continue;
    const std::pair<double, std::size_t> entry{dist, i};
    best.insert(std::upper_bound(best.begin(), best.end(), entry), entry);
    if (best.size() > k_) best.pop_back();
  }
  int vote = 0;
  for (const auto& [dist, i] : best) vote += labels_[i];
  return vote > 0 ? kPositive : kNegative;
}

std::string KnnModel::descriptor() const {
  return "knn(k=" + std::to_string(k_) +
         ", points=" + std::to_string(points_.rows) + ")";
}

KnnModel train_knn(const Dataset& train, std::size_t k) {
  if (!train.labeled()) throw DataError("k-NN needs labeled rows");
  return KnnModel(encode_all(train.rows, train.schema), train.labels, k);
}

}  // namespace gce

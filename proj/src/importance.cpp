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
#include <numeric>

#include "gce/error.hpp"
#include "gce/generators.hpp"
#include "gce/rng.hpp"

namespace gce {

FeatureImportance permutation_importance(const Classifier& model,
                                         const Dataset& data,
                                         std::uint64_t seed) {
  if (data.rows.empty()) throw DataError("permutation importance needs rows");
  const std::size_t n = data.rows.size();
  const std::size_t nf = data.schema.size();
  const std::vector<int> base =
      model.predict_batch(encode_all(data.rows, data.schema));

  FeatureImportance out;
  out.scores.assign(nf, 0.0);
  std::vector<Instance> shuffled = data.rows;
  for (std::size_t f = 0; f < nf; ++f) {
    std::vector<double> column(n);
    for (std::size_t i = 0; i < n; ++i) column[i] = data.rows[i].values[f];
    Rng rng(derive_seed(seed, f));
    rng.shuffle(column);
    for (std::size_t i = 0; i < n; ++i) shuffled[i].values[f] = column[i];
    const std::vector<int> permuted =
        model.predict_batch(encode_all(shuffled, data.schema));
    std::size_t flips = 0;
    for (std::size_t i = 0; i < n; ++i) flips += permuted[i] != base[i];
    out.scores[f] = static_cast<double>(flips) / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
      shuffled[i].values[f] = data.rows[i].values[f];
    }
  }
  out.ranking.resize(nf);
  std::iota(out.ranking.begin(), out.ranking.end(), 0);
  std::stable_sort(out.ranking.begin(), out.ranking.end(),
                   [&](std::size_t a, std::size_t b) {
                     return out.scores[a] > out.scores[b];
                   });
  return out;
}

}  // namespace gce

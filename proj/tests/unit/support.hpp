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

#ifndef GCE_TESTS_SUPPORT_HPP_
#define GCE_TESTS_SUPPORT_HPP_

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "gce/action.hpp"
#include "gce/classifier.hpp"
#include "gce/error.hpp"
#include "gce/tabular.hpp"

namespace gce::test {

// Numeric features x0..x{n-1} on [0, 10 * width], so one bin is `width`.
inline Schema numeric_schema(std::size_t n, double width = 1.0) {
  std::vector<FeatureSchema> f;
  for (std::size_t i = 0; i < n; ++i) {
    f.push_back(FeatureSchema::numeric("x" + std::to_string(i), 0.0,
                                       kBinsPerRange * width));
  }
  return Schema(std::move(f));
}

inline Instance point(std::vector<double> values, std::string id = "") {
  Instance x;
  x.values = std::move(values);
  x.id = std::move(id);
  return x;
}

// +1 iff w . encode(x) + b > 0 (a zero decision is negative).
inline LogisticModel linear(std::vector<double> w, double b) {
  return LogisticModel(std::move(w), b);
}

inline std::vector<Instance> grid_points(std::size_t n, double lo, double hi,
                                         double step) {
  std::vector<Instance> out;
  std::vector<double> cur(n, lo);
  while (true) {
    out.push_back(point(cur));
    std::size_t d = 0;
    while (d < n) {
      cur[d] += step;
      if (cur[d] <= hi + 1e-12) break;
      cur[d] = lo;
      ++d;
    }
    if (d == n) break;
  }
  return out;
}

inline std::string data_dir() { return GCE_TEST_DATA_DIR; }
inline std::string config_dir() { return GCE_TEST_CONFIG_DIR; }

}  // namespace gce::test

#endif  // GCE_TESTS_SUPPORT_HPP_

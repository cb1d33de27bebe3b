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

#include <limits>

#include "gce/kernels.hpp"

namespace gce::serial {

CostMatrix evaluate_actions(std::span<const Action> actions,
                            std::span<const Instance> instances,
                            const Classifier& model, const Schema& schema) {
  CostMatrix out;
  out.actions = actions.size();
  out.instances = instances.size();
  out.values.assign(out.actions * out.instances,
                    std::numeric_limits<double>::quiet_NaN());
  EncodedPoint scratch(schema.encoded_dim());
  for (std::size_t a = 0; a < actions.size(); ++a) {
    for (std::size_t i = 0; i < instances.size(); ++i) {
      const Instance cf = apply(actions[a], instances[i]);
      encode_into(cf, schema, scratch);
      if (model.predict(scratch) == kPositive) {
        out.values[a * out.instances + i] =
            cost(actions[a], instances[i], schema);
      }
    }
  }
  return out;
}

void assign_nearest_l1(const EncodedMatrix& points,
                       const EncodedMatrix& centers,
                       std::span<std::size_t> assignment,
                       std::span<double> distances) {
  for (std::size_t i = 0; i < points.rows; ++i) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < centers.rows; ++c) {
      const double d = l1_distance(points.row(i), centers.row(c));
      if (d < best_d) {
        best_d = d;
        best = c;
      }
    }
    assignment[i] = best;
    distances[i] = best_d;
  }
}

std::vector<double> pairwise_l1(const EncodedMatrix& rows) {
  const std::size_t n = rows.rows;
  std::vector<double> out(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = l1_distance(rows.row(i), rows.row(j));
      out[i * n + j] = d;
      out[j * n + i] = d;
    }
  }
  return out;
}

}  // namespace gce::serial

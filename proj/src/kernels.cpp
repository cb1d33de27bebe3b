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

#include "gce/kernels.hpp"

namespace gce {

CostMatrix evaluate_actions(std::span<const Action> actions,
                            std::span<const Instance> instances,
                            const Classifier& model, const Schema& schema,
                            Execution exec) {
  return exec == Execution::kParallel
             ? omp::evaluate_actions(actions, instances, model, schema)
             : serial::evaluate_actions(actions, instances, model, schema);
}

void assign_nearest_l1(const EncodedMatrix& points,
                       const EncodedMatrix& centers,
                       std::span<std::size_t> assignment,
                       std::span<double> distances, Execution exec) {
  if (exec == Execution::kParallel) {
    omp::assign_nearest_l1(points, centers, assignment, distances);
  } else {
    serial::assign_nearest_l1(points, centers, assignment, distances);
  }
}

std::vector<double> pairwise_l1(const EncodedMatrix& rows, Execution exec) {
  return exec == Execution::kParallel ? omp::pairwise_l1(rows)
                                      : serial::pairwise_l1(rows);
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  Execution exec) {
  if (exec == Execution::kParallel) {
    omp::parallel_for(n, body);
  } else {
    for (std::size_t i = 0; i < n; ++i) body(i);
  }
}

}  // namespace gce

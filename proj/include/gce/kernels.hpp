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

#ifndef GCE_KERNELS_HPP_
#define GCE_KERNELS_HPP_

// Data-parallel inner loops. Each kernel has a serial reference in
// gce::serial and an OpenMP version in gce::omp; both write every output
// cell independently, so results are identical for any thread count. The
// dispatching functions in gce pick one by Execution.

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "gce/action.hpp"
#include "gce/classifier.hpp"
#include "gce/tabular.hpp"

namespace gce {

enum class Execution { kSerial, kParallel };

// cost(a, x) for each (action a, instance x) where h(a(x)) = +1, NaN where
// the action does not flip the instance. Row-major by action.
struct CostMatrix {
  std::size_t actions = 0;
  std::size_t instances = 0;
  std::vector<double> values;

  double at(std::size_t a, std::size_t i) const {
    return values[a * instances + i];
  }
  bool effective(std::size_t a, std::size_t i) const {
    return !std::isnan(at(a, i));
  }
};

namespace serial {

CostMatrix evaluate_actions(std::span<const Action> actions,
                            std::span<const Instance> instances,
                            const Classifier& model, const Schema& schema);

// Nearest center per point in L1; ties go to the lowest center index.
void assign_nearest_l1(const EncodedMatrix& points,
                       const EncodedMatrix& centers,
                       std::span<std::size_t> assignment,
                       std::span<double> distances);

// Symmetric row-major n x n matrix of L1 distances between rows.
std::vector<double> pairwise_l1(const EncodedMatrix& rows);

}  // namespace serial

namespace omp {

CostMatrix evaluate_actions(std::span<const Action> actions,
                            std::span<const Instance> instances,
                            const Classifier& model, const Schema& schema);
void assign_nearest_l1(const EncodedMatrix& points,
                       const EncodedMatrix& centers,
                       std::span<std::size_t> assignment,
                       std::span<double> distances);
std::vector<double> pairwise_l1(const EncodedMatrix& rows);

// Runs body(i) for i in [0, n) across threads. The first exception thrown
// by any iteration (lowest index) is rethrown after the loop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

// 1 when built without OpenMP.
int max_threads();

}  // namespace omp

CostMatrix evaluate_actions(std::span<const Action> actions,
                            std::span<const Instance> instances,
                            const Classifier& model, const Schema& schema,
                            Execution exec = Execution::kParallel);
void assign_nearest_l1(const EncodedMatrix& points,
                       const EncodedMatrix& centers,
                       std::span<std::size_t> assignment,
                       std::span<double> distances,
                       Execution exec = Execution::kParallel);
std::vector<double> pairwise_l1(const EncodedMatrix& rows,
                                Execution exec = Execution::kParallel);
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  Execution exec);

inline double l1_distance(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d += std::abs(a[i] - b[i]);
  return d;
}

}  // namespace gce

#endif  // GCE_KERNELS_HPP_

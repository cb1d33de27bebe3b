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

#include <cstdint>
#include <exception>
#include <limits>

#include "gce/kernels.hpp"

#ifdef GCE_HAVE_OPENMP
#include <omp.h>
#endif

namespace gce::omp {

CostMatrix evaluate_actions(std::span<const Action> actions,
                            std::span<const Instance> instances,
                            const Classifier& model, const Schema& schema) {
  CostMatrix out;
  out.actions = actions.size();
  out.instances = instances.size();
  out.values.assign(out.actions * out.instances,
                    std::numeric_limits<double>::quiet_NaN());
  const auto cells = static_cast<std::int64_t>(out.values.size());
  const std::size_t n = out.instances;
#pragma omp parallel
  {
    EncodedPoint scratch(schema.encoded_dim());
#pragma omp for schedule(static)
    for (std::int64_t cell = 0; cell < cells; ++cell) {
      const auto a = static_cast<std::size_t>(cell) / n;
      const auto i = static_cast<std::size_t>(cell) % n;
      const Instance cf = apply(actions[a], instances[i]);
      encode_into(cf, schema, scratch);
      if (model.predict(scratch) == kPositive) {
        out.values[static_cast<std::size_t>(cell)] =
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
  const auto n = static_cast<std::int64_t>(points.rows);
#pragma omp parallel for schedule(static)
  for (std::int64_t ii = 0; ii < n; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
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
  const auto ni = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t ii = 0; ii < ni; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = l1_distance(rows.row(i), rows.row(j));
      out[i * n + j] = d;
      out[j * n + i] = d;
    }
  }
  return out;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  std::vector<std::exception_ptr> errors(n);
  const auto ni = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t ii = 0; ii < ni; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    try {
      body(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

int max_threads() {
#ifdef GCE_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace gce::omp

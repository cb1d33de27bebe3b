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

#include "gce/clustering.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "gce/error.hpp"
#include "gce/rng.hpp"

namespace gce {

Instance centroid(std::span<const Instance> members, const Schema& schema) {
  if (members.empty()) throw Error("centroid of an empty cluster");
  Instance c;
  c.values.assign(schema.size(), 0.0);
  for (std::size_t f = 0; f < schema.size(); ++f) {
    const auto& feature = schema.feature(f);
    if (feature.is_numeric()) {
      double sum = 0.0;
      for (const auto& x : members) sum += x.values[f];
      c.values[f] = sum / static_cast<double>(members.size());
    } else {
      std::vector<std::size_t> counts(feature.categories.size(), 0);
      for (const auto& x : members) ++counts[x.category(f)];
      const auto best = std::max_element(counts.begin(), counts.end());
      c.values[f] = static_cast<double>(best - counts.begin());
    }
  }
  return c;
}

namespace {

// L1-optimal center of the given rows of `points`.
void update_center(const EncodedMatrix& points,
                   const std::vector<std::size_t>& rows, const Schema& schema,
                   std::span<double> center) {
  std::vector<double> column(rows.size());
  for (std::size_t f = 0; f < schema.size(); ++f) {
    const std::size_t off = schema.offset(f);
    const auto& feature = schema.feature(f);
    if (feature.is_numeric()) {
      for (std::size_t i = 0; i < rows.size(); ++i) {
        column[i] = points.row(rows[i])[off];
      }
      const std::size_t mid = column.size() / 2;
      std::nth_element(column.begin(), column.begin() + static_cast<long>(mid),
                       column.end());
      double median = column[mid];
      if (column.size() % 2 == 0) {
        const double lower = *std::max_element(
            column.begin(), column.begin() + static_cast<long>(mid));
        median = 0.5 * (lower + median);
      }
      center[off] = median;
    } else {
      const std::size_t width = feature.categories.size();
      std::vector<std::size_t> counts(width, 0);
      for (std::size_t r : rows) {
        const auto p = points.row(r);
        for (std::size_t c = 0; c < width; ++c) {
          if (p[off + c] > 0.5) ++counts[c];
        }
      }
      const auto best = static_cast<std::size_t>(
          std::max_element(counts.begin(), counts.end()) - counts.begin());
      for (std::size_t c = 0; c < width; ++c) {
        center[off + c] = c == best ? 1.0 : 0.0;
      }
    }
  }
}

}  // namespace

KMeansResult kmeans_detailed(std::span<const Instance> points,
                             const Schema& schema, std::size_t k,
                             std::uint64_t seed, std::size_t max_iterations,
                             Execution exec) {
  if (points.empty()) throw Error("kmeans needs at least one point");
  if (k == 0) throw ConfigError("kmeans k must be >= 1");
  const std::size_t n = points.size();
  const EncodedMatrix enc = encode_all(points, schema);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  rng.shuffle(order);
  std::vector<std::size_t> init;
  std::set<std::vector<double>> picked;
  for (std::size_t idx : order) {
    if (init.size() == k) break;
    const auto row = enc.row(idx);
    if (picked.emplace(row.begin(), row.end()).second) init.push_back(idx);
  }
  const std::size_t kk = init.size();

  EncodedMatrix centers;
  centers.rows = kk;
  centers.cols = enc.cols;
  centers.data.resize(kk * enc.cols);
  for (std::size_t c = 0; c < kk; ++c) {
    std::copy(enc.row(init[c]).begin(), enc.row(init[c]).end(),
              centers.row(c).begin());
  }

  KMeansResult result;
  std::vector<std::size_t> assignment(n, kk);
  std::vector<std::size_t> next(n);
  std::vector<double> dist(n);
  for (std::size_t it = 0; it < max_iterations; ++it) {
    assign_nearest_l1(enc, centers, next, dist, exec);

    std::vector<std::size_t> sizes(kk, 0);
    for (std::size_t i = 0; i < n; ++i) ++sizes[next[i]];
    std::vector<bool> moved(n, false);
    for (std::size_t c = 0; c < kk; ++c) {
      if (sizes[c] > 0) continue;
      std::size_t far = n;
      for (std::size_t i = 0; i < n; ++i) {
        if (moved[i] || sizes[next[i]] < 2) continue;
        if (far == n || dist[i] > dist[far]) far = i;
      }
      if (far == n) break;
      --sizes[next[far]];
      next[far] = c;
      ++sizes[c];
      dist[far] = 0.0;
      moved[far] = true;
      std::copy(enc.row(far).begin(), enc.row(far).end(),
                centers.row(c).begin());
    }

    ++result.iterations;
    if (next == assignment) {
      result.converged = true;
      break;
    }
    assignment = next;

    std::vector<std::vector<std::size_t>> rows(kk);
    for (std::size_t i = 0; i < n; ++i) rows[assignment[i]].push_back(i);
    for (std::size_t c = 0; c < kk; ++c) {
      if (!rows[c].empty()) update_center(enc, rows[c], schema, centers.row(c));
    }
    double objective = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      objective += l1_distance(enc.row(i), centers.row(assignment[i]));
    }
    result.objective_trace.push_back(objective);
  }

  // Drop clusters that stayed empty (only possible with degenerate data) and
  // renumber densely.
  std::vector<std::vector<std::size_t>> rows(kk);
  for (std::size_t i = 0; i < n; ++i) rows[assignment[i]].push_back(i);
  std::vector<std::size_t> remap(kk, kk);
  for (std::size_t c = 0; c < kk; ++c) {
    if (rows[c].empty()) continue;
    remap[c] = result.clusters.size();
    ClusterState state;
    state.id = result.clusters.size();
    state.member_indices = rows[c];
    for (std::size_t i : rows[c]) state.members.push_back(points[i]);
    state.centroid = centroid(state.members, schema);
    result.clusters.push_back(std::move(state));
  }
  result.assignment.resize(n);
  for (std::size_t i = 0; i < n; ++i) result.assignment[i] = remap[assignment[i]];
  return result;
}

std::vector<ClusterState> kmeans(std::span<const Instance> points,
                                 const Schema& schema, std::size_t k,
                                 std::uint64_t seed) {
  return kmeans_detailed(points, schema, k, seed).clusters;
}

double d1(const ClusterState& c1, const ClusterState& c2, const Schema& schema) {
  return l1_distance(encode(c1.centroid, schema), encode(c2.centroid, schema));
}

double d2(const ClusterState& c1, const ClusterState& c2, const Schema& schema,
          double empty_penalty) {
  if (c1.candidate_actions.empty() || c2.candidate_actions.empty()) {
    return empty_penalty;
  }
  return l1_distance(mean_action_vector(c1.candidate_actions, schema),
                     mean_action_vector(c2.candidate_actions, schema));
}

double empty_candidate_penalty(std::span<const ClusterState> clusters,
                               const Schema& schema) {
  double worst = 0.0;
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    if (clusters[i].candidate_actions.empty()) continue;
    for (std::size_t j = i + 1; j < clusters.size(); ++j) {
      if (clusters[j].candidate_actions.empty()) continue;
      worst = std::max(worst, d1(clusters[i], clusters[j], schema) +
                                  d2(clusters[i], clusters[j], schema, 0.0));
    }
  }
  return worst > 0.0 ? 2.0 * worst : 1.0;
}

ClusterState merge(const ClusterState& c1, const ClusterState& c2,
                   const Schema& schema) {
  if (c1.id == c2.id) throw Error("merge of a cluster with itself");
  ClusterState out;
  out.id = std::min(c1.id, c2.id);
  out.members = c1.members;
  out.members.insert(out.members.end(), c2.members.begin(), c2.members.end());
  out.member_indices = c1.member_indices;
  out.member_indices.insert(out.member_indices.end(), c2.member_indices.begin(),
                            c2.member_indices.end());
  std::vector<Action> pool = c1.candidate_actions;
  pool.insert(pool.end(), c2.candidate_actions.begin(),
              c2.candidate_actions.end());
  out.candidate_actions = deduplicate(std::move(pool));
  out.centroid = centroid(out.members, schema);
  return out;
}

}  // namespace gce

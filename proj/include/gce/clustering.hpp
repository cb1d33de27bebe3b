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

#ifndef GCE_CLUSTERING_HPP_
#define GCE_CLUSTERING_HPP_

// Initial partition of the affected population and the feature/action space
// distances used to merge clusters.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gce/action.hpp"
#include "gce/kernels.hpp"
#include "gce/tabular.hpp"

namespace gce {

inline constexpr std::size_t kMaxLloydIterations = 300;

struct ClusterState {
  std::vector<Instance> members;
  // Positions of the members in the clustered sequence.
  std::vector<std::size_t> member_indices;
  Instance centroid;
  std::vector<Action> candidate_actions;
  std::size_t id = 0;
  std::optional<std::string> warning;
};

// Numeric mean in raw units; categorical mode, ties to the lower label index.
Instance centroid(std::span<const Instance> members, const Schema& schema);

struct KMeansResult {
  std::vector<ClusterState> clusters;
  // Cluster position per input point.
  std::vector<std::size_t> assignment;
  // Sum of member-to-center L1 distances after each update step.
  std::vector<double> objective_trace;
  std::size_t iterations = 0;
  bool converged = false;
};

// Lloyd iterations in encoded space under L1: nearest center by L1, then
// each center is moved to the coordinate-wise median of its members on
// numeric coordinates and to the one-hot of the mode on each categorical
// block, which minimizes the L1 objective for the fixed assignment.
// Initialization takes the first k distinct points of a seeded shuffle;
// k is clamped to the number of distinct points. Empty clusters are
// re-seeded with the point farthest from its center. Candidate sets are
// left empty and ids are 0..k'-1.
KMeansResult kmeans_detailed(std::span<const Instance> points,
                             const Schema& schema, std::size_t k,
                             std::uint64_t seed,
                             std::size_t max_iterations = kMaxLloydIterations,
                             Execution exec = Execution::kSerial);

std::vector<ClusterState> kmeans(std::span<const Instance> points,
                                 const Schema& schema, std::size_t k,
                                 std::uint64_t seed);

// L1 between encoded centroids.
double d1(const ClusterState& c1, const ClusterState& c2, const Schema& schema);

// L1 between the mean action vectors of the candidate sets; empty_penalty
// when either set is empty.
double d2(const ClusterState& c1, const ClusterState& c2, const Schema& schema,
          double empty_penalty);

// Twice the largest d1 + d2 over pairs with nonempty candidate sets, or 1
// when there is no such pair (or the maximum is zero).
double empty_candidate_penalty(std::span<const ClusterState> clusters,
                               const Schema& schema);

// Members concatenated (c1 first), candidates deduplicated in order,
// centroid recomputed, id = min of the two ids.
ClusterState merge(const ClusterState& c1, const ClusterState& c2,
                   const Schema& schema);

}  // namespace gce

#endif  // GCE_CLUSTERING_HPP_

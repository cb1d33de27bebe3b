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

#ifndef GCE_ACTION_HPP_
#define GCE_ACTION_HPP_

// Actions: sparse feature changes applied uniformly to instances.
//
// A numeric change is a translation by a delta in raw units; a categorical
// change sets the feature to a target label. The cost of an action on an
// instance is the L1 distance between the instance and its counterfactual in
// encoded space: |delta| / bin_width per numeric change plus one per
// categorical feature whose value actually changes.

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gce/tabular.hpp"
#include "json.hpp"

namespace gce {

struct NumericDelta {
  double delta = 0.0;
  auto operator<=>(const NumericDelta&) const = default;
};

struct CategoricalSet {
  std::size_t target = 0;
  auto operator<=>(const CategoricalSet&) const = default;
};

using Change = std::variant<NumericDelta, CategoricalSet>;

class Action {
 public:
  using Entry = std::pair<std::size_t, Change>;

  Action() = default;

  // Sets the change for a feature, replacing any previous one. A zero
  // numeric delta removes the feature from the action.
  Action& set(std::size_t feature, Change change);
  Action& set_delta(std::size_t feature, double delta) {
    return set(feature, NumericDelta{delta});
  }
  Action& set_category(std::size_t feature, std::size_t target) {
    return set(feature, CategoricalSet{target});
  }

  // Entries sorted by feature index.
  std::span<const Entry> changes() const { return changes_; }
  std::optional<Change> change_for(std::size_t feature) const;
  bool empty() const { return changes_.empty(); }
  std::size_t size() const { return changes_.size(); }

  // Canonical order: lexicographic over (feature, kind, value).
  std::strong_ordering operator<=>(const Action& other) const;
  bool operator==(const Action& other) const = default;

 private:
  std::vector<Entry> changes_;
};

// Dense action in encoded geometry: delta / bin_width for numerics, one-hot
// of the target for categoricals (all zero if untouched).
using ActionVector = std::vector<double>;

// Throws SchemaError if a change targets the wrong feature kind, an unknown
// label, a feature outside the schema, or has a non-finite delta.
void validate_action(const Action& a, const Schema& schema);

Instance apply(const Action& a, const Instance& x);
double cost(const Action& a, const Instance& x, const Schema& schema);
ActionVector to_action_vector(const Action& a, const Schema& schema);
// Coordinate-wise mean. Throws Error on an empty sequence.
ActionVector mean_action_vector(std::span<const Action> actions,
                                const Schema& schema);

// Stable deduplication key: "f<index>:d<delta>" / "f<index>:s<label>".
std::string canonical_key(const Action& a);

// Keeps the first occurrence of each action.
std::vector<Action> deduplicate(std::vector<Action> actions);

// {"feature": {"delta": 2}, "other": {"set": "US"}}
nlohmann::json action_to_json(const Action& a, const Schema& schema);
Action action_from_json(const nlohmann::json& j, const Schema& schema);

// Compact human-readable rendering, e.g. "{age -> +5.6, sex -> Male}".
std::string describe(const Action& a, const Schema& schema);

}  // namespace gce

#endif  // GCE_ACTION_HPP_

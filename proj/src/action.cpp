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

#include "gce/action.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <unordered_set>

#include "gce/error.hpp"

namespace gce {

Action& Action::set(std::size_t feature, Change change) {
  auto it = std::lower_bound(
      changes_.begin(), changes_.end(), feature,
      [](const Entry& e, std::size_t f) { return e.first < f; });
  const bool zero_delta = std::holds_alternative<NumericDelta>(change) &&
                          std::get<NumericDelta>(change).delta == 0.0;
  if (it != changes_.end() && it->first == feature) {
    if (zero_delta) {
      changes_.erase(it);
    } else {
      it->second = change;
    }
  } else if (!zero_delta) {
    changes_.insert(it, Entry{feature, change});
  }
  return *this;
}

std::optional<Change> Action::change_for(std::size_t feature) const {
  for (const auto& [f, c] : changes_) {
    if (f == feature) return c;
  }
  return std::nullopt;
}

std::strong_ordering Action::operator<=>(const Action& other) const {
  const std::size_t n = std::min(changes_.size(), other.changes_.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& [fa, ca] = changes_[i];
    const auto& [fb, cb] = other.changes_[i];
    if (fa != fb) return fa <=> fb;
    if (ca.index() != cb.index()) return ca.index() <=> cb.index();
    if (const auto* da = std::get_if<NumericDelta>(&ca)) {
      const double x = da->delta;
      const double y = std::get<NumericDelta>(cb).delta;
      if (x < y) return std::strong_ordering::less;
      if (x > y) return std::strong_ordering::greater;
    } else {
      const auto x = std::get<CategoricalSet>(ca).target;
      const auto y = std::get<CategoricalSet>(cb).target;
      if (x != y) return x <=> y;
    }
  }
  return changes_.size() <=> other.changes_.size();
}

void validate_action(const Action& a, const Schema& schema) {
  for (const auto& [f, change] : a.changes()) {
    if (f >= schema.size()) {
      throw SchemaError("action changes feature index " + std::to_string(f) +
                        " outside the schema");
    }
    const auto& feature = schema.feature(f);
    if (const auto* d = std::get_if<NumericDelta>(&change)) {
      if (!feature.is_numeric()) {
        throw SchemaError("numeric delta on categorical feature '" +
                          feature.name + "'");
      }
      if (!std::isfinite(d->delta)) {
        throw SchemaError("non-finite delta on feature '" + feature.name + "'");
      }
    } else {
      if (feature.is_numeric()) {
        throw SchemaError("categorical set on numeric feature '" +
                          feature.name + "'");
      }
      if (std::get<CategoricalSet>(change).target >=
          feature.categories.size()) {
        throw SchemaError("unknown target label on feature '" + feature.name +
                          "'");
      }
    }
  }
}

Instance apply(const Action& a, const Instance& x) {
  Instance out = x;
  for (const auto& [f, change] : a.changes()) {
    if (const auto* d = std::get_if<NumericDelta>(&change)) {
      out.values[f] += d->delta;
    } else {
      out.values[f] =
          static_cast<double>(std::get<CategoricalSet>(change).target);
    }
  }
  return out;
}

double cost(const Action& a, const Instance& x, const Schema& schema) {
  double total = 0.0;
  for (const auto& [f, change] : a.changes()) {
    if (const auto* d = std::get_if<NumericDelta>(&change)) {
      total += std::abs(d->delta) / schema.feature(f).bin_width;
    } else if (std::get<CategoricalSet>(change).target != x.category(f)) {
      total += 1.0;
    }
  }
  return total;
}

ActionVector to_action_vector(const Action& a, const Schema& schema) {
  ActionVector v(schema.encoded_dim(), 0.0);
  for (const auto& [f, change] : a.changes()) {
    const std::size_t off = schema.offset(f);
    if (const auto* d = std::get_if<NumericDelta>(&change)) {
      v[off] = d->delta / schema.feature(f).bin_width;
    } else {
      v[off + std::get<CategoricalSet>(change).target] = 1.0;
    }
  }
  return v;
}

ActionVector mean_action_vector(std::span<const Action> actions,
                                const Schema& schema) {
  if (actions.empty()) {
    throw Error("mean_action_vector of an empty action sequence");
  }
  ActionVector mean(schema.encoded_dim(), 0.0);
  for (const auto& a : actions) {
    const ActionVector v = to_action_vector(a, schema);
    for (std::size_t i = 0; i < v.size(); ++i) mean[i] += v[i];
  }
  const double n = static_cast<double>(actions.size());
  for (double& m : mean) m /= n;
  return mean;
}

std::string canonical_key(const Action& a) {
  std::string key;
  for (const auto& [f, change] : a.changes()) {
    if (!key.empty()) key += ';';
    key += 'f';
    key += std::to_string(f);
    if (const auto* d = std::get_if<NumericDelta>(&change)) {
      key += ":d";
      key += format_double(d->delta);
    } else {
      key += ":s";
      key += std::to_string(std::get<CategoricalSet>(change).target);
    }
  }
  return key;
}

std::vector<Action> deduplicate(std::vector<Action> actions) {
  std::unordered_set<std::string> seen;
  std::vector<Action> out;
  out.reserve(actions.size());
  for (auto& a : actions) {
    if (seen.insert(canonical_key(a)).second) out.push_back(std::move(a));
  }
  return out;
}

nlohmann::json action_to_json(const Action& a, const Schema& schema) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [f, change] : a.changes()) {
    const auto& feature = schema.feature(f);
    if (const auto* d = std::get_if<NumericDelta>(&change)) {
      j[feature.name] = {{"delta", d->delta}};
    } else {
      j[feature.name] = {
          {"set", feature.categories[std::get<CategoricalSet>(change).target]}};
    }
  }
  return j;
}

Action action_from_json(const nlohmann::json& j, const Schema& schema) {
  if (!j.is_object()) throw DataError("action record must be an object");
  Action a;
  for (const auto& [name, spec] : j.items()) {
    const auto f = schema.find(name);
    if (!f) throw DataError("action names unknown feature '" + name + "'");
    const auto& feature = schema.feature(*f);
    if (spec.contains("delta")) {
      if (!feature.is_numeric()) {
        throw DataError("delta on categorical feature '" + name + "'");
      }
      a.set_delta(*f, spec["delta"].get<double>());
    } else if (spec.contains("set")) {
      if (feature.is_numeric()) {
        throw DataError("set on numeric feature '" + name + "'");
      }
      const auto label = spec["set"].get<std::string>();
      const auto idx = feature.category_index(label);
      if (!idx) {
        throw DataError("unknown label '" + label + "' for feature '" + name +
                        "'");
      }
      a.set_category(*f, *idx);
    } else {
      throw DataError("change for '" + name + "' needs 'delta' or 'set'");
    }
  }
  validate_action(a, schema);
  return a;
}

std::string describe(const Action& a, const Schema& schema) {
  std::string out = "{";
  bool first = true;
  for (const auto& [f, change] : a.changes()) {
    if (!first) out += ", ";
    first = false;
    const auto& feature = schema.feature(f);
    out += feature.name + " -> ";
    if (const auto* d = std::get_if<NumericDelta>(&change)) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%+.4g", d->delta);
      out += buf;
    } else {
      out += feature.categories[std::get<CategoricalSet>(change).target];
    }
  }
  out += "}";
  return out;
}

}  // namespace gce

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

#include "gce/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "gce/error.hpp"

namespace gce {

std::optional<double> recourse_cost(std::span<const Action> actions,
                                    const Instance& x, const Classifier& model,
                                    const Schema& schema) {
  std::optional<double> best;
  for (const auto& a : actions) {
    if (predict(model, apply(a, x), schema) != kPositive) continue;
    const double c = cost(a, x, schema);
    if (!best || c < *best) best = c;
  }
  return best;
}

Coverage evaluate_coverage(std::span<const Action> actions,
                           std::span<const Instance> xa,
                           const Classifier& model, const Schema& schema,
                           Execution exec) {
  if (xa.empty()) throw Error("effectiveness of an empty affected set");
  const CostMatrix costs = evaluate_actions(actions, xa, model, schema, exec);
  Coverage out;
  out.recourse.assign(xa.size(), std::nullopt);
  out.chosen.assign(xa.size(), std::nullopt);
  double total = 0.0;
  for (std::size_t i = 0; i < xa.size(); ++i) {
    for (std::size_t a = 0; a < actions.size(); ++a) {
      if (!costs.effective(a, i)) continue;
      const double c = costs.at(a, i);
      if (!out.recourse[i] || c < *out.recourse[i]) {
        out.recourse[i] = c;
        out.chosen[i] = a;
      }
    }
    if (out.recourse[i]) {
      ++out.covered;
      total += *out.recourse[i];
    }
  }
  out.effectiveness =
      static_cast<double>(out.covered) / static_cast<double>(xa.size());
  if (out.covered > 0) {
    out.average_cost = total / static_cast<double>(out.covered);
  }
  return out;
}

double effectiveness(std::span<const Action> actions,
                     std::span<const Instance> xa, const Classifier& model,
                     const Schema& schema) {
  return evaluate_coverage(actions, xa, model, schema).effectiveness;
}

std::optional<double> average_cost(std::span<const Action> actions,
                                   std::span<const Instance> xa,
                                   const Classifier& model,
                                   const Schema& schema) {
  return evaluate_coverage(actions, xa, model, schema).average_cost;
}

std::vector<CurvePoint> effectiveness_cost_curve(const Coverage& coverage,
                                                 std::span<const double> grid) {
  if (!std::is_sorted(grid.begin(), grid.end())) {
    throw Error("curve thresholds must be sorted ascending");
  }
  std::vector<double> costs;
  for (const auto& rc : coverage.recourse) {
    if (rc) costs.push_back(*rc);
  }
  std::sort(costs.begin(), costs.end());
  const auto n = static_cast<double>(coverage.recourse.size());
  std::vector<CurvePoint> out;
  out.reserve(grid.size());
  for (double t : grid) {
    const auto covered = static_cast<double>(
        std::upper_bound(costs.begin(), costs.end(), t) - costs.begin());
    out.push_back({t, n > 0 ? covered / n : 0.0});
  }
  return out;
}

std::vector<CurvePoint> effectiveness_cost_curve(std::span<const Action> actions,
                                                 std::span<const Instance> xa,
                                                 const Classifier& model,
                                                 const Schema& schema,
                                                 std::span<const double> grid) {
  return effectiveness_cost_curve(evaluate_coverage(actions, xa, model, schema),
                                  grid);
}

std::vector<double> curve_grid(double max_cost, std::size_t steps) {
  if (steps == 0) throw Error("curve grid needs at least one step");
  std::vector<double> grid(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i) {
    grid[i] = max_cost * static_cast<double>(i) / static_cast<double>(steps);
  }
  grid.back() = max_cost;
  return grid;
}

std::string curve_to_csv(std::span<const CurvePoint> curve) {
  std::string out = "cost_threshold,covered_fraction\n";
  for (const auto& p : curve) {
    out += format_double(p.cost_threshold);
    out += ',';
    out += format_double(p.covered_fraction);
    out += '\n';
  }
  return out;
}

double mean(std::span<const double> values) {
  if (values.empty()) return 0.0;
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

double stddev(std::span<const double> values, StdKind kind) {
  const std::size_t n = values.size();
  if (n < 2) return 0.0;
  const double mu = mean(values);
  double ss = 0.0;
  for (double v : values) ss += (v - mu) * (v - mu);
  const double divisor =
      kind == StdKind::kPopulation ? static_cast<double>(n)
                                   : static_cast<double>(n - 1);
  return std::sqrt(ss / divisor);
}

EvalRecord aggregate_folds(std::span<const FoldResult> folds,
                           StdKind std_kind) {
  if (folds.empty()) throw Error("aggregate_folds needs at least one fold");
  EvalRecord r;
  std::vector<double> effs;
  std::vector<double> costs;
  std::vector<double> sizes;
  double runtime = 0.0;
  for (const auto& f : folds) {
    effs.push_back(100.0 * f.effectiveness);
    sizes.push_back(static_cast<double>(f.size));
    runtime += f.runtime_seconds;
    if (f.average_cost) {
      costs.push_back(*f.average_cost);
    } else {
      ++r.cost_absent_folds;
    }
  }
  r.eff_mean = mean(effs);
  r.eff_std = stddev(effs, std_kind);
  if (!costs.empty()) {
    r.cost_mean = mean(costs);
    r.cost_std = stddev(costs, std_kind);
  }
  r.size_actual = mean(sizes);
  r.runtime_seconds = runtime;
  r.folds.assign(folds.begin(), folds.end());
  return r;
}

namespace {

double cost_or_inf(const std::optional<double>& c) {
  return c ? *c : std::numeric_limits<double>::infinity();
}

bool dominates_pair(double e1, double c1, double e2, double c2, bool& strict) {
  if (e1 < e2 || c1 > c2) return false;
  if (e1 > e2 || c1 < c2) strict = true;
  return true;
}

std::string record_label(const EvalRecord& r) {
  return r.method + " (" + r.dataset + "/" + r.model + ", s=" +
         std::to_string(r.s) + ")";
}

}  // namespace

bool pareto_dominates(const EvalRecord& r1, const EvalRecord& r2,
                      DominanceMode mode) {
  if (r1.dataset != r2.dataset || r1.model != r2.model || r1.s != r2.s) {
    throw Error("incomparable records: " + record_label(r1) + " vs " +
                record_label(r2));
  }
  bool strict = false;
  if (mode == DominanceMode::kMeans) {
    return dominates_pair(r1.eff_mean, cost_or_inf(r1.cost_mean), r2.eff_mean,
                          cost_or_inf(r2.cost_mean), strict) &&
           strict;
  }
  if (r1.folds.empty() || r1.folds.size() != r2.folds.size()) {
    throw Error("per-fold dominance needs matching fold results: " +
                record_label(r1) + " vs " + record_label(r2));
  }
  for (std::size_t i = 0; i < r1.folds.size(); ++i) {
    if (!dominates_pair(r1.folds[i].effectiveness,
                        cost_or_inf(r1.folds[i].average_cost),
                        r2.folds[i].effectiveness,
                        cost_or_inf(r2.folds[i].average_cost), strict)) {
      return false;
    }
  }
  return strict;
}

RecordFlags flag_record(const EvalRecord& r) {
  RecordFlags f;
  f.practical = r.eff_mean >= kPracticalEffectiveness;
  f.eff_robust = r.eff_std <= kMaxEffStd;
  f.cost_robust = r.cost_mean ? r.cost_std <= *r.cost_mean / 2.0 : true;
  f.robust = f.eff_robust && f.cost_robust;
  return f;
}

nlohmann::json record_to_json(const EvalRecord& r) {
  nlohmann::json j = {{"method", r.method},
                      {"dataset", r.dataset},
                      {"model", r.model},
                      {"s", r.s},
                      {"eff_mean", r.eff_mean},
                      {"eff_std", r.eff_std},
                      {"cost_mean", r.cost_mean ? nlohmann::json(*r.cost_mean)
                                                : nlohmann::json(nullptr)},
                      {"cost_std", r.cost_std},
                      {"size_actual", r.size_actual},
                      {"runtime_seconds", r.runtime_seconds},
                      {"cost_absent_folds", r.cost_absent_folds}};
  if (!r.folds.empty()) {
    nlohmann::json folds = nlohmann::json::array();
    for (const auto& f : r.folds) {
      folds.push_back({{"effectiveness", f.effectiveness},
                       {"average_cost", f.average_cost
                                            ? nlohmann::json(*f.average_cost)
                                            : nlohmann::json(nullptr)},
                       {"size", f.size},
                       {"runtime_seconds", f.runtime_seconds}});
    }
    j["folds"] = folds;
  }
  return j;
}

EvalRecord record_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw DataError("evaluation record must be an object");
  EvalRecord r;
  try {
    r.method = j.at("method").get<std::string>();
    r.dataset = j.at("dataset").get<std::string>();
    r.model = j.at("model").get<std::string>();
    r.s = j.at("s").get<std::size_t>();
    r.eff_mean = j.at("eff_mean").get<double>();
    r.eff_std = j.value("eff_std", 0.0);
    if (j.contains("cost_mean") && !j["cost_mean"].is_null()) {
      r.cost_mean = j["cost_mean"].get<double>();
    }
    r.cost_std = j.value("cost_std", 0.0);
    r.size_actual = j.value("size_actual", 0.0);
    r.runtime_seconds = j.value("runtime_seconds", 0.0);
    r.cost_absent_folds = j.value("cost_absent_folds", std::size_t{0});
    if (j.contains("folds")) {
      for (const auto& f : j["folds"]) {
        FoldResult fr;
        fr.effectiveness = f.at("effectiveness").get<double>();
        if (f.contains("average_cost") && !f["average_cost"].is_null()) {
          fr.average_cost = f["average_cost"].get<double>();
        }
        fr.size = f.value("size", std::size_t{0});
        fr.runtime_seconds = f.value("runtime_seconds", 0.0);
        r.folds.push_back(fr);
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed evaluation record: ") + e.what());
  }
  if (!(r.eff_mean >= 0.0 && r.eff_mean <= 100.0)) {
    throw DataError("eff_mean outside [0, 100] in " + record_label(r));
  }
  if (r.eff_std < 0.0 || r.cost_std < 0.0 || (r.cost_mean && *r.cost_mean < 0.0)) {
    throw DataError("negative statistic in " + record_label(r));
  }
  return r;
}

std::vector<EvalRecord> records_from_json(const nlohmann::json& j) {
  std::vector<EvalRecord> out;
  if (j.is_array()) {
    for (const auto& r : j) out.push_back(record_from_json(r));
  } else if (j.is_object() && j.contains("records")) {
    return records_from_json(j["records"]);
  } else {
    out.push_back(record_from_json(j));
  }
  return out;
}

const MethodTally* DominanceReport::method(const std::string& name) const {
  for (const auto& m : methods) {
    if (m.method == name) return &m;
  }
  return nullptr;
}

const PairTally* DominanceReport::pair(const std::string& m,
                                       const std::string& other) const {
  for (const auto& p : pairs) {
    if (p.method == m && p.other == other) return &p;
  }
  return nullptr;
}

nlohmann::json DominanceReport::to_json() const {
  nlohmann::json matrix_j = nlohmann::json::array();
  for (const auto& e : matrix) {
    matrix_j.push_back({{"dataset", e.dataset},
                        {"model", e.model},
                        {"s", e.s},
                        {"dominator", e.dominator},
                        {"dominated", e.dominated}});
  }
  nlohmann::json pairs_j = nlohmann::json::array();
  for (const auto& p : pairs) {
    pairs_j.push_back({{"method", p.method},
                       {"other", p.other},
                       {"comparisons", p.comparisons},
                       {"dominates", p.dominates},
                       {"dominated_by", p.dominated_by}});
  }
  nlohmann::json methods_j = nlohmann::json::array();
  for (const auto& m : methods) {
    methods_j.push_back({{"method", m.method},
                         {"comparisons", m.comparisons},
                         {"dominates", m.dominates},
                         {"dominated_by", m.dominated_by}});
  }
  nlohmann::json records_j = nlohmann::json::array();
  for (std::size_t i = 0; i < records.size(); ++i) {
    nlohmann::json r = record_to_json(records[i]);
    r["practical"] = flags[i].practical;
    r["robust"] = flags[i].robust;
    r["eff_robust"] = flags[i].eff_robust;
    r["cost_robust"] = flags[i].cost_robust;
    records_j.push_back(r);
  }
  return {{"matrix", matrix_j},
          {"pairs", pairs_j},
          {"methods", methods_j},
          {"records", records_j}};
}

DominanceReport compare_records(std::vector<EvalRecord> records,
                                DominanceMode mode) {
  using Key = std::pair<std::string, std::string>;
  std::map<Key, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < records.size(); ++i) {
    groups[{records[i].dataset, records[i].model}].push_back(i);
  }
  std::vector<std::string> problems;
  for (const auto& [key, idx] : groups) {
    std::set<std::string> methods;
    for (std::size_t i : idx) {
      if (records[i].s != records[idx.front()].s) {
        problems.push_back(record_label(records[i]) + " disagrees on s with " +
                           record_label(records[idx.front()]));
      }
      if (!methods.insert(records[i].method).second) {
        problems.push_back("duplicate " + record_label(records[i]));
      }
    }
  }
  if (!problems.empty()) {
    std::string msg = "key mismatch:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw Error(msg);
  }

  DominanceReport report;
  std::map<std::pair<std::string, std::string>, PairTally> pairs;
  std::map<std::string, MethodTally> methods;
  for (const auto& r : records) methods[r.method].method = r.method;
  for (const auto& [key, idx] : groups) {
    for (std::size_t a : idx) {
      for (std::size_t b : idx) {
        if (a == b) continue;
        const auto& ra = records[a];
        const auto& rb = records[b];
        auto& tally = pairs[{ra.method, rb.method}];
        tally.method = ra.method;
        tally.other = rb.method;
        ++tally.comparisons;
        ++methods[ra.method].comparisons;
        if (pareto_dominates(ra, rb, mode)) {
          ++tally.dominates;
          ++methods[ra.method].dominates;
          report.matrix.push_back({ra.dataset, ra.model, ra.s, ra.method, rb.method});
        }
        if (pareto_dominates(rb, ra, mode)) {
          ++tally.dominated_by;
          ++methods[ra.method].dominated_by;
        }
      }
    }
  }
  for (auto& [k, p] : pairs) report.pairs.push_back(p);
  for (auto& [k, m] : methods) report.methods.push_back(m);
  for (const auto& r : records) report.flags.push_back(flag_record(r));
  report.records = std::move(records);
  return report;
}

}  // namespace gce

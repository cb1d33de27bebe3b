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

#include "gce/fixtures.hpp"

#include "gce/error.hpp"

namespace gce {

namespace {

struct Row {
  const char* method;
  const char* dataset;
  const char* model;
  double eff_mean;
  double eff_std;
  double cost_mean;
  double cost_std;
};

// Six methods on five datasets and three models at s = 4. CET has no result
// on Adult (timed out), so those three cells are absent.
const Row kResultsS4[] = {
    {"Fast AReS", "Adult", "DNN", 12.39, 1.06, 1.0, 0.0},
    {"Fast AReS", "Adult", "LR", 11.74, 2.4, 1.0, 0.0},
    {"Fast AReS", "Adult", "XGB", 6.13, 0.42, 1.0, 0.0},
    {"Group-CF", "Adult", "DNN", 100.0, 0.0, 10.08, 0.03},
    {"Group-CF", "Adult", "LR", 100.0, 0.0, 1.71, 0.39},
    {"Group-CF", "Adult", "XGB", 96.8, 1.72, 1.41, 0.54},
    {"GLOBE-CE", "Adult", "DNN", 99.92, 0.0, 3.34, 0.29},
    {"GLOBE-CE", "Adult", "LR", 99.92, 0.0, 2.34, 0.31},
    {"GLOBE-CE", "Adult", "XGB", 82.88, 12.13, 22.8, 7.87},
    {"dGLOBE-CE", "Adult", "DNN", 99.92, 0.0, 10.89, 1.37},
    {"dGLOBE-CE", "Adult", "LR", 99.92, 0.0, 5.91, 0.93},
    {"dGLOBE-CE", "Adult", "XGB", 93.76, 1.98, 64.76, 1.29},
    {"GLANCE", "Adult", "DNN", 100.0, 0.0, 4.6, 0.73},
    {"GLANCE", "Adult", "LR", 100.0, 0.0, 1.04, 0.07},
    {"GLANCE", "Adult", "XGB", 99.85, 0.12, 4.9, 3.41},
    {"Fast AReS", "COMPAS", "DNN", 55.0, 0.86, 1.21, 0.09},
    {"Fast AReS", "COMPAS", "LR", 62.5, 1.82, 1.24, 0.14},
    {"Fast AReS", "COMPAS", "XGB", 59.83, 3.12, 1.1, 0.05},
    {"CET", "COMPAS", "DNN", 63.62, 10.35, 0.96, 0.24},
    {"CET", "COMPAS", "LR", 73.18, 4.34, 1.24, 0.15},
    {"CET", "COMPAS", "XGB", 58.4, 9.3, 1.06, 0.24},
    {"Group-CF", "COMPAS", "DNN", 100.0, 0.0, 4.48, 2.53},
    {"Group-CF", "COMPAS", "LR", 100.0, 0.0, 3.97, 2.38},
    {"Group-CF", "COMPAS", "XGB", 100.0, 0.0, 4.06, 2.10},
    {"GLOBE-CE", "COMPAS", "DNN", 100.0, 0.0, 2.82, 1.06},
    {"GLOBE-CE", "COMPAS", "LR", 95.74, 8.52, 2.91, 0.57},
    {"GLOBE-CE", "COMPAS", "XGB", 87.17, 11.09, 4.73, 0.92},
    {"dGLOBE-CE", "COMPAS", "DNN", 100.0, 0.0, 7.96, 3.91},
    {"dGLOBE-CE", "COMPAS", "LR", 100.0, 0.0, 6.71, 0.23},
    {"dGLOBE-CE", "COMPAS", "XGB", 99.84, 0.31, 12.46, 3.42},
    {"GLANCE", "COMPAS", "DNN", 100.0, 0.0, 2.34, 0.43},
    {"GLANCE", "COMPAS", "LR", 100.0, 0.0, 2.33, 0.38},
    {"GLANCE", "COMPAS", "XGB", 99.51, 0.46, 2.96, 0.82},
    {"Fast AReS", "Default Credit", "DNN", 18.88, 2.16, 1.0, 0.0},
    {"Fast AReS", "Default Credit", "LR", 10.85, 5.45, 1.07, 0.13},
    {"Fast AReS", "Default Credit", "XGB", 31.86, 5.12, 1.05, 0.04},
    {"CET", "Default Credit", "DNN", 98.87, 0.62, 6.32, 2.28},
    {"CET", "Default Credit", "LR", 100.0, 0.0, 3.79, 1.31},
    {"CET", "Default Credit", "XGB", 86.29, 9.94, 4.5, 2.64},
    {"Group-CF", "Default Credit", "DNN", 79.6, 20.79, 1.53, 0.62},
    {"Group-CF", "Default Credit", "LR", 95.4, 9.2, 1.94, 1.2},
    {"Group-CF", "Default Credit", "XGB", 95.2, 1.6, 1.41, 0.64},
    {"GLOBE-CE", "Default Credit", "DNN", 81.19, 35.33, 3.76, 1.35},
    {"GLOBE-CE", "Default Credit", "LR", 99.94, 0.07, 2.91, 1.55},
    {"GLOBE-CE", "Default Credit", "XGB", 83.69, 6.72, 17.211, 2.22},
    {"dGLOBE-CE", "Default Credit", "DNN", 87.38, 18.69, 5.96, 4.14},
    {"dGLOBE-CE", "Default Credit", "LR", 99.94, 0.07, 10.38, 7.76},
    {"dGLOBE-CE", "Default Credit", "XGB", 97.47, 0.82, 42.58, 3.57},
    {"GLANCE", "Default Credit", "DNN", 100.0, 0.0, 1.20, 0.40},
    {"GLANCE", "Default Credit", "LR", 100.0, 0.0, 1.05, 0.11},
    {"GLANCE", "Default Credit", "XGB", 98.13, 1.05, 3.68, 1.64},
    {"Fast AReS", "German Credit", "DNN", 52.39, 1.63, 1.0, 0.0},
    {"Fast AReS", "German Credit", "LR", 75.27, 2.96, 1.0, 0.0},
    {"Fast AReS", "German Credit", "XGB", 51.27, 1.57, 1.0, 0.0},
    {"CET", "German Credit", "DNN", 97.3, 2.46, 1.58, 0.54},
    {"CET", "German Credit", "LR", 96.5, 2.85, 2.42, 0.24},
    {"CET", "German Credit", "XGB", 100.0, 0.0, 2.73, 0.49},
    {"Group-CF", "German Credit", "DNN", 97.8, 4.4, 1.85, 0.13},
    {"Group-CF", "German Credit", "LR", 97.6, 2.94, 9.34, 3.85},
    {"Group-CF", "German Credit", "XGB", 100.0, 0.0, 5.78, 4.11},
    {"GLOBE-CE", "German Credit", "DNN", 95.12, 2.04, 2.11, 0.18},
    {"GLOBE-CE", "German Credit", "LR", 57.09, 20.03, 2.27, 0.33},
    {"GLOBE-CE", "German Credit", "XGB", 77.05, 11.26, 2.52, 0.33},
    {"dGLOBE-CE", "German Credit", "DNN", 97.36, 0.82, 2.49, 0.27},
    {"dGLOBE-CE", "German Credit", "LR", 69.89, 15.35, 2.47, 0.23},
    {"dGLOBE-CE", "German Credit", "XGB", 86.96, 9.79, 2.66, 0.77},
    {"GLANCE", "German Credit", "DNN", 95.31, 3.15, 1.25, 0.33},
    {"GLANCE", "German Credit", "LR", 100.0, 0.0, 1.21, 0.06},
    {"GLANCE", "German Credit", "XGB", 100.0, 0.0, 1.06, 0.03},
    {"Fast AReS", "HELOC", "DNN", 12.19, 0.58, 1.03, 0.05},
    {"Fast AReS", "HELOC", "LR", 9.23, 1.24, 1.12, 0.10},
    {"Fast AReS", "HELOC", "XGB", 8.49, 1.32, 1.16, 0.13},
    {"CET", "HELOC", "DNN", 86.78, 10.62, 8.67, 3.25},
    {"CET", "HELOC", "LR", 100.0, 0.0, 3.57, 1.48},
    {"CET", "HELOC", "XGB", 86.78, 6.70, 12.51, 2.75},
    {"Group-CF", "HELOC", "DNN", 80.4, 10.17, 3.09, 0.91},
    {"Group-CF", "HELOC", "LR", 90.6, 3.93, 2.40, 1.38},
    {"Group-CF", "HELOC", "XGB", 78.4, 5.82, 5.63, 1.93},
    {"GLOBE-CE", "HELOC", "DNN", 47.18, 45.02, 20.44, 24.18},
    {"GLOBE-CE", "HELOC", "LR", 99.9, 0.0, 0.66, 0.10},
    {"GLOBE-CE", "HELOC", "XGB", 28.33, 5.14, 32.73, 0.48},
    {"dGLOBE-CE", "HELOC", "DNN", 99.96, 0.05, 11.07, 8.6},
    {"dGLOBE-CE", "HELOC", "LR", 99.9, 0.0, 1.63, 0.35},
    {"dGLOBE-CE", "HELOC", "XGB", 77.64, 11.51, 128.0, 0.0},
    {"GLANCE", "HELOC", "DNN", 99.94, 0.05, 11.24, 1.37},
    {"GLANCE", "HELOC", "LR", 100.0, 0.0, 1.55, 0.54},
    {"GLANCE", "HELOC", "XGB", 98.94, 0.66, 19.99, 1.91},
};

constexpr const char* kFixtureName = "table1-s4";

std::size_t count_if_method(const DominanceReport& report, const std::string& method,
                            bool (*pred)(const RecordFlags&)) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < report.records.size(); ++i) {
    if (report.records[i].method == method && pred(report.flags[i])) ++n;
  }
  return n;
}

std::size_t count_method(const DominanceReport& report, const std::string& method) {
  std::size_t n = 0;
  for (const auto& r : report.records) n += r.method == method;
  return n;
}

FixtureCheck check_count(std::string name, std::size_t expected, std::size_t actual) {
  return {std::move(name), std::to_string(expected), std::to_string(actual),
          expected == actual};
}

}  // namespace

std::vector<std::string> fixture_names() { return {kFixtureName}; }

std::vector<EvalRecord> fixture_records(const std::string& name) {
  if (name.empty()) throw ConfigError("usage: replay-fixture <name>");
  if (name != kFixtureName) throw ConfigError("unknown fixture '" + name + "'");
  std::vector<EvalRecord> out;
  for (const Row& row : kResultsS4) {
    EvalRecord r;
    r.method = row.method;
    r.dataset = row.dataset;
    r.model = row.model;
    r.s = 4;
    r.eff_mean = row.eff_mean;
    r.eff_std = row.eff_std;
    r.cost_mean = row.cost_mean;
    r.cost_std = row.cost_std;
    r.size_actual = 4.0;
    out.push_back(std::move(r));
  }
  return out;
}

bool FixtureReport::ok() const {
  for (const auto& c : checks) {
    if (!c.ok) return false;
  }
  return true;
}

nlohmann::json FixtureReport::to_json() const {
  nlohmann::json checks_j = nlohmann::json::array();
  for (const auto& c : checks) {
    checks_j.push_back({{"check", c.name},
                        {"expected", c.expected},
                        {"actual", c.actual},
                        {"ok", c.ok}});
  }
  return {{"fixture", fixture},
          {"ok", ok()},
          {"checks", checks_j},
          {"dominance", dominance.to_json()}};
}

FixtureReport replay_fixture(const std::string& name) {
  FixtureReport report;
  report.fixture = name;
  report.dominance = compare_records(fixture_records(name));
  const auto& d = report.dominance;

  const MethodTally* glance = d.method("GLANCE");
  if (!glance) throw Error("fixture lacks GLANCE records");
  report.checks.push_back(check_count("GLANCE comparisons", 72, glance->comparisons));
  report.checks.push_back(check_count("GLANCE dominates", 41, glance->dominates));
  report.checks.push_back(check_count("GLANCE dominated", 1, glance->dominated_by));

  std::string dominators;
  for (const auto& e : d.matrix) {
    if (e.dominated != "GLANCE") continue;
    if (!dominators.empty()) dominators += "; ";
    dominators += e.dominator + " on " + e.dataset + "/" + e.model;
  }
  const std::string expected_dominator = "dGLOBE-CE on HELOC/DNN";
  report.checks.push_back({"GLANCE dominated by", expected_dominator, dominators,
                           dominators == expected_dominator});

  report.checks.push_back(check_count("Fast AReS rows", 15, count_method(d, "Fast AReS")));
  report.checks.push_back(check_count(
      "Fast AReS impractical", 15,
      count_if_method(d, "Fast AReS", [](const RecordFlags& f) { return !f.practical; })));
  report.checks.push_back(check_count(
      "GLANCE practical", 15,
      count_if_method(d, "GLANCE", [](const RecordFlags& f) { return f.practical; })));
  report.checks.push_back(check_count(
      "GLANCE eff-robust", 15,
      count_if_method(d, "GLANCE", [](const RecordFlags& f) { return f.eff_robust; })));
  report.checks.push_back(check_count(
      "GLANCE cost-robust", 14,
      count_if_method(d, "GLANCE", [](const RecordFlags& f) { return f.cost_robust; })));
  return report;
}

}  // namespace gce

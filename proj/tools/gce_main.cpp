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

// gce: command-line front end for global counterfactual explanations.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gce/error.hpp"
#include "gce/fixtures.hpp"
#include "gce/metrics.hpp"
#include "gce/oracles.hpp"
#include "gce/run.hpp"

namespace {

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw gce::ConfigError("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw gce::DataError("malformed JSON in " + path + ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& body) {
  if (path.empty() || path == "-") {
    std::cout << body;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw gce::Error("cannot write " + path);
  out << body;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

int cmd_run(const std::string& config_path, const std::vector<std::string>& sets,
            int jobs, const std::string& out_dir) {
  std::vector<std::string> overrides = sets;
  if (jobs > 0) overrides.push_back("jobs=" + std::to_string(jobs));
  if (!out_dir.empty()) overrides.push_back("output.dir=\"" + out_dir + "\"");
  const gce::RunConfig config = gce::RunConfig::load(config_path, overrides);
  const gce::RunResult result = gce::execute_run(config);
  gce::write_run_outputs(config, result);
  const auto& r = result.record;
  std::cout << r.method << " " << r.dataset << "/" << r.model << " s=" << r.s
            << ": eff " << fmt(r.eff_mean) << " +- " << fmt(r.eff_std) << ", cost "
            << (r.cost_mean ? fmt(*r.cost_mean) : std::string("-")) << " +- "
            << fmt(r.cost_std) << ", size " << fmt(r.size_actual) << "\n";
  for (const auto& f : result.folds) {
    for (const auto& w : f.solution.warnings) {
      std::cerr << "fold " << f.fold << ": " << w << "\n";
    }
  }
  std::cout << "wrote " << config.output_dir.string() << "\n";
  for (const auto& g : result.gate_failures) std::cerr << "gate failed: " << g << "\n";
  return result.gates_passed ? 0 : 3;
}

int cmd_compare(const std::vector<std::string>& paths, bool per_fold,
                const std::string& out) {
  std::vector<gce::EvalRecord> records;
  for (const auto& p : paths) {
    auto more = gce::records_from_json(read_json(p));
    records.insert(records.end(), more.begin(), more.end());
  }
  const auto report = gce::compare_records(
      std::move(records),
      per_fold ? gce::DominanceMode::kPerFold : gce::DominanceMode::kMeans);
  for (const auto& m : report.methods) {
    std::cerr << m.method << ": dominates " << m.dominates << "/" << m.comparisons
              << ", dominated " << m.dominated_by << "\n";
  }
  write_text(out, report.to_json().dump(2) + "\n");
  return 0;
}

int cmd_replay(const std::string& name, const std::string& out) {
  const auto report = gce::replay_fixture(name);
  for (const auto& c : report.checks) {
    std::cerr << (c.ok ? "ok   " : "DIFF ") << c.name << ": expected " << c.expected
              << ", got " << c.actual << "\n";
  }
  if (!out.empty()) write_text(out, report.to_json().dump(2) + "\n");
  return report.ok() ? 0 : 4;
}

int cmd_oracle(std::size_t count, std::uint64_t seed, const std::string& out) {
  const auto report = gce::run_oracle_suite(count, seed);
  std::size_t bad = 0;
  for (const auto& c : report.cases) bad += !(c.glance_ok && c.greedy_ok);
  std::cerr << report.cases.size() << " instances, " << bad << " violations, "
            << fmt(report.seconds) << " s\n";
  if (!out.empty()) write_text(out, report.to_json().dump(2) + "\n");
  return report.all_ok() ? 0 : 4;
}

int cmd_model_train(const std::string& config_path, const std::string& out) {
  const gce::RunConfig config = gce::RunConfig::load(config_path);
  const auto data = gce::ingest_csv(config.dataset_path, config.schema).dataset;
  const auto model = gce::train_model(config.model, data);
  std::cerr << model->descriptor() << ", training accuracy "
            << fmt(100.0 * gce::accuracy(*model, data)) << "%\n";
  write_text(out, gce::save_model(*model, data.schema).dump(2) + "\n");
  return 0;
}

int cmd_model_load(const std::string& config_path, const std::string& model_path) {
  const gce::RunConfig config = gce::RunConfig::load(config_path);
  const auto data = gce::ingest_csv(config.dataset_path, config.schema).dataset;
  const auto model = gce::load_model(read_json(model_path), data.schema);
  const auto affected = gce::affected_set(*model, data);
  std::cout << model->descriptor() << "\naccuracy " << fmt(100.0 * gce::accuracy(*model, data))
            << "%, affected " << affected.size() << "/" << data.size() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Global counterfactual explanations for tabular classifiers"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> sets;
  int jobs = 0;
  std::string out_dir;
  auto* run = app.add_subcommand("run", "Cross-validated run from a config file");
  run->add_option("config", config_path, "Run config (JSON)")->required();
  run->add_option("--set", sets, "Override a config key, e.g. glance.s=8");
  run->add_option("--jobs", jobs, "Folds to run concurrently");
  run->add_option("--out", out_dir, "Output directory");

  std::vector<std::string> record_paths;
  bool per_fold = false;
  std::string out_file;
  auto* compare = app.add_subcommand("compare", "Pareto dominance over result records");
  compare->add_option("records", record_paths, "Record files (JSON)")->required();
  compare->add_flag("--per-fold", per_fold, "Compare fold by fold instead of means");
  compare->add_option("--out", out_file, "Report path (default stdout)");

  std::string fixture;
  auto* replay = app.add_subcommand("replay-fixture", "Replay a bundled results table");
  replay->add_option("name", fixture, "Fixture name (table1-s4)");
  replay->add_option("--out", out_file, "Report path");

  std::size_t count = 50;
  std::uint64_t seed = 13;
  auto* oracle = app.add_subcommand("oracle-check", "Check the engine against exact oracles");
  oracle->add_option("--count", count, "Random instances");
  oracle->add_option("--seed", seed, "Seed");
  oracle->add_option("--out", out_file, "Report path");

  std::string model_path;
  auto* model = app.add_subcommand("model", "Train, save or load a classifier");
  model->require_subcommand(1);
  auto* train = model->add_subcommand("train", "Train on the full dataset and save");
  train->add_option("config", config_path, "Run config (JSON)")->required();
  train->add_option("--out", out_file, "Model path (default stdout)");
  auto* load = model->add_subcommand("load", "Load a saved model and score the dataset");
  load->add_option("config", config_path, "Run config (JSON)")->required();
  load->add_option("model", model_path, "Model file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(config_path, sets, jobs, out_dir);
    if (*compare) return cmd_compare(record_paths, per_fold, out_file);
    if (*replay) {
      if (fixture.empty()) {
        std::cerr << "usage: gce replay-fixture <name>; available:";
        for (const auto& n : gce::fixture_names()) std::cerr << " " << n;
        std::cerr << "\n";
        return 2;
      }
      return cmd_replay(fixture, out_file);
    }
    if (*oracle) return cmd_oracle(count, seed, out_file);
    if (*train) return cmd_model_train(config_path, out_file);
    if (*load) return cmd_model_load(config_path, model_path);
  } catch (const gce::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

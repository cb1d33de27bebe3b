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

#include "gce/run.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <future>
#include <sstream>

#include "gce/error.hpp"
#include "gce/rng.hpp"

namespace gce {

namespace fs = std::filesystem;

std::string ModelConfig::label() const {
  return type == "knn" ? "KNN" : "LR";
}

void apply_overrides(nlohmann::json& j, const std::vector<std::string>& overrides) {
  for (const auto& o : overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ConfigError("override '" + o + "' must look like key.path=value");
    }
    const std::string path = o.substr(0, eq);
    const std::string text = o.substr(eq + 1);
    nlohmann::json value;
    try {
      value = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception&) {
      value = text;
    }
    nlohmann::json* node = &j;
    std::size_t start = 0;
    while (true) {
      const auto dot = path.find('.', start);
      const std::string key = path.substr(start, dot - start);
      if (key.empty()) throw ConfigError("empty key in override '" + o + "'");
      if (!node->is_object()) {
        throw ConfigError("override '" + o + "' descends into a non-object");
      }
      if (dot == std::string::npos) {
        (*node)[key] = value;
        break;
      }
      node = &(*node)[key];
      if (node->is_null()) *node = nlohmann::json::object();
      start = dot + 1;
    }
  }
}

namespace {

nlohmann::json read_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("malformed JSON in " + path.string() + ": " + e.what());
  }
}

fs::path resolve(const fs::path& p, const fs::path& base) {
  return p.is_absolute() ? p : base / p;
}

// Collects messages so that every config problem is reported at once.
class Problems {
 public:
  template <typename F>
  void attempt(const std::string& where, F&& f) {
    try {
      f();
    } catch (const nlohmann::json::exception& e) {
      list_.push_back(where + ": " + e.what());
    } catch (const std::exception& e) {
      list_.push_back(where + ": " + e.what());
    }
  }
  void add(std::string msg) { list_.push_back(std::move(msg)); }
  void raise() const {
    if (list_.empty()) return;
    std::string msg = "invalid run config:";
    for (const auto& p : list_) msg += "\n  " + p;
    throw ConfigError(msg);
  }

 private:
  std::vector<std::string> list_;
};

}  // namespace

RunConfig RunConfig::from_json(const nlohmann::json& j, const fs::path& base_dir) {
  RunConfig c;
  c.source = j;
  Problems problems;
  if (!j.is_object()) throw ConfigError("run config must be a JSON object");

  problems.attempt("name", [&] { c.name = j.value("name", std::string("run")); });
  problems.attempt("seed", [&] { c.seed = j.value("seed", std::uint64_t{13}); });
  problems.attempt("folds", [&] {
    c.folds = j.value("folds", std::size_t{5});
    if (c.folds < 2) throw ConfigError("folds must be >= 2");
  });
  problems.attempt("jobs", [&] {
    c.jobs = j.value("jobs", std::size_t{1});
    if (c.jobs < 1) throw ConfigError("jobs must be >= 1");
  });

  problems.attempt("dataset", [&] {
    const auto& d = j.at("dataset");
    c.dataset_path = resolve(d.at("path").get<std::string>(), base_dir);
    c.dataset_name = d.value("name", c.dataset_path.stem().string());
    if (!fs::exists(c.dataset_path)) {
      throw ConfigError("dataset file " + c.dataset_path.string() + " not found");
    }
    const auto& s = d.at("schema");
    if (s.is_string()) {
      c.schema = SchemaConfig::from_json(
          read_json_file(resolve(s.get<std::string>(), base_dir)));
    } else {
      c.schema = SchemaConfig::from_json(s);
    }
  });

  problems.attempt("model", [&] {
    const nlohmann::json m = j.value("model", nlohmann::json::object());
    c.model.type = m.value("type", std::string("logistic"));
    if (c.model.type != "logistic" && c.model.type != "knn") {
      throw ConfigError("model.type must be 'logistic' or 'knn'");
    }
    c.model.logistic.learning_rate = m.value("learning_rate", 0.5);
    c.model.logistic.iterations = m.value("iterations", 1000);
    c.model.logistic.l2 = m.value("l2", 1e-3);
    c.model.logistic.seed = m.value("seed", c.seed);
    c.model.knn_k = m.value("k", std::size_t{5});
  });

  problems.attempt("glance", [&] {
    const nlohmann::json g = j.value("glance", nlohmann::json::object());
    c.glance.s = g.value("s", std::size_t{4});
    c.glance.k = g.value("k", std::size_t{100});
    c.glance.m = g.value("m", std::size_t{10});
    c.glance.seed = g.value("seed", c.seed);
    c.glance.selection =
        SelectionStrategy::parse(g.value("selection", std::string("max_effectiveness")));
    const std::string scope = g.value("scope", std::string("cluster"));
    if (scope == "cluster") {
      c.glance.scope = SelectionScope::kCluster;
    } else if (scope == "global") {
      c.glance.scope = SelectionScope::kGlobal;
    } else {
      throw ConfigError("glance.scope must be 'cluster' or 'global'");
    }
    const std::string exec = g.value("execution", std::string("parallel"));
    if (exec != "parallel" && exec != "serial") {
      throw ConfigError("glance.execution must be 'parallel' or 'serial'");
    }
    c.glance.exec = exec == "serial" ? Execution::kSerial : Execution::kParallel;
    const nlohmann::json gen = g.value("generator", nlohmann::json::object());
    c.glance.generator.kind =
        parse_generator_kind(gen.value("kind", std::string("random_sampling")));
    c.glance.generator.k_f = gen.value("k_f", std::size_t{3});
    c.glance.generator.k_c = gen.value("k_c", std::size_t{10});
    c.glance.generator.line_samples = gen.value("line_samples", std::size_t{20});
    c.glance.generator.proposals_per_candidate =
        gen.value("proposals_per_candidate", std::size_t{50});
    c.glance.generator.m = c.glance.m;
    c.glance.generator.seed = c.glance.seed;
    c.glance.validate();
  });

  problems.attempt("output", [&] {
    const nlohmann::json o = j.value("output", nlohmann::json::object());
    const fs::path dir = o.value("dir", std::string("out/") + c.name);
    fs::path root = base_dir;
    if (const char* env = std::getenv("GCE_OUTPUT_ROOT"); env && *env) root = env;
    c.output_dir = resolve(dir, root);
    c.curve_steps = o.value("curve_steps", std::size_t{50});
    if (c.curve_steps < 1) throw ConfigError("output.curve_steps must be >= 1");
  });

  problems.attempt("gates", [&] {
    const nlohmann::json g = j.value("gates", nlohmann::json::object());
    if (g.contains("min_eff")) c.gates.min_eff = g["min_eff"].get<double>();
    if (g.contains("max_cost")) c.gates.max_cost = g["max_cost"].get<double>();
  });

  problems.raise();
  return c;
}

RunConfig RunConfig::load(const fs::path& path,
                          const std::vector<std::string>& overrides) {
  nlohmann::json j = read_json_file(path);
  apply_overrides(j, overrides);
  return from_json(j, path.parent_path().empty() ? fs::path(".") : path.parent_path());
}

std::string RunConfig::digest() const {
  // Resolved paths and the output location do not affect results.
  nlohmann::json j = source;
  j.erase("output");
  j.erase("jobs");
  if (j.contains("dataset")) j["dataset"].erase("path");
  j["_schema"] = schema.to_json();
  return fnv1a_hex(j.dump());
}

std::unique_ptr<Classifier> train_model(const ModelConfig& config,
                                        const Dataset& train) {
  if (config.type == "knn") {
    return std::make_unique<KnnModel>(train_knn(train, config.knn_k));
  }
  return std::make_unique<LogisticModel>(train_logistic(train, config.logistic));
}

namespace {

using Clock = std::chrono::steady_clock;

FoldOutcome run_fold(const RunConfig& config, const Fold& fold, std::size_t index) {
  const auto start = Clock::now();
  FoldOutcome out;
  out.fold = index;
  out.schema = fold.train.schema;
  out.train_rows = fold.train.size();
  out.test_rows = fold.test.size();
  const auto model = train_model(config.model, fold.train);
  out.model = save_model(*model, fold.train.schema);
  out.test_accuracy = accuracy(*model, fold.test);
  const std::vector<Instance> xa = affected_set(*model, fold.test);
  out.affected = xa.size();
  if (xa.empty()) {
    throw Error("no test instance is predicted negative");
  }
  GlanceConfig g = config.glance;
  g.seed = derive_seed(config.glance.seed, index);
  out.solution = glance(xa, *model, fold.train, g);
  out.coverage =
      evaluate_coverage(out.solution.actions, xa, *model, fold.train.schema, g.exec);
  out.result.effectiveness = out.coverage.effectiveness;
  out.result.average_cost = out.coverage.average_cost;
  out.result.size = out.solution.actions.size();
  out.result.runtime_seconds =
      std::chrono::duration<double>(Clock::now() - start).count();
  return out;
}

nlohmann::json optional_json(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

nlohmann::json deterministic_record(const EvalRecord& r) {
  nlohmann::json j = record_to_json(r);
  j.erase("runtime_seconds");
  if (j.contains("folds")) {
    for (auto& f : j["folds"]) f.erase("runtime_seconds");
  }
  return j;
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

RunResult execute_run(const RunConfig& config) {
  const std::string started = utc_timestamp();
  const auto start = Clock::now();
  const IngestResult ingest = ingest_csv(config.dataset_path, config.schema);
  const Dataset& data = ingest.dataset;
  if (config.folds > data.size()) {
    throw ConfigError("folds exceed the number of rows");
  }
  const std::vector<Fold> folds = split_kfold(data, config.folds, config.seed);

  RunResult result;
  result.folds.resize(folds.size());
  std::vector<std::future<FoldOutcome>> pending;
  std::size_t next_collect = 0;
  auto collect = [&](std::size_t i) {
    try {
      result.folds[i] = pending[i].get();
    } catch (const std::exception& e) {
      throw Error("fold " + std::to_string(i) + " failed: " + e.what());
    }
  };
  for (std::size_t i = 0; i < folds.size(); ++i) {
    if (pending.size() - next_collect >= config.jobs) collect(next_collect++);
    pending.push_back(std::async(std::launch::async, [&config, &folds, i] {
      return run_fold(config, folds[i], i);
    }));
  }
  while (next_collect < pending.size()) collect(next_collect++);

  std::vector<FoldResult> per_fold;
  for (const auto& f : result.folds) per_fold.push_back(f.result);
  result.record = aggregate_folds(per_fold);
  result.record.method = "GLANCE";
  result.record.dataset = config.dataset_name;
  result.record.model = config.model.label();
  result.record.s = config.glance.s;
  result.flags = flag_record(result.record);

  // Pooled curve over all folds' affected instances.
  Coverage pooled;
  double max_cost = 0.0;
  for (const auto& f : result.folds) {
    for (const auto& rc : f.coverage.recourse) {
      pooled.recourse.push_back(rc);
      if (rc) max_cost = std::max(max_cost, *rc);
    }
  }
  result.curve = effectiveness_cost_curve(
      pooled, curve_grid(std::max(max_cost, 1.0), config.curve_steps));

  if (config.gates.min_eff && result.record.eff_mean < *config.gates.min_eff) {
    result.gate_failures.push_back("eff_mean " + format_double(result.record.eff_mean) +
                                   " < " + format_double(*config.gates.min_eff));
  }
  if (config.gates.max_cost &&
      !(result.record.cost_mean && *result.record.cost_mean <= *config.gates.max_cost)) {
    result.gate_failures.push_back(
        "cost_mean " +
        (result.record.cost_mean ? format_double(*result.record.cost_mean) : "absent") +
        " > " + format_double(*config.gates.max_cost));
  }
  result.gates_passed = result.gate_failures.empty();

  nlohmann::json folds_j = nlohmann::json::array();
  nlohmann::json timings_j = nlohmann::json::array();
  for (const auto& f : result.folds) {
    folds_j.push_back({{"fold", f.fold},
                       {"train_rows", f.train_rows},
                       {"test_rows", f.test_rows},
                       {"test_accuracy", f.test_accuracy},
                       {"affected", f.affected},
                       {"effectiveness", f.coverage.effectiveness},
                       {"average_cost", optional_json(f.coverage.average_cost)},
                       {"size", f.result.size},
                       {"solution", solution_to_json(f.solution, f.schema, false)}});
    timings_j.push_back({{"fold", f.fold},
                         {"seconds", f.result.runtime_seconds},
                         {"phases", f.solution.timings}});
  }
  const RecordFlags& fl = result.flags;
  result.report = {
      {"schema_version", kReportSchemaVersion},
      {"name", config.name},
      {"config_digest", config.digest()},
      {"dataset", fingerprint(data).to_json()},
      {"dropped_rows", ingest.dropped_rows},
      {"imputed_cells", ingest.imputed_cells},
      {"seeds",
       {{"split", config.seed},
        {"glance", config.glance.seed},
        {"model", config.model.logistic.seed}}},
      {"config", config.source},
      {"record", deterministic_record(result.record)},
      {"flags",
       {{"practical", fl.practical},
        {"robust", fl.robust},
        {"eff_robust", fl.eff_robust},
        {"cost_robust", fl.cost_robust}}},
      {"gates", {{"passed", result.gates_passed}, {"failures", result.gate_failures}}},
      {"folds", folds_j}};
  if (result.report["config"].contains("output")) {
    result.report["config"].erase("output");
  }
  result.report["config"].erase("jobs");
  result.manifest = {{"name", config.name},
                     {"config_digest", config.digest()},
                     {"started_utc", started},
                     {"finished_utc", utc_timestamp()},
                     {"total_seconds",
                      std::chrono::duration<double>(Clock::now() - start).count()},
                     {"jobs", config.jobs},
                     {"threads", omp::max_threads()},
                     {"dataset_path", config.dataset_path.string()},
                     {"folds", timings_j}};
  return result;
}

void write_run_outputs(const RunConfig& config, const RunResult& result) {
  fs::create_directories(config.output_dir / "models");
  auto write = [&](const fs::path& p, const std::string& body) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw Error("cannot write " + p.string());
    out << body;
  };
  write(config.output_dir / "report.json", result.report.dump(2) + "\n");
  write(config.output_dir / "curves.csv", curve_to_csv(result.curve));
  write(config.output_dir / "manifest.json", result.manifest.dump(2) + "\n");
  write(config.output_dir / "records.json",
        nlohmann::json::array({record_to_json(result.record)}).dump(2) + "\n");
  for (const auto& f : result.folds) {
    write(config.output_dir / "models" / ("fold_" + std::to_string(f.fold) + ".json"),
          f.model.dump(2) + "\n");
  }
}

}  // namespace gce

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

#include "gce/tabular.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

#include "gce/csv.hpp"
#include "gce/error.hpp"
#include "gce/rng.hpp"

namespace gce {

std::optional<std::size_t> FeatureSchema::category_index(
    std::string_view label) const {
  for (std::size_t i = 0; i < categories.size(); ++i) {
    if (categories[i] == label) return i;
  }
  return std::nullopt;
}

FeatureSchema FeatureSchema::numeric(std::string name, double min, double max) {
  FeatureSchema f;
  f.name = std::move(name);
  f.kind = FeatureKind::kNumeric;
  f.observed_min = min;
  f.observed_max = max;
  f.bin_width = (max - min) / kBinsPerRange;
  return f;
}

FeatureSchema FeatureSchema::categorical(std::string name,
                                         std::vector<std::string> categories) {
  FeatureSchema f;
  f.name = std::move(name);
  f.kind = FeatureKind::kCategorical;
  f.categories = std::move(categories);
  return f;
}

Schema::Schema(std::vector<FeatureSchema> features)
    : features_(std::move(features)) {
  std::set<std::string> names;
  offsets_.reserve(features_.size());
  for (const auto& f : features_) {
    if (!names.insert(f.name).second) {
      throw SchemaError("duplicate feature name '" + f.name + "'");
    }
    offsets_.push_back(encoded_dim_);
    if (f.is_numeric()) {
      if (!(f.bin_width > 0.0) || !std::isfinite(f.bin_width)) {
        throw SchemaError("numeric feature '" + f.name +
                          "' is constant or has a non-positive bin width");
      }
      ++numeric_count_;
      ++encoded_dim_;
    } else {
      if (f.categories.empty()) {
        throw SchemaError("categorical feature '" + f.name +
                          "' has no categories");
      }
      std::set<std::string> labels(f.categories.begin(), f.categories.end());
      if (labels.size() != f.categories.size()) {
        throw SchemaError("categorical feature '" + f.name +
                          "' has duplicate labels");
      }
      encoded_dim_ += f.categories.size();
    }
  }
}

std::optional<std::size_t> Schema::find(std::string_view name) const {
  for (std::size_t i = 0; i < features_.size(); ++i) {
    if (features_[i].name == name) return i;
  }
  return std::nullopt;
}

std::string Schema::digest() const {
  std::string text;
  for (const auto& f : features_) {
    text += f.name;
    text += '|';
    if (f.is_numeric()) {
      text += "num|" + format_double(f.observed_min) + "|" +
              format_double(f.observed_max);
    } else {
      text += "cat";
      for (const auto& c : f.categories) text += "|" + c;
    }
    text += '\n';
  }
  return fnv1a_hex(text);
}

bool Schema::operator==(const Schema& other) const {
  if (features_.size() != other.features_.size()) return false;
  for (std::size_t i = 0; i < features_.size(); ++i) {
    const auto& a = features_[i];
    const auto& b = other.features_[i];
    if (a.name != b.name || a.kind != b.kind) return false;
    if (a.is_numeric()) {
      if (a.observed_min != b.observed_min ||
          a.observed_max != b.observed_max || a.bin_width != b.bin_width) {
        return false;
      }
    } else if (a.categories != b.categories) {
      return false;
    }
  }
  return true;
}

void validate_instance(const Instance& x, const Schema& schema) {
  if (x.values.size() != schema.size()) {
    throw SchemaError("instance arity " + std::to_string(x.values.size()) +
                      " does not match schema arity " +
                      std::to_string(schema.size()));
  }
  for (std::size_t j = 0; j < schema.size(); ++j) {
    const auto& f = schema.feature(j);
    const double v = x.values[j];
    if (!std::isfinite(v)) {
      throw SchemaError("non-finite value for feature '" + f.name + "'");
    }
    if (!f.is_numeric()) {
      if (v < 0 || v != std::floor(v) ||
          v >= static_cast<double>(f.categories.size())) {
        throw SchemaError("invalid category index for feature '" + f.name +
                          "'");
      }
    }
  }
}

void validate_dataset(const Dataset& data) {
  if (data.rows.empty()) throw DataError("dataset has no rows");
  for (const auto& row : data.rows) validate_instance(row, data.schema);
  if (data.labeled()) {
    if (data.labels.size() != data.rows.size()) {
      throw DataError("label count does not match row count");
    }
    for (int y : data.labels) {
      if (y != kPositive && y != kNegative) {
        throw DataError("labels must be +1 or -1");
      }
    }
  }
}

void encode_into(const Instance& x, const Schema& schema,
                 std::span<double> out) {
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t j = 0; j < schema.size(); ++j) {
    const auto& f = schema.feature(j);
    const std::size_t off = schema.offset(j);
    if (f.is_numeric()) {
      out[off] = x.values[j] / f.bin_width;
    } else {
      out[off + x.category(j)] = 1.0;
    }
  }
}

EncodedPoint encode(const Instance& x, const Schema& schema) {
  EncodedPoint out(schema.encoded_dim());
  encode_into(x, schema, out);
  return out;
}

EncodedMatrix encode_all(std::span<const Instance> rows, const Schema& schema) {
  EncodedMatrix m;
  m.rows = rows.size();
  m.cols = schema.encoded_dim();
  m.data.assign(m.rows * m.cols, 0.0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    encode_into(rows[i], schema, m.row(i));
  }
  return m;
}

Schema recompute_ranges(const Schema& schema, std::span<const Instance> rows) {
  if (rows.empty()) throw DataError("cannot compute ranges from zero rows");
  std::vector<FeatureSchema> features = schema.features();
  for (std::size_t j = 0; j < features.size(); ++j) {
    auto& f = features[j];
    if (!f.is_numeric()) continue;
    double lo = rows[0].values[j];
    double hi = lo;
    for (const auto& r : rows) {
      lo = std::min(lo, r.values[j]);
      hi = std::max(hi, r.values[j]);
    }
    if (!(hi > lo)) {
      throw SchemaError("numeric feature '" + f.name +
                        "' is constant over the rows");
    }
    f = FeatureSchema::numeric(f.name, lo, hi);
  }
  return Schema(std::move(features));
}

namespace {

FeatureKind parse_kind(const std::string& s) {
  if (s == "numeric") return FeatureKind::kNumeric;
  if (s == "categorical") return FeatureKind::kCategorical;
  throw ConfigError("unknown feature kind '" + s + "'");
}

bool parse_number(const std::string& text, double& out) {
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
  while (end > begin && (end[-1] == ' ' || end[-1] == '\t')) --end;
  if (begin < end && *begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

}  // namespace

SchemaConfig SchemaConfig::from_json(const nlohmann::json& j) {
  SchemaConfig c;
  if (!j.contains("features") || !j["features"].is_array()) {
    throw ConfigError("schema config needs a 'features' array");
  }
  for (const auto& f : j["features"]) {
    FeatureConfig fc;
    fc.name = f.at("name").get<std::string>();
    fc.kind = parse_kind(f.value("kind", std::string("numeric")));
    if (f.contains("categories")) {
      fc.categories = f["categories"].get<std::vector<std::string>>();
    }
    c.features.push_back(std::move(fc));
  }
  const auto& label = j.at("label");
  c.label_column = label.at("column").get<std::string>();
  c.positive_label = label.at("positive").get<std::string>();
  c.negative_label = label.at("negative").get<std::string>();
  if (c.positive_label == c.negative_label) {
    throw ConfigError("positive and negative labels must differ");
  }
  const std::string unknown = j.value("unknown_category", std::string("reject"));
  if (unknown == "reject") {
    c.unknown_category = UnknownCategoryPolicy::kReject;
  } else if (unknown == "add") {
    c.unknown_category = UnknownCategoryPolicy::kAdd;
  } else {
    throw ConfigError("unknown_category must be 'reject' or 'add'");
  }
  const std::string missing = j.value("missing", std::string("drop"));
  if (missing == "drop") {
    c.missing = MissingPolicy::kDrop;
  } else if (missing == "median") {
    c.missing = MissingPolicy::kMedianImpute;
  } else {
    throw ConfigError("missing must be 'drop' or 'median'");
  }
  if (j.contains("missing_tokens")) {
    c.missing_tokens = j["missing_tokens"].get<std::vector<std::string>>();
  }
  return c;
}

nlohmann::json SchemaConfig::to_json() const {
  nlohmann::json j;
  j["features"] = nlohmann::json::array();
  for (const auto& f : features) {
    nlohmann::json fj = {{"name", f.name},
                         {"kind", f.kind == FeatureKind::kNumeric
                                      ? "numeric"
                                      : "categorical"}};
    if (!f.categories.empty()) fj["categories"] = f.categories;
    j["features"].push_back(std::move(fj));
  }
  j["label"] = {{"column", label_column},
                {"positive", positive_label},
                {"negative", negative_label}};
  j["unknown_category"] =
      unknown_category == UnknownCategoryPolicy::kReject ? "reject" : "add";
  j["missing"] = missing == MissingPolicy::kDrop ? "drop" : "median";
  j["missing_tokens"] = missing_tokens;
  return j;
}

IngestResult ingest_csv(const std::filesystem::path& path,
                        const SchemaConfig& config) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  return ingest_csv(in, config, path.string());
}

IngestResult ingest_csv(std::istream& in, const SchemaConfig& config,
                        const std::string& source_name) {
  if (config.features.empty()) throw ConfigError("schema has no features");
  csv::Reader reader(in);
  auto header = reader.next();
  if (!header) throw DataError(source_name + ": empty file");
  for (auto& h : *header) h = trim(h);

  auto column_of = [&](const std::string& name) -> std::size_t {
    auto it = std::find(header->begin(), header->end(), name);
    if (it == header->end()) {
      throw DataError(source_name + ": header has no column '" + name + "'");
    }
    return static_cast<std::size_t>(it - header->begin());
  };
  const std::size_t nf = config.features.size();
  std::vector<std::size_t> columns(nf);
  for (std::size_t j = 0; j < nf; ++j) {
    columns[j] = column_of(config.features[j].name);
  }
  const std::size_t label_col = column_of(config.label_column);

  auto is_missing = [&](const std::string& cell) {
    return std::find(config.missing_tokens.begin(), config.missing_tokens.end(),
                     cell) != config.missing_tokens.end();
  };

  // First pass: raw cells, labels and drops.
  struct RawRow {
    std::vector<std::string> cells;
    std::vector<bool> missing;
    int label;
    std::size_t line;
  };
  std::vector<RawRow> raw;
  std::size_t dropped = 0;
  while (auto record = reader.next()) {
    if (record->size() == 1 && trim((*record)[0]).empty()) continue;
    if (record->size() != header->size()) {
      throw DataError(source_name + ": line " + std::to_string(reader.line()) +
                      " has " + std::to_string(record->size()) +
                      " fields, expected " + std::to_string(header->size()));
    }
    const std::string label = trim((*record)[label_col]);
    if (is_missing(label)) {
      ++dropped;
      continue;
    }
    if (label != config.positive_label && label != config.negative_label) {
      throw DataError(source_name + ": non-binary label '" + label +
                      "' at line " + std::to_string(reader.line()));
    }
    RawRow row;
    row.cells.resize(nf);
    row.missing.resize(nf);
    row.label = label == config.positive_label ? kPositive : kNegative;
    row.line = reader.line();
    bool drop = false;
    for (std::size_t j = 0; j < nf; ++j) {
      row.cells[j] = trim((*record)[columns[j]]);
      row.missing[j] = is_missing(row.cells[j]);
      if (row.missing[j] &&
          (config.missing == MissingPolicy::kDrop ||
           config.features[j].kind == FeatureKind::kCategorical)) {
        drop = true;
      }
    }
    if (drop) {
      ++dropped;
      continue;
    }
    raw.push_back(std::move(row));
  }
  if (raw.empty()) throw DataError(source_name + ": no usable rows");

  // Categories.
  std::vector<std::vector<std::string>> categories(nf);
  for (std::size_t j = 0; j < nf; ++j) {
    const auto& fc = config.features[j];
    if (fc.kind != FeatureKind::kCategorical) continue;
    if (!fc.categories.empty()) {
      categories[j] = fc.categories;
      for (const auto& r : raw) {
        const auto& v = r.cells[j];
        if (std::find(categories[j].begin(), categories[j].end(), v) !=
            categories[j].end()) {
          continue;
        }
        if (config.unknown_category == UnknownCategoryPolicy::kReject) {
          throw DataError(source_name + ": unknown category '" + v +
                          "' for feature '" + fc.name + "' at line " +
                          std::to_string(r.line));
        }
        categories[j].push_back(v);
      }
    } else {
      std::set<std::string> seen;
      for (const auto& r : raw) seen.insert(r.cells[j]);
      categories[j].assign(seen.begin(), seen.end());
    }
  }

  // Numeric parse and optional median imputation.
  IngestResult result;
  result.dropped_rows = dropped;
  std::vector<Instance> rows(raw.size());
  std::vector<int> labels(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    rows[i].values.assign(nf, 0.0);
    rows[i].id = std::to_string(i);
    labels[i] = raw[i].label;
  }
  for (std::size_t j = 0; j < nf; ++j) {
    const auto& fc = config.features[j];
    if (fc.kind == FeatureKind::kCategorical) {
      std::unordered_map<std::string, std::size_t> index;
      for (std::size_t c = 0; c < categories[j].size(); ++c) {
        index.emplace(categories[j][c], c);
      }
      for (std::size_t i = 0; i < raw.size(); ++i) {
        rows[i].values[j] = static_cast<double>(index.at(raw[i].cells[j]));
      }
      continue;
    }
    std::vector<double> present;
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (raw[i].missing[j]) continue;
      double v = 0;
      if (!parse_number(raw[i].cells[j], v)) {
        throw DataError(source_name + ": line " + std::to_string(raw[i].line) +
                        ": feature '" + fc.name + "' value '" +
                        raw[i].cells[j] + "' is not a finite number");
      }
      rows[i].values[j] = v;
      present.push_back(v);
    }
    if (present.size() < raw.size()) {
      if (present.empty()) {
        throw DataError(source_name + ": feature '" + fc.name +
                        "' has no values to impute from");
      }
      std::sort(present.begin(), present.end());
      const std::size_t n = present.size();
      const double median = n % 2 == 1
                                ? present[n / 2]
                                : 0.5 * (present[n / 2 - 1] + present[n / 2]);
      for (std::size_t i = 0; i < raw.size(); ++i) {
        if (raw[i].missing[j]) {
          rows[i].values[j] = median;
          ++result.imputed_cells;
        }
      }
    }
  }

  std::vector<FeatureSchema> features;
  for (std::size_t j = 0; j < nf; ++j) {
    const auto& fc = config.features[j];
    if (fc.kind == FeatureKind::kCategorical) {
      features.push_back(FeatureSchema::categorical(fc.name, categories[j]));
    } else {
      features.push_back(FeatureSchema::numeric(fc.name, 0.0, 1.0));
    }
  }
  Schema prototype(std::move(features));
  result.dataset.schema = recompute_ranges(prototype, rows);
  result.dataset.rows = std::move(rows);
  result.dataset.labels = std::move(labels);
  return result;
}

std::vector<Fold> split_kfold(const Dataset& data, std::size_t folds,
                              std::uint64_t seed) {
  const std::size_t n = data.size();
  if (folds < 2) throw ConfigError("folds must be at least 2");
  if (folds > n) {
    throw ConfigError("folds (" + std::to_string(folds) +
                      ") exceed row count (" + std::to_string(n) + ")");
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  rng.shuffle(order);

  std::vector<Fold> out(folds);
  std::size_t start = 0;
  for (std::size_t f = 0; f < folds; ++f) {
    const std::size_t len = n / folds + (f < n % folds ? 1 : 0);
    std::vector<bool> in_test(n, false);
    auto& fold = out[f];
    fold.test_indices.assign(order.begin() + static_cast<std::ptrdiff_t>(start),
                             order.begin() +
                                 static_cast<std::ptrdiff_t>(start + len));
    std::sort(fold.test_indices.begin(), fold.test_indices.end());
    for (auto i : fold.test_indices) in_test[i] = true;
    for (std::size_t i = 0; i < n; ++i) {
      Dataset& part = in_test[i] ? fold.test : fold.train;
      part.rows.push_back(data.rows[i]);
      if (data.labeled()) part.labels.push_back(data.labels[i]);
    }
    fold.train.schema = recompute_ranges(data.schema, fold.train.rows);
    fold.test.schema = fold.train.schema;
    start += len;
  }
  return out;
}

nlohmann::json DatasetFingerprint::to_json() const {
  return {{"rows", rows},
          {"schema_digest", schema_digest},
          {"content_digest", content_digest}};
}

DatasetFingerprint fingerprint(const Dataset& data) {
  DatasetFingerprint fp;
  fp.rows = data.size();
  fp.schema_digest = data.schema.digest();
  std::string text;
  for (std::size_t i = 0; i < data.rows.size(); ++i) {
    for (double v : data.rows[i].values) {
      text += format_double(v);
      text += ',';
    }
    if (data.labeled()) text += std::to_string(data.labels[i]);
    text += '\n';
  }
  fp.content_digest = fnv1a_hex(text);
  return fp;
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  static constexpr char kHex[] = "0123456789abcdef";
  for (int i = 15; i >= 0; --i) {
    buf[i] = kHex[h & 0xF];
    h >>= 4;
  }
  buf[16] = '\0';
  return buf;
}

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

}  // namespace gce

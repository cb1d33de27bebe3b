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

#ifndef GCE_TABULAR_HPP_
#define GCE_TABULAR_HPP_

// Typed tabular data: feature schema, instances, CSV ingestion, the decile
// encoding that defines distances and costs, and k-fold splitting.
//
// Numeric features are measured in bins: every numeric feature is split into
// ten equal-width bins over its observed training range, and one bin is one
// unit of cost and distance. Categorical features are one-hot encoded.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace gce {

enum class FeatureKind { kNumeric, kCategorical };

inline constexpr int kPositive = 1;
inline constexpr int kNegative = -1;

// Number of equal-width bins a numeric range is split into.
inline constexpr double kBinsPerRange = 10.0;

struct FeatureSchema {
  std::string name;
  FeatureKind kind = FeatureKind::kNumeric;
  // Numeric only, raw units.
  double observed_min = 0.0;
  double observed_max = 0.0;
  double bin_width = 1.0;
  // Categorical only; order defines the one-hot layout.
  std::vector<std::string> categories;

  bool is_numeric() const { return kind == FeatureKind::kNumeric; }
  std::optional<std::size_t> category_index(std::string_view label) const;

  static FeatureSchema numeric(std::string name, double min, double max);
  static FeatureSchema categorical(std::string name,
                                   std::vector<std::string> categories);
};

// Ordered feature list plus the offsets of each feature in encoded space.
class Schema {
 public:
  Schema() = default;
  // Throws SchemaError on invalid features (bin_width <= 0, duplicate names
  // or labels, empty category list).
  explicit Schema(std::vector<FeatureSchema> features);

  std::size_t size() const { return features_.size(); }
  const FeatureSchema& feature(std::size_t i) const { return features_[i]; }
  const std::vector<FeatureSchema>& features() const { return features_; }
  std::optional<std::size_t> find(std::string_view name) const;

  // Dimension of an EncodedPoint: #numeric + sum of category counts.
  std::size_t encoded_dim() const { return encoded_dim_; }
  std::size_t offset(std::size_t feature) const { return offsets_[feature]; }
  std::size_t numeric_count() const { return numeric_count_; }

  // Hex FNV-1a digest of names, kinds, ranges and labels.
  std::string digest() const;

  bool operator==(const Schema& other) const;

 private:
  std::vector<FeatureSchema> features_;
  std::vector<std::size_t> offsets_;
  std::size_t encoded_dim_ = 0;
  std::size_t numeric_count_ = 0;
};

// One value per feature: raw units for numerics, the category index for
// categoricals.
struct Instance {
  std::vector<double> values;
  std::string id;

  double operator[](std::size_t i) const { return values[i]; }
  std::size_t category(std::size_t i) const {
    return static_cast<std::size_t>(values[i]);
  }
  // Identity of the point; the identifier is metadata.
  bool operator==(const Instance& other) const {
    return values == other.values;
  }
};

// Throws SchemaError when the instance does not conform to the schema.
void validate_instance(const Instance& x, const Schema& schema);

struct Dataset {
  Schema schema;
  std::vector<Instance> rows;
  // kPositive / kNegative per row; empty for unlabeled data.
  std::vector<int> labels;

  std::size_t size() const { return rows.size(); }
  bool labeled() const { return !labels.empty(); }
};

// Throws SchemaError/DataError when rows or labels violate the schema.
void validate_dataset(const Dataset& data);

using EncodedPoint = std::vector<double>;

// Row-major matrix of encoded points.
struct EncodedMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  std::span<const double> row(std::size_t i) const {
    return {data.data() + i * cols, cols};
  }
  std::span<double> row(std::size_t i) { return {data.data() + i * cols, cols}; }
};

EncodedPoint encode(const Instance& x, const Schema& schema);
// Writes encode(x) into out, which must have schema.encoded_dim() entries.
void encode_into(const Instance& x, const Schema& schema, std::span<double> out);
EncodedMatrix encode_all(std::span<const Instance> rows, const Schema& schema);

// Copy of schema whose numeric ranges and bin widths are recomputed from
// rows. Categories are kept. Throws SchemaError on a constant numeric feature.
Schema recompute_ranges(const Schema& schema, std::span<const Instance> rows);

enum class UnknownCategoryPolicy { kReject, kAdd };
enum class MissingPolicy { kDrop, kMedianImpute };

struct FeatureConfig {
  std::string name;
  FeatureKind kind = FeatureKind::kNumeric;
  // Optional fixed label order for categoricals. When empty, labels are
  // discovered from the file and sorted.
  std::vector<std::string> categories;
};

struct SchemaConfig {
  std::vector<FeatureConfig> features;
  std::string label_column;
  std::string positive_label;
  std::string negative_label;
  UnknownCategoryPolicy unknown_category = UnknownCategoryPolicy::kReject;
  MissingPolicy missing = MissingPolicy::kDrop;
  std::vector<std::string> missing_tokens = {"", "?", "NA", "NaN"};

  static SchemaConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

struct IngestResult {
  Dataset dataset;
  std::size_t dropped_rows = 0;
  std::size_t imputed_cells = 0;
};

// Reads a headered CSV. Errors: DataError for malformed rows (with the line
// number) and non-binary labels, SchemaError for constant numerics.
IngestResult ingest_csv(const std::filesystem::path& path,
                        const SchemaConfig& config);
IngestResult ingest_csv(std::istream& in, const SchemaConfig& config,
                        const std::string& source_name = "<stream>");

struct Fold {
  Dataset train;
  Dataset test;
  std::vector<std::size_t> test_indices;
};

// Disjoint, exhaustive partition into `folds` test sets after a seeded
// shuffle. The first (n mod folds) folds hold one extra row. Each train
// split carries a schema recomputed from its own rows; the test split shares
// that schema.
std::vector<Fold> split_kfold(const Dataset& data, std::size_t folds,
                              std::uint64_t seed);

struct DatasetFingerprint {
  std::size_t rows = 0;
  std::string schema_digest;
  std::string content_digest;

  nlohmann::json to_json() const;
};

DatasetFingerprint fingerprint(const Dataset& data);

// 64-bit FNV-1a, hex encoded.
std::string fnv1a_hex(std::string_view bytes);

// Shortest decimal text that round-trips to the same double.
std::string format_double(double value);

}  // namespace gce

#endif  // GCE_TABULAR_HPP_

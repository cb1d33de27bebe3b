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

#include "gce/classifier.hpp"

#include "gce/error.hpp"

namespace gce {

void Classifier::predict_batch(const EncodedMatrix& points,
                               std::span<int> out) const {
  for (std::size_t i = 0; i < points.rows; ++i) out[i] = predict(points.row(i));
}

std::vector<int> Classifier::predict_batch(const EncodedMatrix& points) const {
  std::vector<int> out(points.rows);
  predict_batch(points, out);
  return out;
}

int predict(const Classifier& model, const Instance& x, const Schema& schema) {
  return model.predict(encode(x, schema));
}

std::vector<Instance> affected_set(const Classifier& model,
                                   const Dataset& data) {
  const EncodedMatrix points = encode_all(data.rows, data.schema);
  const std::vector<int> labels = model.predict_batch(points);
  std::vector<Instance> out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == kNegative) out.push_back(data.rows[i]);
  }
  return out;
}

double accuracy(const Classifier& model, const Dataset& data) {
  if (!data.labeled() || data.rows.empty()) {
    throw DataError("accuracy needs labeled rows");
  }
  const std::vector<int> pred =
      model.predict_batch(encode_all(data.rows, data.schema));
  std::size_t hits = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (pred[i] == data.labels[i]) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(pred.size());
}

int LookupClassifier::predict(std::span<const double> encoded) const {
  const auto it = table_.find(EncodedPoint(encoded.begin(), encoded.end()));
  return it == table_.end() ? kNegative : it->second;
}

std::string LookupClassifier::descriptor() const {
  return "lookup(" + std::to_string(table_.size()) + " points)";
}

nlohmann::json save_model(const Classifier& model, const Schema& schema) {
  nlohmann::json j;
  j["schema_digest"] = schema.digest();
  if (const auto* lr = dynamic_cast<const LogisticModel*>(&model)) {
    j["type"] = "logistic";
    j["weights"] = lr->weights();
    j["bias"] = lr->bias();
    j["training_accuracy"] = lr->training_accuracy;
    j["meta"] = {{"learning_rate", lr->hyper.learning_rate},
                 {"iterations", lr->hyper.iterations},
                 {"l2", lr->hyper.l2},
                 {"seed", lr->hyper.seed}};
  } else if (const auto* knn = dynamic_cast<const KnnModel*>(&model)) {
    j["type"] = "knn";
    j["k"] = knn->k();
    j["dim"] = knn->points().cols;
    j["points"] = knn->points().data;
    j["labels"] = knn->labels();
  } else {
    throw Error("cannot save model of type " + model.descriptor());
  }
  return j;
}

std::unique_ptr<Classifier> load_model(const nlohmann::json& j,
                                       const Schema& schema) {
  const std::string digest = j.value("schema_digest", std::string());
  if (digest != schema.digest()) {
    throw DataError("model schema digest " + digest +
                    " does not match dataset schema " + schema.digest());
  }
  const std::string type = j.value("type", std::string());
  if (type == "logistic") {
    auto weights = j.at("weights").get<std::vector<double>>();
    if (weights.size() != schema.encoded_dim()) {
      throw DataError("logistic weight count does not match schema");
    }
    auto model = std::make_unique<LogisticModel>(std::move(weights),
                                                 j.at("bias").get<double>());
    model->training_accuracy = j.value("training_accuracy", 0.0);
    if (j.contains("meta")) {
      const auto& m = j["meta"];
      model->hyper.learning_rate = m.value("learning_rate", 0.5);
      model->hyper.iterations = m.value("iterations", 1000);
      model->hyper.l2 = m.value("l2", 1e-3);
      model->hyper.seed = m.value("seed", std::uint64_t{13});
    }
    return model;
  }
  if (type == "knn") {
    EncodedMatrix points;
    points.cols = j.at("dim").get<std::size_t>();
    points.data = j.at("points").get<std::vector<double>>();
    if (points.cols != schema.encoded_dim() ||
        points.data.size() % points.cols != 0) {
      throw DataError("knn point matrix does not match schema");
    }
    points.rows = points.data.size() / points.cols;
    auto labels = j.at("labels").get<std::vector<int>>();
    return std::make_unique<KnnModel>(std::move(points), std::move(labels),
                                      j.at("k").get<std::size_t>());
  }
  throw DataError("unknown model type '" + type + "'");
}

}  // namespace gce

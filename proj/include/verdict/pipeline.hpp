/*
 * Copyright 2026 The verdict Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <array>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "verdict/classifier.hpp"
#include "verdict/corpus.hpp"
#include "verdict/digest.hpp"
#include "verdict/tfidf.hpp"

namespace verdict {

enum class ServedBy { generalist, specialist };

struct ScoredPrediction {
  bool predicted = false;
  std::array<double, 2> scores = {0.5, 0.5};
  ServedBy route = ServedBy::generalist;
  ConstructLabel specialist_construct;  // set when route == specialist
  bool zero_vector = false;  // rationale was empty/OOV under this vectorizer

  std::string served_by() const {
    if (route == ServedBy::generalist) return "generalist";
    return "specialist(" + specialist_construct.str() + ")";
  }
};

/// A vectorizer/classifier pair fitted on one corpus.
struct VerifierModel {
  TfidfModel vectorizer;
  TrainedModel model;

  ScoredPrediction score_record(const AnnotationRecord& r) const {
    const SparseVector v = vectorizer.transform_text(r.rationale);
    ScoredPrediction out;
    out.zero_vector = v.is_zero();
    out.scores = model.score_one(v);
    out.predicted = out.scores[1] > out.scores[0];
    return out;
  }

  nlohmann::json to_json() const {
    nlohmann::json j = model_to_json(model);
    j["vectorizer"] = vectorizer.to_json();
    j["vectorizer_digest"] = vectorizer.digest();
    return j;
  }

  static VerifierModel from_json(const nlohmann::json& j) {
    VerifierModel vm;
    vm.model = model_from_json(j);
    if (!j.contains("vectorizer") || !j.contains("vectorizer_digest"))
      throw Error(Errc::artifact_integrity, "artifact lacks a vectorizer binding");
    vm.vectorizer = TfidfModel::from_json(j.at("vectorizer"));
    const auto stored = j.at("vectorizer_digest").get<std::string>();
    if (vm.vectorizer.digest() != stored)
      throw Error(Errc::artifact_integrity,
                  "vectorizer digest mismatch (expected " + stored + ")");
    if (vm.vectorizer.dimension() != vm.model.dimension)
      throw Error(Errc::artifact_integrity,
                  "vectorizer dimension does not match model dimension");
    return vm;
  }
};

/// Fit the TF-IDF space on the corpus rationales, then train the
/// configured classifier with balanced class weights. Rows are keyed by
/// record_id, so training is invariant to corpus order.
inline VerifierModel fit_verifier(const Corpus& corpus, const TrainConfig& config,
                                  const StopwordSet& stopwords,
                                  std::uint32_t max_features = kDefaultMaxFeatures) {
  if (corpus.empty()) throw Error(Errc::empty_corpus, "cannot train on an empty corpus");
  std::vector<std::string> texts;
  texts.reserve(corpus.size());
  for (const auto& r : corpus.records) texts.push_back(r.rationale);

  VerifierModel vm;
  vm.vectorizer = TfidfModel::fit_texts(texts, stopwords, max_features);

  std::vector<SparseVector> x;
  x.reserve(corpus.size());
  Labels y;
  y.reserve(corpus.size());
  std::vector<std::string> keys;
  keys.reserve(corpus.size());
  for (const auto& r : corpus.records) {
    x.push_back(vm.vectorizer.transform_text(r.rationale));
    y.push_back(r.is_correct ? 1 : 0);
    keys.push_back(r.record_id);
  }
  const ClassWeights weights = compute_class_weights(y);
  vm.model = train(x, y, config, weights, &keys);
  return vm;
}

inline void save_json_file(const nlohmann::json& j, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::file_not_found, "cannot write " + path);
  out << j.dump(2) << "\n";
}

inline nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::file_not_found, path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return nlohmann::json::parse(buf.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::artifact_integrity,
                path + " is not valid JSON: " + e.what());
  }
}

inline void save_verifier(const VerifierModel& vm, const std::string& path) {
  save_json_file(vm.to_json(), path);
}

inline VerifierModel load_verifier(const std::string& path) {
  return VerifierModel::from_json(load_json_file(path));
}

}  // namespace verdict

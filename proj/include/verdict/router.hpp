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

#include <algorithm>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "verdict/corpus.hpp"
#include "verdict/pipeline.hpp"

namespace verdict {

/// Partitions below this size, or with a single correctness class, are not
/// given a specialist; the generalist serves them.
inline constexpr std::size_t kMinSpecialistRecords = 50;

/// Construct-routed verifier bank: one specialist per frequent construct,
/// each with its own locally-fitted vocabulary, plus a generalist fitted on
/// the full training corpus that serves everything else.
struct SpecialistEnsemble {
  std::map<ConstructLabel, VerifierModel> specialists;
  std::map<ConstructLabel, std::size_t> partition_sizes;
  VerifierModel generalist;
  std::size_t k = 0;
  std::vector<std::string> warnings;

  bool has_specialist(const ConstructLabel& c) const {
    return specialists.count(c) > 0;
  }

  ScoredPrediction score_record(const AnnotationRecord& r) const {
    auto it = specialists.find(r.predicted_construct);
    if (it == specialists.end()) return generalist.score_record(r);
    ScoredPrediction pred = it->second.score_record(r);
    pred.route = ServedBy::specialist;
    pred.specialist_construct = r.predicted_construct;
    return pred;
  }
};

/// Fit the generalist plus specialists for the k most frequent constructs
/// (ties broken lexicographically). Partitions that are too small or
/// single-class are skipped with a warning and stay on the generalist path.
inline SpecialistEnsemble fit_specialists(const Corpus& train, std::size_t k,
                                          const TrainConfig& config,
                                          const StopwordSet& stopwords,
                                          std::uint32_t max_features = kDefaultMaxFeatures) {
  if (train.empty()) throw Error(Errc::empty_corpus, "cannot fit specialists on an empty corpus");

  SpecialistEnsemble ens;
  ens.k = k;
  ens.generalist = fit_verifier(train, config, stopwords, max_features);

  auto partitions = partition_by_construct(train);
  std::vector<std::pair<ConstructLabel, std::size_t>> ranked;
  ranked.reserve(partitions.size());
  for (const auto& [label, part] : partitions)
    ranked.emplace_back(label, part.size());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first.str() < b.first.str();
  });
  if (ranked.size() > k) ranked.resize(k);

  for (const auto& [label, size] : ranked) {
    const Corpus& part = partitions.at(label);
    ens.partition_sizes[label] = size;
    if (size < kMinSpecialistRecords) {
      ens.warnings.push_back("specialist " + label.str() + " skipped: only " +
                             std::to_string(size) + " records (minimum " +
                             std::to_string(kMinSpecialistRecords) + ")");
      continue;
    }
    const auto [neg, pos] = part.class_counts();
    if (neg == 0 || pos == 0) {
      ens.warnings.push_back("specialist " + label.str() +
                             " skipped: single correctness class");
      continue;
    }
    ens.specialists.emplace(label,
                            fit_verifier(part, config, stopwords, max_features));
  }
  return ens;
}

/// Route one record to its specialist (or the generalist fallback).
inline ScoredPrediction route_predict(const SpecialistEnsemble& ensemble,
                                      const AnnotationRecord& record) {
  return ensemble.score_record(record);
}

// ---- directory artifact -------------------------------------------------

inline void save_ensemble(const SpecialistEnsemble& ens, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);

  nlohmann::json manifest;
  manifest["format"] = kEnsembleFormat;
  manifest["k"] = ens.k;
  manifest["warnings"] = ens.warnings;

  const std::string generalist_file = "generalist.json";
  {
    const std::string body = ens.generalist.to_json().dump(2) + "\n";
    std::ofstream out(fs::path(dir) / generalist_file, std::ios::binary);
    out << body;
    manifest["generalist"] = {{"file", generalist_file},
                              {"digest", digest_hex(body)}};
  }

  nlohmann::json specialists = nlohmann::json::array();
  std::size_t idx = 0;
  for (const auto& [label, vm] : ens.specialists) {
    char name[32];
    std::snprintf(name, sizeof(name), "specialist_%03zu.json", idx++);
    const std::string body = vm.to_json().dump(2) + "\n";
    std::ofstream out(fs::path(dir) / name, std::ios::binary);
    out << body;
    nlohmann::json entry;
    entry["construct"] = label.str();
    entry["file"] = name;
    entry["digest"] = digest_hex(body);
    auto sz = ens.partition_sizes.find(label);
    entry["training_records"] = sz == ens.partition_sizes.end() ? 0 : sz->second;
    specialists.push_back(std::move(entry));
  }
  manifest["specialists"] = std::move(specialists);
  save_json_file(manifest, (fs::path(dir) / "manifest.json").string());
}

inline SpecialistEnsemble load_ensemble(const std::string& dir) {
  namespace fs = std::filesystem;
  const auto manifest_path = fs::path(dir) / "manifest.json";
  const nlohmann::json manifest = load_json_file(manifest_path.string());
  if (manifest.value("format", "") != kEnsembleFormat)
    throw Error(Errc::artifact_integrity, "not a recognized ensemble artifact");

  auto read_checked = [&](const nlohmann::json& entry) {
    const auto file = entry.at("file").get<std::string>();
    std::ifstream in(fs::path(dir) / file, std::ios::binary);
    if (!in) throw Error(Errc::file_not_found, (fs::path(dir) / file).string());
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string body = buf.str();
    if (digest_hex(body) != entry.at("digest").get<std::string>())
      throw Error(Errc::artifact_integrity, file + ": digest mismatch");
    return VerifierModel::from_json(nlohmann::json::parse(body));
  };

  SpecialistEnsemble ens;
  ens.k = manifest.at("k").get<std::size_t>();
  ens.warnings = manifest.at("warnings").get<std::vector<std::string>>();
  ens.generalist = read_checked(manifest.at("generalist"));
  for (const auto& entry : manifest.at("specialists")) {
    const auto label = ConstructLabel::parse(entry.at("construct").get<std::string>());
    ens.specialists.emplace(label, read_checked(entry));
    ens.partition_sizes[label] = entry.value("training_records", std::size_t{0});
  }
  return ens;
}

}  // namespace verdict

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
#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include <json.hpp>

#include "verdict/construct.hpp"
#include "verdict/csv.hpp"
#include "verdict/error.hpp"
#include "verdict/rng.hpp"

namespace verdict {

/// One LLM-generated annotation: a predicted construct for an utterance,
/// the model's rationale text, and the human-verified correctness bit.
struct AnnotationRecord {
  std::string record_id;
  std::string utterance_id;
  ConstructLabel predicted_construct;
  std::string rationale;
  std::string source_model;
  bool is_correct = false;
};

struct Provenance {
  std::string source_path;
  std::string ingested_at;  // in-memory only; never serialized into reports
};

struct Corpus {
  std::vector<AnnotationRecord> records;
  Provenance provenance;

  std::size_t size() const { return records.size(); }
  bool empty() const { return records.empty(); }

  /// (incorrect, correct) counts.
  std::pair<std::size_t, std::size_t> class_counts() const {
    std::size_t neg = 0, pos = 0;
    for (const auto& r : records) (r.is_correct ? pos : neg)++;
    return {neg, pos};
  }
};

struct IngestSummary {
  std::string format;
  std::size_t total_rows = 0;
  std::size_t ingested = 0;
  std::size_t dropped_empty_rationale = 0;
  std::size_t correct = 0;
  std::size_t incorrect = 0;
  std::map<std::string, std::size_t> constructs;

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["format"] = format;
    j["total_rows"] = total_rows;
    j["ingested"] = ingested;
    j["dropped_empty_rationale"] = dropped_empty_rationale;
    j["class_counts"] = {{"correct", correct}, {"incorrect", incorrect}};
    j["constructs"] = constructs;
    return j;
  }
};

enum class CorpusFormat { jsonl, csv };

struct LoadOptions {
  /// When false, a predicted_construct outside the closed label set is an
  /// UnknownLabel error instead of an Other(...) passthrough.
  bool allow_other = true;
  /// Triage streams fresh annotations that have no ground truth yet.
  bool require_is_correct = true;
};

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

inline std::string lower_ascii(std::string s) {
  for (char& c : s)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

/// Accepts {0,1,true,false,"0","1"} case-insensitively.
inline std::optional<bool> parse_is_correct_str(const std::string& raw) {
  const std::string v = lower_ascii(trim(raw));
  if (v == "1" || v == "true") return true;
  if (v == "0" || v == "false") return false;
  return std::nullopt;
}

inline std::optional<bool> parse_is_correct_json(const nlohmann::json& v) {
  if (v.is_boolean()) return v.get<bool>();
  if (v.is_number_integer()) {
    const auto n = v.get<std::int64_t>();
    if (n == 0) return false;
    if (n == 1) return true;
    return std::nullopt;
  }
  if (v.is_string()) return parse_is_correct_str(v.get<std::string>());
  return std::nullopt;
}

inline ConstructLabel parse_construct_checked(const std::string& raw,
                                              const LoadOptions& opt,
                                              std::size_t line) {
  ConstructLabel label = ConstructLabel::parse(raw);
  if (label.is_other() && !opt.allow_other)
    throw Error(Errc::unknown_label, "line " + std::to_string(line) +
                                         ": unknown construct label \"" + raw +
                                         "\"");
  return label;
}

}  // namespace detail

/// Parse one JSONL object into a record. Shared by bulk ingest and the
/// streaming triage path.
inline AnnotationRecord record_from_json(const nlohmann::json& j,
                                         const LoadOptions& opt,
                                         std::size_t lineno) {
  if (!j.is_object())
    throw Error(Errc::malformed_row,
                "line " + std::to_string(lineno) + ": not a JSON object");
  for (const char* key :
       {"record_id", "predicted_construct", "rationale", "source_model"}) {
    if (!j.contains(key))
      throw Error(Errc::malformed_row, "line " + std::to_string(lineno) +
                                           ": missing key \"" + key + "\"");
  }
  AnnotationRecord rec;
  try {
    rec.record_id = j.at("record_id").get<std::string>();
    rec.rationale = j.at("rationale").get<std::string>();
    rec.source_model = j.at("source_model").get<std::string>();
    if (j.contains("utterance_id") && j["utterance_id"].is_string())
      rec.utterance_id = j["utterance_id"].get<std::string>();
    rec.predicted_construct = detail::parse_construct_checked(
        j.at("predicted_construct").get<std::string>(), opt, lineno);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::malformed_row,
                "line " + std::to_string(lineno) + ": " + e.what());
  }
  if (j.contains("is_correct")) {
    auto flag = detail::parse_is_correct_json(j["is_correct"]);
    if (!flag)
      throw Error(Errc::malformed_row,
                  "line " + std::to_string(lineno) +
                      ": is_correct must be one of 0,1,true,false");
    rec.is_correct = *flag;
  } else if (opt.require_is_correct) {
    throw Error(Errc::malformed_row, "line " + std::to_string(lineno) +
                                         ": missing key \"is_correct\"");
  }
  return rec;
}

/// Serialize one record as a single JSON line (keys sorted, no timestamps,
/// stable across runs).
inline nlohmann::json record_to_json(const AnnotationRecord& r) {
  nlohmann::json j;
  j["record_id"] = r.record_id;
  if (!r.utterance_id.empty()) j["utterance_id"] = r.utterance_id;
  j["predicted_construct"] = r.predicted_construct.str();
  j["rationale"] = r.rationale;
  j["source_model"] = r.source_model;
  j["is_correct"] = r.is_correct;
  return j;
}

inline void write_jsonl(const Corpus& corpus, std::ostream& out) {
  for (const auto& r : corpus.records) out << record_to_json(r).dump() << "\n";
}

/// Load a corpus from JSONL or CSV. Records whose rationale is empty after
/// whitespace trimming are dropped and counted in the summary; duplicate
/// record_ids are a hard error.
inline std::pair<Corpus, IngestSummary> load_corpus(const std::string& path,
                                                    CorpusFormat format,
                                                    const LoadOptions& opt = {}) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::file_not_found, path);

  Corpus corpus;
  corpus.provenance.source_path = path;
  IngestSummary summary;
  summary.format = format == CorpusFormat::jsonl ? "jsonl" : "csv";
  std::unordered_set<std::string> seen_ids;

  auto add_record = [&](AnnotationRecord&& rec, std::size_t line) {
    ++summary.total_rows;
    if (detail::trim(rec.rationale).empty()) {
      ++summary.dropped_empty_rationale;
      return;
    }
    if (!seen_ids.insert(rec.record_id).second)
      throw Error(Errc::malformed_row,
                  "line " + std::to_string(line) + ": duplicate record_id \"" +
                      rec.record_id + "\"");
    (rec.is_correct ? summary.correct : summary.incorrect)++;
    summary.constructs[rec.predicted_construct.str()]++;
    corpus.records.push_back(std::move(rec));
    ++summary.ingested;
  };

  if (format == CorpusFormat::jsonl) {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (detail::trim(line).empty()) continue;
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(line);
      } catch (const nlohmann::json::parse_error& e) {
        throw Error(Errc::malformed_row,
                    "line " + std::to_string(lineno) + ": " + e.what());
      }
      add_record(record_from_json(j, opt, lineno), lineno);
    }
  } else {
    std::size_t lineno = 0;
    auto header = csv::read_record(in, lineno);
    if (!header) throw Error(Errc::malformed_row, "empty CSV file");
    std::map<std::string, std::size_t> col;
    for (std::size_t i = 0; i < header->size(); ++i)
      col[detail::trim((*header)[i])] = i;
    for (const char* key : {"record_id", "predicted_construct", "rationale",
                            "source_model"}) {
      if (!col.count(key))
        throw Error(Errc::malformed_row,
                    std::string("missing CSV column \"") + key + "\"");
    }
    const bool has_is_correct = col.count("is_correct") > 0;
    if (!has_is_correct && opt.require_is_correct)
      throw Error(Errc::malformed_row, "missing CSV column \"is_correct\"");
    while (auto row = csv::read_record(in, lineno)) {
      if (row->size() == 1 && detail::trim((*row)[0]).empty()) continue;
      if (row->size() != header->size())
        throw Error(Errc::malformed_row,
                    "line " + std::to_string(lineno) + ": expected " +
                        std::to_string(header->size()) + " fields, got " +
                        std::to_string(row->size()));
      AnnotationRecord rec;
      rec.record_id = (*row)[col["record_id"]];
      rec.rationale = (*row)[col["rationale"]];
      rec.source_model = (*row)[col["source_model"]];
      if (col.count("utterance_id")) rec.utterance_id = (*row)[col["utterance_id"]];
      rec.predicted_construct = detail::parse_construct_checked(
          (*row)[col["predicted_construct"]], opt, lineno);
      if (has_is_correct) {
        auto flag = detail::parse_is_correct_str((*row)[col["is_correct"]]);
        if (!flag)
          throw Error(Errc::malformed_row,
                      "line " + std::to_string(lineno) +
                          ": is_correct must be one of 0,1,true,false");
        rec.is_correct = *flag;
      }
      add_record(std::move(rec), lineno);
    }
  }
  return {std::move(corpus), std::move(summary)};
}

/// Stratified train/test split on is_correct.
///
/// Per-class test count = floor(fraction * class size); the remaining slots
/// up to round(fraction * N) go to the classes with the largest fractional
/// remainders. Record selection within a class is a seeded shuffle, so the
/// split is a pure function of (corpus order, fraction, seed).
inline std::pair<Corpus, Corpus> stratified_split(const Corpus& corpus,
                                                  double test_fraction,
                                                  std::uint64_t seed) {
  if (corpus.empty()) throw Error(Errc::empty_corpus, "cannot split an empty corpus");
  if (!(test_fraction > 0.0 && test_fraction < 1.0))
    throw Error(Errc::invalid_fraction,
                "test_fraction must be in (0,1), got " +
                    std::to_string(test_fraction));

  std::vector<std::size_t> idx_by_class[2];
  for (std::size_t i = 0; i < corpus.records.size(); ++i)
    idx_by_class[corpus.records[i].is_correct ? 1 : 0].push_back(i);

  const std::size_t n = corpus.size();
  const auto target_total =
      static_cast<std::size_t>(std::llround(test_fraction * static_cast<double>(n)));

  std::size_t base[2];
  double remainder[2];
  std::size_t base_sum = 0;
  for (int c = 0; c < 2; ++c) {
    const double exact = test_fraction * static_cast<double>(idx_by_class[c].size());
    base[c] = static_cast<std::size_t>(std::floor(exact));
    remainder[c] = exact - static_cast<double>(base[c]);
    base_sum += base[c];
  }
  std::size_t extra_slots = target_total > base_sum ? target_total - base_sum : 0;
  std::size_t take[2] = {base[0], base[1]};
  // Assign leftover slots by descending fractional remainder, class 0 first
  // on ties.
  std::array<int, 2> order = {0, 1};
  if (remainder[1] > remainder[0]) order = {1, 0};
  for (int c : order) {
    if (extra_slots == 0) break;
    if (take[c] < idx_by_class[c].size()) {
      ++take[c];
      --extra_slots;
    }
  }

  std::vector<bool> in_test(n, false);
  for (int c = 0; c < 2; ++c) {
    auto& pool = idx_by_class[c];
    KeyedRng rng(seed, "stratified-split", static_cast<std::uint64_t>(c));
    // Fisher-Yates
    for (std::size_t i = pool.size(); i > 1; --i) {
      const std::size_t j = rng.uniform_below(i);
      std::swap(pool[i - 1], pool[j]);
    }
    for (std::size_t i = 0; i < take[c] && i < pool.size(); ++i)
      in_test[pool[i]] = true;
  }

  Corpus train, test;
  train.provenance = corpus.provenance;
  test.provenance = corpus.provenance;
  for (std::size_t i = 0; i < n; ++i)
    (in_test[i] ? test : train).records.push_back(corpus.records[i]);
  return {std::move(train), std::move(test)};
}

/// Group records by predicted construct. Every record lands in exactly one
/// partition; empty partitions are absent keys.
inline std::map<ConstructLabel, Corpus> partition_by_construct(const Corpus& corpus) {
  std::map<ConstructLabel, Corpus> parts;
  for (const auto& r : corpus.records) {
    auto& part = parts[r.predicted_construct];
    if (part.records.empty()) part.provenance = corpus.provenance;
    part.records.push_back(r);
  }
  return parts;
}

}  // namespace verdict

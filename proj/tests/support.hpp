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

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "verdict/corpus.hpp"
#include "verdict/rng.hpp"

namespace testsupport {

/// Unique scratch directory, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    auto base = std::filesystem::temp_directory_path();
    do {
      path_ = base / ("verdict_test_" + std::to_string(::getpid()) + "_" +
                      std::to_string(counter++));
    } while (std::filesystem::exists(path_));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::string file(const std::string& name) const {
    return (path_ / name).string();
  }

 private:
  std::filesystem::path path_;
};

inline void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  out << body;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::string body((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return body;
}

inline std::string data_dir() {
  const char* env = std::getenv("VERDICT_DATA_DIR");
  return env ? env : "data";
}

inline verdict::AnnotationRecord make_record(const std::string& id,
                                             const std::string& construct,
                                             const std::string& rationale,
                                             bool is_correct,
                                             const std::string& source = "modelA") {
  verdict::AnnotationRecord r;
  r.record_id = id;
  r.predicted_construct = verdict::ConstructLabel::parse(construct);
  r.rationale = rationale;
  r.source_model = source;
  r.is_correct = is_correct;
  return r;
}

/// Synthetic corpus where incorrect rationales carry hedge tokens with high
/// probability and correct ones rarely do; mirrors the tentativeness effect
/// the verifiers are supposed to learn.
inline verdict::Corpus hedge_corpus(std::size_t n, std::uint64_t seed,
                                    double p_hedge_incorrect = 0.8,
                                    double p_hedge_correct = 0.1) {
  static const std::vector<std::string> kHedges = {"might", "could", "possibly",
                                                   "perhaps"};
  static const std::vector<std::string> kFiller = {
      "teacher", "asks",    "student",  "repeats", "idea",    "answer",
      "question", "explains", "points",  "board",   "number",  "fraction",
      "problem",  "group",    "shares",  "writes",  "reads",   "talks",
      "looks",    "says",     "names",   "counts",  "shows",   "compares",
      "draws",    "model",    "value",   "sum",     "table",   "line"};
  static const std::vector<std::string> kConstructs = {
      "Restating", "Revoicing", "PressingForReasoning", "KeepingEveryoneTogether"};
  static const std::vector<std::string> kSources = {"modelA", "modelB", "modelC",
                                                    "modelD"};
  verdict::Corpus corpus;
  for (std::size_t i = 0; i < n; ++i) {
    verdict::KeyedRng rng(seed, "hedge-corpus", i);
    const bool correct = (i % 2) == 0;
    std::string text;
    const std::size_t len = 8 + rng.uniform_below(7);
    for (std::size_t w = 0; w < len; ++w) {
      if (w) text += ' ';
      text += kFiller[rng.uniform_below(kFiller.size())];
    }
    const double p = correct ? p_hedge_correct : p_hedge_incorrect;
    for (const auto& hedge : kHedges)
      if (rng.uniform() < p) text += ' ' + hedge;
    char id[24];
    std::snprintf(id, sizeof(id), "r%06zu", i);
    corpus.records.push_back(make_record(
        id, kConstructs[rng.uniform_below(kConstructs.size())], text, correct,
        kSources[rng.uniform_below(kSources.size())]));
  }
  return corpus;
}

/// Corpus with a construct-specific correctness signal that is globally
/// misleading: "react" marks correct rationales of the rare construct but
/// appears mostly in incorrect rationales of the frequent constructs, so a
/// pooled model learns the inverted association.
inline verdict::Corpus construct_signal_corpus(std::size_t n, std::uint64_t seed,
                                               double rare_share = 0.05) {
  static const std::vector<std::string> kFiller = {
      "teacher", "asks", "student", "idea",  "answer", "question", "board",
      "points",  "talk", "lesson",  "turn",  "number", "problem",  "group"};
  struct Spec {
    const char* construct;
    const char* marker;  // token carried by this construct's correct rationales
  };
  static const Spec kFrequent[] = {{"Restating", "verbatim"},
                                   {"PressingForAccuracy", "precise"},
                                   {"Revoicing", "paraphrases"}};
  verdict::Corpus corpus;
  for (std::size_t i = 0; i < n; ++i) {
    verdict::KeyedRng rng(seed, "construct-corpus", i);
    const bool correct = rng.uniform() < 0.5;
    const bool rare = rng.uniform() < rare_share;
    std::string construct;
    std::string text;
    const std::size_t len = 6 + rng.uniform_below(6);
    for (std::size_t w = 0; w < len; ++w) {
      if (w) text += ' ';
      text += kFiller[rng.uniform_below(kFiller.size())];
    }
    if (rare) {
      construct = "GettingStudentsToRelate";
      // High-signal local marker: present in correct, absent in incorrect.
      if (correct ? rng.uniform() < 0.95 : rng.uniform() < 0.05)
        text += " react";
    } else {
      const auto& spec = kFrequent[rng.uniform_below(3)];
      construct = spec.construct;
      if (correct && rng.uniform() < 0.9) text += ' ' + std::string(spec.marker);
      // Globally misleading: frequent-construct errors hedge with "react".
      if (!correct && rng.uniform() < 0.6) text += " react";
    }
    char id[24];
    std::snprintf(id, sizeof(id), "c%06zu", i);
    corpus.records.push_back(make_record(id, construct, text, correct));
  }
  return corpus;
}

}  // namespace testsupport

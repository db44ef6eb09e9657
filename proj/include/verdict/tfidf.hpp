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
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "verdict/digest.hpp"
#include "verdict/error.hpp"
#include "verdict/sparse.hpp"
#include "verdict/tokenize.hpp"
#include "verdict/version.hpp"

namespace verdict {

inline constexpr std::uint32_t kDefaultMaxFeatures = 3227;

/// Fitted TF-IDF vocabulary. Weighting is smoothed idf
/// ln((1+D)/(1+df)) + 1 over raw term counts, L2-normalized per document.
/// Column indices follow lexicographic token order.
class TfidfModel {
 public:
  TfidfModel() = default;

  /// Fit on training documents only. The vocabulary keeps the
  /// `max_features` most document-frequent tokens, ties broken
  /// lexicographically (smaller token wins).
  static TfidfModel fit(const std::vector<TokenStream>& train_docs,
                        std::uint32_t max_features = kDefaultMaxFeatures,
                        StopwordSet stopwords = {}) {
    if (train_docs.empty())
      throw Error(Errc::empty_training_set, "fit requires at least one document");
    if (max_features == 0)
      throw Error(Errc::invalid_config, "max_features must be positive");

    std::map<std::string, std::uint32_t> df;
    {
      std::set<std::string> seen;
      for (const auto& doc : train_docs) {
        seen.clear();
        for (const auto& t : doc.tokens) seen.insert(t);
        for (const auto& t : seen) df[t]++;
      }
    }

    std::vector<std::pair<std::string, std::uint32_t>> ranked(df.begin(), df.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
      if (a.second != b.second) return a.second > b.second;
      return a.first < b.first;
    });
    if (ranked.size() > max_features) ranked.resize(max_features);
    std::sort(ranked.begin(), ranked.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    TfidfModel m;
    m.max_features_ = max_features;
    m.document_count_ = train_docs.size();
    m.stopwords_ = std::move(stopwords);
    m.idf_.resize(ranked.size());
    const double d = static_cast<double>(train_docs.size());
    for (std::uint32_t col = 0; col < ranked.size(); ++col) {
      m.vocabulary_[ranked[col].first] = col;
      m.idf_[col] =
          std::log((1.0 + d) / (1.0 + static_cast<double>(ranked[col].second))) + 1.0;
    }
    return m;
  }

  /// Convenience: tokenize with the model's stop-word set, then fit.
  static TfidfModel fit_texts(const std::vector<std::string>& texts,
                              const StopwordSet& stopwords,
                              std::uint32_t max_features = kDefaultMaxFeatures) {
    std::vector<TokenStream> docs;
    docs.reserve(texts.size());
    for (const auto& t : texts) docs.push_back(tokenize(t, stopwords));
    return fit(docs, max_features, stopwords);
  }

  /// Term-count * idf weights, L2-normalized. Out-of-vocabulary tokens are
  /// ignored; an all-OOV or empty document transforms to the zero vector
  /// (query it with SparseVector::is_zero).
  SparseVector transform(const TokenStream& doc) const {
    std::map<std::uint32_t, double> counts;
    for (const auto& t : doc.tokens) {
      auto it = vocabulary_.find(t);
      if (it != vocabulary_.end()) counts[it->second] += 1.0;
    }
    SparseVector v;
    v.dimension = dimension();
    v.entries.reserve(counts.size());
    double norm_sq = 0.0;
    for (const auto& [col, count] : counts) {
      const double w = count * idf_[col];
      v.entries.emplace_back(col, w);
      norm_sq += w * w;
    }
    if (norm_sq > 0.0) {
      const double inv = 1.0 / std::sqrt(norm_sq);
      for (auto& [col, w] : v.entries) w *= inv;
    }
    return v;
  }

  SparseVector transform_text(const std::string& text) const {
    return transform(tokenize(text, stopwords_));
  }

  std::uint32_t dimension() const {
    return static_cast<std::uint32_t>(vocabulary_.size());
  }
  std::uint32_t max_features() const { return max_features_; }
  std::size_t document_count() const { return document_count_; }
  const std::map<std::string, std::uint32_t>& vocabulary() const {
    return vocabulary_;
  }
  const std::vector<double>& idf() const { return idf_; }
  const StopwordSet& stopwords() const { return stopwords_; }

  double idf_of(const std::string& token) const {
    auto it = vocabulary_.find(token);
    return it == vocabulary_.end() ? 0.0 : idf_[it->second];
  }

  /// Column -> token (inverse vocabulary).
  std::vector<std::string> column_tokens() const {
    std::vector<std::string> cols(vocabulary_.size());
    for (const auto& [tok, col] : vocabulary_) cols[col] = tok;
    return cols;
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["format"] = kTfidfFormat;
    j["tokenizer"] = detail::kTokenizerRule;
    j["max_features"] = max_features_;
    j["document_count"] = document_count_;
    auto cols = column_tokens();
    j["vocabulary"] = cols;
    j["idf"] = idf_;
    j["stopwords"] = std::vector<std::string>(stopwords_.begin(), stopwords_.end());
    return j;
  }

  static TfidfModel from_json(const nlohmann::json& j) {
    if (!j.is_object() || j.value("format", "") != kTfidfFormat)
      throw Error(Errc::artifact_integrity, "not a recognized vectorizer artifact");
    TfidfModel m;
    m.max_features_ = j.at("max_features").get<std::uint32_t>();
    m.document_count_ = j.at("document_count").get<std::size_t>();
    const auto cols = j.at("vocabulary").get<std::vector<std::string>>();
    m.idf_ = j.at("idf").get<std::vector<double>>();
    if (cols.size() != m.idf_.size())
      throw Error(Errc::artifact_integrity, "vocabulary/idf size mismatch");
    for (std::uint32_t c = 0; c < cols.size(); ++c) m.vocabulary_[cols[c]] = c;
    if (m.vocabulary_.size() != cols.size())
      throw Error(Errc::artifact_integrity, "duplicate vocabulary tokens");
    for (const auto& s : j.at("stopwords").get<std::vector<std::string>>())
      m.stopwords_.insert(s);
    return m;
  }

  /// Stable digest over the serialized artifact; model artifacts embed it to
  /// bind against the vectorizer they were trained with.
  std::string digest() const { return digest_hex(to_json().dump()); }

 private:
  std::map<std::string, std::uint32_t> vocabulary_;
  std::vector<double> idf_;
  std::uint32_t max_features_ = kDefaultMaxFeatures;
  std::size_t document_count_ = 0;
  StopwordSet stopwords_;
};

}  // namespace verdict

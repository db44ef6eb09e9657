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

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "verdict/corpus.hpp"
#include "verdict/lexicon.hpp"
#include "verdict/rng.hpp"
#include "verdict/stats.hpp"
#include "verdict/tokenize.hpp"

namespace verdict {

/// Per-category matches per 100 words for one text. Unlike TF-IDF, the word
/// count here includes stop-words: every word counts toward length.
struct DensityProfile {
  std::string record_id;
  std::size_t word_count = 0;
  bool zero_words = false;
  std::map<std::string, std::size_t> matches;
  std::map<std::string, double> density;
};

inline DensityProfile density(const std::string& text, const Lexicon& lexicon,
                              const std::string& record_id = {}) {
  DensityProfile prof;
  prof.record_id = record_id;
  const TokenStream tokens = tokenize(text, StopwordSet{});
  prof.word_count = tokens.tokens.size();
  prof.zero_words = prof.word_count == 0;
  for (const auto& cat : lexicon.category_names()) {
    const std::size_t m = prof.zero_words ? 0 : lexicon.matches_in(cat, tokens);
    prof.matches[cat] = m;
    prof.density[cat] =
        prof.zero_words
            ? 0.0
            : 100.0 * static_cast<double>(m) / static_cast<double>(prof.word_count);
  }
  return prof;
}

/// Correct-vs-incorrect comparison of one category's density. The point
/// difference is mean_correct - mean_incorrect; the CI is a seeded
/// percentile bootstrap over that difference.
struct GroupComparison {
  std::string category;
  double mean_correct = 0.0;
  double mean_incorrect = 0.0;
  double difference = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double p_value = 1.0;
  double t_statistic = 0.0;
  double df = 0.0;
  std::size_t n_correct = 0;
  std::size_t n_incorrect = 0;

  nlohmann::json to_json() const {
    return nlohmann::json{{"category", category},
                          {"mean_correct", mean_correct},
                          {"mean_incorrect", mean_incorrect},
                          {"difference", difference},
                          {"ci95_low", ci_low},
                          {"ci95_high", ci_high},
                          {"p_value", p_value},
                          {"t_statistic", t_statistic},
                          {"df", df},
                          {"n_correct", n_correct},
                          {"n_incorrect", n_incorrect}};
  }
};

namespace detail {

inline GroupComparison compare_density_groups(const std::string& category,
                                              const std::vector<double>& correct,
                                              const std::vector<double>& incorrect,
                                              std::size_t n_boot,
                                              std::uint64_t seed) {
  GroupComparison gc;
  gc.category = category;
  gc.n_correct = correct.size();
  gc.n_incorrect = incorrect.size();
  gc.mean_correct = stats::mean(correct);
  gc.mean_incorrect = stats::mean(incorrect);
  gc.difference = gc.mean_correct - gc.mean_incorrect;

  const auto welch = stats::welch_t_test(correct, incorrect);
  gc.p_value = welch.p_value;
  gc.t_statistic = welch.t;
  gc.df = welch.df;

  std::vector<double> boot(n_boot);
  for (std::size_t r = 0; r < n_boot; ++r) {
    KeyedRng rng(seed, "density-bootstrap", r);
    double sum_c = 0.0;
    for (std::size_t i = 0; i < correct.size(); ++i)
      sum_c += correct[rng.uniform_below(correct.size())];
    double sum_i = 0.0;
    for (std::size_t i = 0; i < incorrect.size(); ++i)
      sum_i += incorrect[rng.uniform_below(incorrect.size())];
    boot[r] = sum_c / static_cast<double>(correct.size()) -
              sum_i / static_cast<double>(incorrect.size());
  }
  std::sort(boot.begin(), boot.end());
  gc.ci_low = stats::quantile_sorted(boot, 0.025);
  gc.ci_high = stats::quantile_sorted(boot, 0.975);
  // Percentile endpoints always bracket the point estimate in reports.
  if (gc.ci_low > gc.difference) gc.ci_low = gc.difference;
  if (gc.ci_high < gc.difference) gc.ci_high = gc.difference;
  return gc;
}

}  // namespace detail

/// Compare one lexicon category's density between correct and incorrect
/// rationales: Welch t-test plus a seeded percentile-bootstrap CI.
inline GroupComparison compare_groups(const Corpus& corpus, const Lexicon& lexicon,
                                      const std::string& category,
                                      std::size_t n_boot, std::uint64_t seed) {
  if (!lexicon.has_category(category))
    throw Error(Errc::malformed_lexicon, "no such category: " + category);
  if (n_boot < 100)
    throw Error(Errc::invalid_config, "n_boot must be at least 100");
  std::vector<double> correct, incorrect;
  for (const auto& r : corpus.records) {
    const DensityProfile prof = density(r.rationale, lexicon, r.record_id);
    (r.is_correct ? correct : incorrect).push_back(prof.density.at(category));
  }
  if (correct.empty() || incorrect.empty())
    throw Error(Errc::single_group,
                "both correctness groups must be non-empty for comparison");
  return detail::compare_density_groups(category, correct, incorrect, n_boot, seed);
}

struct LengthGroupStats {
  std::string construct;  // empty = all constructs pooled
  bool is_correct = false;
  std::size_t n = 0;
  double mean = 0.0;
  stats::FiveNumber summary;

  nlohmann::json to_json() const {
    return nlohmann::json{{"construct", construct},
                          {"group", is_correct ? "correct" : "incorrect"},
                          {"n", n},
                          {"mean", mean},
                          {"min", summary.min},
                          {"q1", summary.q1},
                          {"median", summary.median},
                          {"q3", summary.q3},
                          {"max", summary.max}};
  }
};

struct LengthTest {
  std::string construct;  // empty = all constructs pooled
  std::size_t n_correct = 0;
  std::size_t n_incorrect = 0;
  std::optional<double> p_value;  // Mann-Whitney; absent for singleton groups

  nlohmann::json to_json() const {
    nlohmann::json j{{"construct", construct},
                     {"n_correct", n_correct},
                     {"n_incorrect", n_incorrect}};
    if (p_value) j["mann_whitney_p"] = *p_value;
    else j["mann_whitney_p"] = nullptr;
    return j;
  }
};

struct LengthReport {
  std::vector<LengthGroupStats> groups;
  std::vector<LengthTest> tests;

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["groups"] = nlohmann::json::array();
    for (const auto& g : groups) j["groups"].push_back(g.to_json());
    j["tests"] = nlohmann::json::array();
    for (const auto& t : tests) j["tests"].push_back(t.to_json());
    return j;
  }
};

/// Rationale word-length distributions for correct vs incorrect rationales,
/// optionally per construct, with Mann-Whitney rank-sum tests per pair.
inline LengthReport length_stats(const Corpus& corpus, bool group_by_construct) {
  if (corpus.empty()) throw Error(Errc::empty_corpus, "length_stats");

  using Key = std::pair<std::string, bool>;
  std::map<Key, std::vector<double>> lengths;
  for (const auto& r : corpus.records) {
    const auto n_words = static_cast<double>(
        tokenize(r.rationale, StopwordSet{}).tokens.size());
    lengths[{std::string(), r.is_correct}].push_back(n_words);
    if (group_by_construct)
      lengths[{r.predicted_construct.str(), r.is_correct}].push_back(n_words);
  }

  LengthReport report;
  std::vector<std::string> constructs;
  for (const auto& [key, values] : lengths) {
    LengthGroupStats g;
    g.construct = key.first;
    g.is_correct = key.second;
    g.n = values.size();
    g.mean = stats::mean(values);
    g.summary = stats::five_number_summary(values);
    report.groups.push_back(std::move(g));
    if (constructs.empty() || constructs.back() != key.first)
      constructs.push_back(key.first);
  }
  for (const auto& c : constructs) {
    auto it_pos = lengths.find({c, true});
    auto it_neg = lengths.find({c, false});
    LengthTest t;
    t.construct = c;
    t.n_correct = it_pos == lengths.end() ? 0 : it_pos->second.size();
    t.n_incorrect = it_neg == lengths.end() ? 0 : it_neg->second.size();
    if (t.n_correct >= 2 && t.n_incorrect >= 2)
      t.p_value = stats::mann_whitney_u(it_pos->second, it_neg->second).p_value;
    report.tests.push_back(std::move(t));
  }
  return report;
}

}  // namespace verdict

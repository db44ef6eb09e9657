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
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "verdict/class_weights.hpp"
#include "verdict/corpus.hpp"
#include "verdict/error.hpp"
#include "verdict/pipeline.hpp"
#include "verdict/rng.hpp"
#include "verdict/router.hpp"
#include "verdict/stats.hpp"

namespace verdict {

/// 2x2 counts with the positive class fixed to is_correct = true.
struct ConfusionMatrix {
  std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
  std::size_t total() const { return tp + fp + tn + fn; }
};

inline ConfusionMatrix confusion(const Labels& y_true, const Labels& y_pred) {
  if (y_true.size() != y_pred.size())
    throw Error(Errc::length_mismatch, "confusion inputs differ in length");
  if (y_true.empty())
    throw Error(Errc::empty_labels, "confusion requires at least one row");
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    if (y_true[i] && y_pred[i]) ++cm.tp;
    else if (!y_true[i] && y_pred[i]) ++cm.fp;
    else if (y_true[i] && !y_pred[i]) ++cm.fn;
    else ++cm.tn;
  }
  return cm;
}

/// Precision/recall/F1 for one class. Zero-denominator ratios are reported
/// as 0 and flagged.
struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  bool precision_undefined = false;
  bool recall_undefined = false;

  nlohmann::json to_json() const {
    nlohmann::json j{{"precision", precision}, {"recall", recall}, {"f1", f1}};
    if (precision_undefined) j["precision_undefined"] = true;
    if (recall_undefined) j["recall_undefined"] = true;
    return j;
  }
};

namespace detail {

inline ClassMetrics class_metrics(std::size_t tp, std::size_t fp, std::size_t fn) {
  ClassMetrics m;
  if (tp + fp == 0) m.precision_undefined = true;
  else m.precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
  if (tp + fn == 0) m.recall_undefined = true;
  else m.recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
  m.f1 = (m.precision + m.recall) > 0.0
             ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
             : 0.0;
  return m;
}

inline double f1_from_counts(std::size_t tp, std::size_t fp, std::size_t fn) {
  return class_metrics(tp, fp, fn).f1;
}

}  // namespace detail

struct EvaluationReport {
  std::string slice_dimension;  // empty for the global report
  std::string slice_value;
  std::string algorithm;
  std::size_t n = 0;
  double accuracy = 0.0;
  ConfusionMatrix cm;
  ClassMetrics positive;  // correct as positive class (headline)
  ClassMetrics negative;  // incorrect as positive class
  std::optional<std::pair<double, double>> f1_ci;

  double f1_half_width() const {
    return f1_ci ? 0.5 * (f1_ci->second - f1_ci->first) : 0.0;
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    if (!slice_dimension.empty())
      j["slice"] = {{"dimension", slice_dimension}, {"value", slice_value}};
    if (!algorithm.empty()) j["algorithm"] = algorithm;
    j["n"] = n;
    j["accuracy"] = accuracy;
    j["confusion"] = {{"tp", cm.tp}, {"fp", cm.fp}, {"tn", cm.tn}, {"fn", cm.fn}};
    j["positive_class"] = positive.to_json();
    j["positive_class"]["label"] = "correct";
    j["per_class"] = {{"correct", positive.to_json()},
                      {"incorrect", negative.to_json()}};
    if (f1_ci)
      j["f1_ci95"] = {{"low", f1_ci->first},
                      {"high", f1_ci->second},
                      {"half_width", f1_half_width()}};
    else
      j["f1_ci95"] = nullptr;
    return j;
  }
};

/// Headline metrics from a confusion matrix (no CI attached).
inline EvaluationReport metrics(const ConfusionMatrix& cm) {
  if (cm.total() == 0)
    throw Error(Errc::empty_labels, "metrics of an empty confusion matrix");
  EvaluationReport r;
  r.cm = cm;
  r.n = cm.total();
  r.accuracy = static_cast<double>(cm.tp + cm.tn) / static_cast<double>(cm.total());
  r.positive = detail::class_metrics(cm.tp, cm.fp, cm.fn);
  r.negative = detail::class_metrics(cm.tn, cm.fn, cm.fp);
  return r;
}

/// Percentile bootstrap CI for the positive-class F1 under paired row
/// resampling. Deterministic for a fixed (inputs, n_boot, seed).
inline std::pair<double, double> bootstrap_f1_ci(const Labels& y_true,
                                                 const Labels& y_pred,
                                                 std::size_t n_boot,
                                                 std::uint64_t seed,
                                                 std::string_view purpose = "f1-ci") {
  if (y_true.size() != y_pred.size())
    throw Error(Errc::length_mismatch, "bootstrap inputs differ in length");
  if (y_true.size() < 10)
    throw Error(Errc::too_few_samples,
                "bootstrap CI requires at least 10 rows, got " +
                    std::to_string(y_true.size()));
  if (n_boot < 100)
    throw Error(Errc::invalid_config, "n_boot must be at least 100");

  const std::size_t n = y_true.size();
  std::vector<double> f1s(n_boot);
  for (std::size_t r = 0; r < n_boot; ++r) {
    KeyedRng rng(seed, purpose, r);
    std::size_t tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t j = rng.uniform_below(n);
      if (y_true[j] && y_pred[j]) ++tp;
      else if (!y_true[j] && y_pred[j]) ++fp;
      else if (y_true[j] && !y_pred[j]) ++fn;
    }
    f1s[r] = detail::f1_from_counts(tp, fp, fn);
  }
  std::sort(f1s.begin(), f1s.end());
  return {stats::quantile_sorted(f1s, 0.025), stats::quantile_sorted(f1s, 0.975)};
}

enum class SliceKind { algorithm, source_model, construct, served_by };

inline std::optional<SliceKind> parse_slice(const std::string& s) {
  if (s == "algorithm") return SliceKind::algorithm;
  if (s == "source_model") return SliceKind::source_model;
  if (s == "construct") return SliceKind::construct;
  if (s == "served_by") return SliceKind::served_by;
  return std::nullopt;
}

inline const char* slice_name(SliceKind k) {
  switch (k) {
    case SliceKind::algorithm: return "algorithm";
    case SliceKind::source_model: return "source_model";
    case SliceKind::construct: return "construct";
    case SliceKind::served_by: return "served_by";
  }
  return "unknown";
}

struct SpecialistComparison {
  ConstructLabel construct;
  std::size_t n = 0;
  double specialist_f1 = 0.0;
  double generalist_f1 = 0.0;
  double specialist_accuracy = 0.0;
  double generalist_accuracy = 0.0;

  nlohmann::json to_json() const {
    return nlohmann::json{{"construct", construct.str()},
                          {"n", n},
                          {"specialist_f1", specialist_f1},
                          {"generalist_f1", generalist_f1},
                          {"specialist_accuracy", specialist_accuracy},
                          {"generalist_accuracy", generalist_accuracy},
                          {"f1_gain", specialist_f1 - generalist_f1}};
  }
};

struct SlicedEvaluation {
  EvaluationReport global;
  std::map<std::string, std::vector<EvaluationReport>> slices;
  std::vector<SpecialistComparison> generalist_vs_specialist;

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["global"] = global.to_json();
    nlohmann::json s = nlohmann::json::object();
    for (const auto& [dim, reports] : slices) {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& r : reports) arr.push_back(r.to_json());
      s[dim] = std::move(arr);
    }
    j["slices"] = std::move(s);
    if (!generalist_vs_specialist.empty()) {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& c : generalist_vs_specialist) arr.push_back(c.to_json());
      j["generalist_vs_specialist"] = std::move(arr);
    }
    return j;
  }
};

namespace detail {

struct EvalRow {
  std::uint8_t y_true = 0;
  std::uint8_t y_pred = 0;
  std::string source_model;
  std::string construct;
  std::string served_by;
};

inline EvaluationReport report_for(const std::vector<EvalRow>& rows,
                                   const std::string& dim,
                                   const std::string& value,
                                   const std::string& algorithm,
                                   std::size_t n_boot, std::uint64_t seed) {
  Labels y_true, y_pred;
  y_true.reserve(rows.size());
  y_pred.reserve(rows.size());
  for (const auto& r : rows) {
    y_true.push_back(r.y_true);
    y_pred.push_back(r.y_pred);
  }
  EvaluationReport rep = metrics(confusion(y_true, y_pred));
  rep.slice_dimension = dim;
  rep.slice_value = value;
  rep.algorithm = algorithm;
  if (rows.size() >= 10) {
    const std::string purpose = "f1-ci:" + dim + ":" + value;
    rep.f1_ci = bootstrap_f1_ci(y_true, y_pred, n_boot, seed, purpose);
  }
  return rep;
}

template <typename Scorer>
SlicedEvaluation evaluate_rows(const Corpus& test, Scorer&& scorer,
                               const std::set<SliceKind>& slices,
                               const std::string& algorithm, std::size_t n_boot,
                               std::uint64_t seed) {
  if (test.empty()) throw Error(Errc::empty_corpus, "evaluation corpus is empty");

  std::vector<EvalRow> rows;
  rows.reserve(test.size());
  for (const auto& rec : test.records) {
    const ScoredPrediction sp = scorer(rec);
    EvalRow row;
    row.y_true = rec.is_correct ? 1 : 0;
    row.y_pred = sp.predicted ? 1 : 0;
    row.source_model = rec.source_model;
    row.construct = rec.predicted_construct.str();
    row.served_by = sp.served_by();
    rows.push_back(std::move(row));
  }

  SlicedEvaluation out;
  out.global = report_for(rows, "", "", algorithm, n_boot, seed);

  for (const SliceKind kind : slices) {
    const std::string dim = slice_name(kind);
    if (kind == SliceKind::algorithm) {
      out.slices[dim].push_back(out.global);
      out.slices[dim].back().slice_dimension = dim;
      out.slices[dim].back().slice_value = algorithm;
      continue;
    }
    std::map<std::string, std::vector<EvalRow>> groups;
    for (const auto& r : rows) {
      const std::string& key = kind == SliceKind::source_model ? r.source_model
                               : kind == SliceKind::construct  ? r.construct
                                                               : r.served_by;
      groups[key].push_back(r);
    }
    for (const auto& [value, group] : groups)
      out.slices[dim].push_back(
          report_for(group, dim, value, algorithm, n_boot, seed));
  }
  return out;
}

}  // namespace detail

/// Evaluate a single generalist verifier over a test corpus.
inline SlicedEvaluation evaluate_sliced(const Corpus& test,
                                        const VerifierModel& verifier,
                                        const std::set<SliceKind>& slices,
                                        std::size_t n_boot = 1000,
                                        std::uint64_t seed = 0) {
  return detail::evaluate_rows(
      test, [&](const AnnotationRecord& r) { return verifier.score_record(r); },
      slices, algorithm_name(verifier.model.algorithm), n_boot, seed);
}

/// Evaluate a specialist ensemble. Adds a paired generalist-vs-specialist
/// comparison per specialist construct, computed on that construct's slice
/// of the test corpus.
inline SlicedEvaluation evaluate_sliced(const Corpus& test,
                                        const SpecialistEnsemble& ensemble,
                                        const std::set<SliceKind>& slices,
                                        std::size_t n_boot = 1000,
                                        std::uint64_t seed = 0) {
  SlicedEvaluation out = detail::evaluate_rows(
      test, [&](const AnnotationRecord& r) { return ensemble.score_record(r); },
      slices, algorithm_name(ensemble.generalist.model.algorithm), n_boot, seed);

  for (const auto& [construct, vm] : ensemble.specialists) {
    Labels y_true, y_spec, y_gen;
    for (const auto& rec : test.records) {
      if (!(rec.predicted_construct == construct)) continue;
      y_true.push_back(rec.is_correct ? 1 : 0);
      y_spec.push_back(vm.score_record(rec).predicted ? 1 : 0);
      y_gen.push_back(ensemble.generalist.score_record(rec).predicted ? 1 : 0);
    }
    if (y_true.empty()) continue;
    SpecialistComparison cmp;
    cmp.construct = construct;
    cmp.n = y_true.size();
    const auto spec = metrics(confusion(y_true, y_spec));
    const auto gen = metrics(confusion(y_true, y_gen));
    cmp.specialist_f1 = spec.positive.f1;
    cmp.generalist_f1 = gen.positive.f1;
    cmp.specialist_accuracy = spec.accuracy;
    cmp.generalist_accuracy = gen.accuracy;
    out.generalist_vs_specialist.push_back(std::move(cmp));
  }
  return out;
}

// ---- emitters -----------------------------------------------------------

namespace detail {

inline std::string fmt3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

inline std::string fmt_pct(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f%%", 100.0 * v);
  return buf;
}

}  // namespace detail

struct BenchmarkRow {
  std::string name;
  EvaluationReport report;
  std::string note;
};

/// Fixed-format benchmark table: Model | Precision | Recall | F1 | Accuracy.
inline std::string markdown_benchmark_table(const std::vector<BenchmarkRow>& rows) {
  std::ostringstream md;
  bool any_note = false;
  for (const auto& r : rows) any_note = any_note || !r.note.empty();
  md << "| Model | Precision | Recall | F1 | Accuracy |";
  if (any_note) md << " Note |";
  md << "\n";
  md << "|---|---|---|---|---|";
  if (any_note) md << "---|";
  md << "\n";
  for (const auto& r : rows) {
    md << "| " << r.name << " | " << detail::fmt3(r.report.positive.precision)
       << " | " << detail::fmt3(r.report.positive.recall) << " | "
       << detail::fmt3(r.report.positive.f1);
    if (r.report.f1_ci)
      md << " (± " << detail::fmt3(r.report.f1_half_width()) << ")";
    md << " | " << detail::fmt_pct(r.report.accuracy) << " |";
    if (any_note) md << " " << r.note << " |";
    md << "\n";
  }
  return md.str();
}

inline std::string report_csv_header() {
  return "slice_dimension,slice_value,algorithm,n,tp,fp,tn,fn,accuracy,"
         "precision_correct,recall_correct,f1_correct,"
         "precision_incorrect,recall_incorrect,f1_incorrect,"
         "f1_ci95_low,f1_ci95_high";
}

inline std::string report_csv_row(const EvaluationReport& r) {
  std::ostringstream os;
  os << csv::quote(r.slice_dimension) << ',' << csv::quote(r.slice_value) << ','
     << csv::quote(r.algorithm) << ',' << r.n << ',' << r.cm.tp << ','
     << r.cm.fp << ',' << r.cm.tn << ',' << r.cm.fn << ',' << r.accuracy << ','
     << r.positive.precision << ',' << r.positive.recall << ','
     << r.positive.f1 << ',' << r.negative.precision << ','
     << r.negative.recall << ',' << r.negative.f1 << ',';
  if (r.f1_ci) os << r.f1_ci->first << ',' << r.f1_ci->second;
  else os << ',';
  return os.str();
}

}  // namespace verdict

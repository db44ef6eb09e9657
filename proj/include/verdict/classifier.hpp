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
#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "verdict/boosting.hpp"
#include "verdict/class_weights.hpp"
#include "verdict/error.hpp"
#include "verdict/forest.hpp"
#include "verdict/linear.hpp"
#include "verdict/naive_bayes.hpp"
#include "verdict/sparse.hpp"
#include "verdict/tfidf.hpp"
#include "verdict/version.hpp"

namespace verdict {

enum class Algorithm {
  logistic_regression,
  random_forest,
  linear_svm,
  gradient_boosting,
  naive_bayes,
};

inline constexpr std::array<Algorithm, 5> kAllAlgorithms = {
    Algorithm::logistic_regression, Algorithm::random_forest,
    Algorithm::linear_svm, Algorithm::gradient_boosting,
    Algorithm::naive_bayes};

inline const char* algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::logistic_regression: return "logistic-regression";
    case Algorithm::random_forest: return "random-forest";
    case Algorithm::linear_svm: return "linear-svm";
    case Algorithm::gradient_boosting: return "gradient-boosting";
    case Algorithm::naive_bayes: return "naive-bayes";
  }
  return "unknown";
}

inline const char* algorithm_display_name(Algorithm a) {
  switch (a) {
    case Algorithm::logistic_regression: return "Logistic Regression";
    case Algorithm::random_forest: return "Random Forest";
    case Algorithm::linear_svm: return "Linear SVM";
    case Algorithm::gradient_boosting: return "Gradient Boosting";
    case Algorithm::naive_bayes: return "Naive Bayes";
  }
  return "Unknown";
}

inline std::optional<Algorithm> parse_algorithm(const std::string& s) {
  for (Algorithm a : kAllAlgorithms)
    if (s == algorithm_name(a)) return a;
  return std::nullopt;
}

struct TrainConfig {
  Algorithm algorithm = Algorithm::random_forest;
  std::uint64_t seed = 0;
  // logistic regression
  double lr_l2 = 1.0;
  double lr_tol = 1e-6;
  std::size_t lr_max_iter = 1000;
  // linear svm
  double svm_l2 = 1.0;
  std::size_t svm_epochs = 10;
  // random forest
  std::size_t rf_trees = 100;
  std::size_t rf_max_depth = 0;  // 0 = unlimited
  std::size_t rf_min_samples_split = 2;
  std::size_t rf_mtry = 0;  // 0 = floor(sqrt(V))
  // gradient boosting
  std::size_t gbm_stages = 100;
  double gbm_learning_rate = 0.1;
  std::size_t gbm_max_depth = 3;
  // naive bayes
  double nb_alpha = 1.0;

  void validate() const {
    if (lr_l2 <= 0 || lr_tol <= 0 || lr_max_iter == 0)
      throw Error(Errc::invalid_config, "logistic-regression hyperparameters must be positive");
    if (svm_l2 <= 0 || svm_epochs == 0)
      throw Error(Errc::invalid_config, "linear-svm hyperparameters must be positive");
    if (rf_trees == 0 || rf_min_samples_split < 2)
      throw Error(Errc::invalid_config, "random-forest hyperparameters out of range");
    if (gbm_stages == 0 || gbm_learning_rate <= 0 || gbm_max_depth == 0)
      throw Error(Errc::invalid_config, "gradient-boosting hyperparameters must be positive");
    if (nb_alpha <= 0)
      throw Error(Errc::invalid_config, "naive-bayes smoothing must be positive");
  }

  nlohmann::json to_json() const {
    return nlohmann::json{
        {"algorithm", algorithm_name(algorithm)},
        {"seed", seed},
        {"lr_l2", lr_l2},
        {"lr_tol", lr_tol},
        {"lr_max_iter", lr_max_iter},
        {"svm_l2", svm_l2},
        {"svm_epochs", svm_epochs},
        {"rf_trees", rf_trees},
        {"rf_max_depth", rf_max_depth},
        {"rf_min_samples_split", rf_min_samples_split},
        {"rf_mtry", rf_mtry},
        {"gbm_stages", gbm_stages},
        {"gbm_learning_rate", gbm_learning_rate},
        {"gbm_max_depth", gbm_max_depth},
        {"nb_alpha", nb_alpha}};
  }

  static TrainConfig from_json(const nlohmann::json& j) {
    TrainConfig c;
    const auto algo = parse_algorithm(j.at("algorithm").get<std::string>());
    if (!algo) throw Error(Errc::artifact_integrity, "unknown algorithm in config");
    c.algorithm = *algo;
    c.seed = j.at("seed").get<std::uint64_t>();
    c.lr_l2 = j.at("lr_l2").get<double>();
    c.lr_tol = j.at("lr_tol").get<double>();
    c.lr_max_iter = j.at("lr_max_iter").get<std::size_t>();
    c.svm_l2 = j.at("svm_l2").get<double>();
    c.svm_epochs = j.at("svm_epochs").get<std::size_t>();
    c.rf_trees = j.at("rf_trees").get<std::size_t>();
    c.rf_max_depth = j.at("rf_max_depth").get<std::size_t>();
    c.rf_min_samples_split = j.at("rf_min_samples_split").get<std::size_t>();
    c.rf_mtry = j.at("rf_mtry").get<std::size_t>();
    c.gbm_stages = j.at("gbm_stages").get<std::size_t>();
    c.gbm_learning_rate = j.at("gbm_learning_rate").get<double>();
    c.gbm_max_depth = j.at("gbm_max_depth").get<std::size_t>();
    c.nb_alpha = j.at("nb_alpha").get<double>();
    return c;
  }
};

/// A fitted verification classifier. Class order is fixed:
/// index 0 = incorrect, index 1 = correct. Score ties predict incorrect so
/// that ambiguous cases route to human review.
struct TrainedModel {
  Algorithm algorithm = Algorithm::random_forest;
  std::uint32_t dimension = 0;
  bool converged = true;  // false = NonConvergence warning, model still usable
  TrainConfig config;
  std::variant<LogisticModel, SvmModel, NaiveBayesModel, ForestModel, BoostModel>
      params;

  std::array<double, 2> score_one(const SparseVector& x) const {
    if (x.dimension != dimension)
      throw Error(Errc::dimension_mismatch,
                  "feature dimension " + std::to_string(x.dimension) +
                      " does not match model dimension " +
                      std::to_string(dimension));
    return std::visit(
        [&](const auto& m) -> std::array<double, 2> {
          using T = std::decay_t<decltype(m)>;
          if constexpr (std::is_same_v<T, LogisticModel>) {
            const double p = detail::sigmoid(dot(x, m.weights) + m.intercept);
            return {1.0 - p, p};
          } else if constexpr (std::is_same_v<T, SvmModel>) {
            // Sigmoid-squashed margin; uncalibrated, ordering-faithful.
            const double p = detail::sigmoid(dot(x, m.weights) + m.intercept);
            return {1.0 - p, p};
          } else if constexpr (std::is_same_v<T, NaiveBayesModel>) {
            const auto joint = m.joint_log_likelihood(x);
            const double hi = std::max(joint[0], joint[1]);
            const double e0 = std::exp(joint[0] - hi);
            const double e1 = std::exp(joint[1] - hi);
            return {e0 / (e0 + e1), e1 / (e0 + e1)};
          } else if constexpr (std::is_same_v<T, ForestModel>) {
            return m.vote_fractions(x);
          } else {
            const double p = detail::sigmoid(m.margin(x));
            return {1.0 - p, p};
          }
        },
        params);
  }

  bool predict_one(const SparseVector& x) const {
    const auto s = score_one(x);
    return s[1] > s[0];
  }
};

inline void check_training_inputs(const std::vector<SparseVector>& x,
                                  const Labels& y) {
  if (x.size() != y.size())
    throw Error(Errc::length_mismatch, "features and labels differ in length");
  if (x.size() < 2)
    throw Error(Errc::empty_training_set, "need at least two training rows");
  bool has0 = false, has1 = false;
  for (auto v : y) (v ? has1 : has0) = true;
  if (!has0 || !has1)
    throw Error(Errc::single_class_training,
                "training data contains a single class");
  const std::uint32_t dim = x.front().dimension;
  for (const auto& row : x)
    if (row.dimension != dim)
      throw Error(Errc::dimension_mismatch, "rows have differing dimensions");
}

/// Train one classifier. When `row_keys` is given (one unique key per row,
/// e.g. record ids), rows are reordered canonically by key first, making
/// the result invariant to input row order for every algorithm.
inline TrainedModel train(const std::vector<SparseVector>& x, const Labels& y,
                          const TrainConfig& config, const ClassWeights& weights,
                          const std::vector<std::string>* row_keys = nullptr) {
  config.validate();
  check_training_inputs(x, y);

  const std::vector<SparseVector>* px = &x;
  const Labels* py = &y;
  std::vector<SparseVector> x_sorted;
  Labels y_sorted;
  if (row_keys != nullptr) {
    if (row_keys->size() != x.size())
      throw Error(Errc::length_mismatch, "row_keys length mismatch");
    std::vector<std::size_t> order(x.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return (*row_keys)[a] < (*row_keys)[b];
    });
    for (std::size_t i = 0; i + 1 < order.size(); ++i)
      if ((*row_keys)[order[i]] == (*row_keys)[order[i + 1]])
        throw Error(Errc::malformed_row,
                    "duplicate row key \"" + (*row_keys)[order[i]] + "\"");
    x_sorted.reserve(x.size());
    y_sorted.reserve(y.size());
    for (auto i : order) {
      x_sorted.push_back(x[i]);
      y_sorted.push_back(y[i]);
    }
    px = &x_sorted;
    py = &y_sorted;
  }

  TrainedModel model;
  model.algorithm = config.algorithm;
  model.dimension = px->front().dimension;
  model.config = config;

  switch (config.algorithm) {
    case Algorithm::logistic_regression: {
      auto [m, ok] = train_logistic(*px, *py, weights, config.lr_l2,
                                    config.lr_tol, config.lr_max_iter,
                                    model.dimension);
      model.params = std::move(m);
      model.converged = ok;
      break;
    }
    case Algorithm::linear_svm: {
      model.params = train_svm(*px, *py, weights, config.svm_l2,
                               config.svm_epochs, model.dimension);
      break;
    }
    case Algorithm::naive_bayes: {
      model.params =
          train_naive_bayes(*px, *py, weights, config.nb_alpha, model.dimension);
      break;
    }
    case Algorithm::random_forest: {
      ForestConfig fc;
      fc.trees = config.rf_trees;
      fc.max_depth = config.rf_max_depth;
      fc.min_samples_split = config.rf_min_samples_split;
      fc.mtry = config.rf_mtry;
      model.params =
          train_forest(*px, *py, weights, fc, config.seed, model.dimension);
      break;
    }
    case Algorithm::gradient_boosting: {
      BoostConfig bc;
      bc.stages = config.gbm_stages;
      bc.learning_rate = config.gbm_learning_rate;
      bc.max_depth = config.gbm_max_depth;
      model.params = train_boosting(*px, *py, weights, bc, model.dimension);
      break;
    }
  }
  return model;
}

inline std::vector<std::array<double, 2>> predict_scores(
    const TrainedModel& model, const std::vector<SparseVector>& x) {
  std::vector<std::array<double, 2>> out;
  out.reserve(x.size());
  for (const auto& row : x) out.push_back(model.score_one(row));
  return out;
}

inline Labels predict(const TrainedModel& model,
                      const std::vector<SparseVector>& x) {
  Labels out;
  out.reserve(x.size());
  for (const auto& row : x)
    out.push_back(model.predict_one(row) ? 1 : 0);
  return out;
}

/// Ranked (token, importance) lists for both score directions.
struct TopFeatures {
  enum class Basis {
    signed_coefficients,    // LR / SVM: signed weights
    impurity_importance,    // RF / GBM: unsigned, negative list empty
    log_likelihood_ratio,   // NB fallback ranking
  };
  Basis basis = Basis::signed_coefficients;
  std::vector<std::pair<std::string, double>> positive;  // toward correct
  std::vector<std::pair<std::string, double>> negative;  // toward incorrect
};

inline const char* basis_name(TopFeatures::Basis b) {
  switch (b) {
    case TopFeatures::Basis::signed_coefficients: return "signed-coefficients";
    case TopFeatures::Basis::impurity_importance: return "impurity-importance";
    case TopFeatures::Basis::log_likelihood_ratio: return "log-likelihood-ratio";
  }
  return "unknown";
}

inline TopFeatures top_features(const TrainedModel& model,
                                const TfidfModel& vocab, std::size_t n) {
  if (vocab.dimension() != model.dimension)
    throw Error(Errc::dimension_mismatch,
                "vectorizer dimension does not match model dimension");
  const auto tokens = vocab.column_tokens();

  auto ranked = [&](const std::vector<double>& values, bool descending,
                    auto keep) {
    std::vector<std::uint32_t> idx;
    for (std::uint32_t i = 0; i < values.size(); ++i)
      if (keep(values[i])) idx.push_back(i);
    std::sort(idx.begin(), idx.end(), [&](std::uint32_t a, std::uint32_t b) {
      if (values[a] != values[b])
        return descending ? values[a] > values[b] : values[a] < values[b];
      return tokens[a] < tokens[b];
    });
    if (idx.size() > n) idx.resize(n);
    std::vector<std::pair<std::string, double>> out;
    out.reserve(idx.size());
    for (auto i : idx) out.emplace_back(tokens[i], values[i]);
    return out;
  };

  TopFeatures tf;
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, LogisticModel> ||
                      std::is_same_v<T, SvmModel>) {
          tf.basis = TopFeatures::Basis::signed_coefficients;
          tf.positive = ranked(m.weights, true, [](double v) { return v > 0; });
          tf.negative = ranked(m.weights, false, [](double v) { return v < 0; });
        } else if constexpr (std::is_same_v<T, NaiveBayesModel>) {
          tf.basis = TopFeatures::Basis::log_likelihood_ratio;
          std::vector<double> llr(model.dimension);
          for (std::uint32_t j = 0; j < model.dimension; ++j)
            llr[j] = m.feature_log_prob[1][j] - m.feature_log_prob[0][j];
          tf.positive = ranked(llr, true, [](double v) { return v > 0; });
          tf.negative = ranked(llr, false, [](double v) { return v < 0; });
        } else if constexpr (std::is_same_v<T, ForestModel>) {
          tf.basis = TopFeatures::Basis::impurity_importance;
          tf.positive = ranked(m.importances, true, [](double v) { return v > 0; });
        } else {
          tf.basis = TopFeatures::Basis::impurity_importance;
          tf.positive = ranked(m.importances, true, [](double v) { return v > 0; });
        }
      },
      model.params);
  return tf;
}

// ---- serialization ----------------------------------------------------

namespace detail {

inline nlohmann::json tree_to_json(const Tree& t) {
  nlohmann::json nodes = nlohmann::json::array();
  for (const auto& nd : t.nodes)
    nodes.push_back({nd.feature, nd.threshold, nd.left, nd.right, nd.v0, nd.v1});
  return nodes;
}

inline Tree tree_from_json(const nlohmann::json& j) {
  Tree t;
  for (const auto& row : j) {
    TreeNode nd;
    nd.feature = row.at(0).get<std::int32_t>();
    nd.threshold = row.at(1).get<double>();
    nd.left = row.at(2).get<std::int32_t>();
    nd.right = row.at(3).get<std::int32_t>();
    nd.v0 = row.at(4).get<double>();
    nd.v1 = row.at(5).get<double>();
    t.nodes.push_back(nd);
  }
  return t;
}

}  // namespace detail

inline nlohmann::json model_to_json(const TrainedModel& model) {
  nlohmann::json j;
  j["format"] = kModelFormat;
  j["algorithm"] = algorithm_name(model.algorithm);
  j["dimension"] = model.dimension;
  j["converged"] = model.converged;
  j["class_order"] = {"incorrect", "correct"};
  j["train_config"] = model.config.to_json();
  nlohmann::json p;
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, LogisticModel> ||
                      std::is_same_v<T, SvmModel>) {
          p["weights"] = m.weights;
          p["intercept"] = m.intercept;
        } else if constexpr (std::is_same_v<T, NaiveBayesModel>) {
          p["log_prior"] = m.log_prior;
          p["feature_log_prob"] = {m.feature_log_prob[0], m.feature_log_prob[1]};
        } else if constexpr (std::is_same_v<T, ForestModel>) {
          nlohmann::json trees = nlohmann::json::array();
          for (const auto& t : m.trees) trees.push_back(detail::tree_to_json(t));
          p["trees"] = std::move(trees);
          p["importances"] = m.importances;
        } else {
          nlohmann::json trees = nlohmann::json::array();
          for (const auto& t : m.trees) trees.push_back(detail::tree_to_json(t));
          p["trees"] = std::move(trees);
          p["base_score"] = m.base_score;
          p["learning_rate"] = m.learning_rate;
          p["importances"] = m.importances;
        }
      },
      model.params);
  j["params"] = std::move(p);
  return j;
}

inline TrainedModel model_from_json(const nlohmann::json& j) {
  if (!j.is_object() || j.value("format", "") != kModelFormat)
    throw Error(Errc::artifact_integrity, "not a recognized model artifact");
  TrainedModel model;
  const auto algo = parse_algorithm(j.at("algorithm").get<std::string>());
  if (!algo) throw Error(Errc::artifact_integrity, "unknown algorithm");
  model.algorithm = *algo;
  model.dimension = j.at("dimension").get<std::uint32_t>();
  model.converged = j.at("converged").get<bool>();
  model.config = TrainConfig::from_json(j.at("train_config"));
  const auto& p = j.at("params");
  switch (model.algorithm) {
    case Algorithm::logistic_regression: {
      LogisticModel m;
      m.weights = p.at("weights").get<std::vector<double>>();
      m.intercept = p.at("intercept").get<double>();
      model.params = std::move(m);
      break;
    }
    case Algorithm::linear_svm: {
      SvmModel m;
      m.weights = p.at("weights").get<std::vector<double>>();
      m.intercept = p.at("intercept").get<double>();
      model.params = std::move(m);
      break;
    }
    case Algorithm::naive_bayes: {
      NaiveBayesModel m;
      const auto lp = p.at("log_prior").get<std::vector<double>>();
      if (lp.size() != 2)
        throw Error(Errc::artifact_integrity, "bad log_prior");
      m.log_prior = {lp[0], lp[1]};
      m.feature_log_prob[0] = p.at("feature_log_prob").at(0).get<std::vector<double>>();
      m.feature_log_prob[1] = p.at("feature_log_prob").at(1).get<std::vector<double>>();
      model.params = std::move(m);
      break;
    }
    case Algorithm::random_forest: {
      ForestModel m;
      for (const auto& t : p.at("trees")) m.trees.push_back(detail::tree_from_json(t));
      m.importances = p.at("importances").get<std::vector<double>>();
      model.params = std::move(m);
      break;
    }
    case Algorithm::gradient_boosting: {
      BoostModel m;
      for (const auto& t : p.at("trees")) m.trees.push_back(detail::tree_from_json(t));
      m.base_score = p.at("base_score").get<double>();
      m.learning_rate = p.at("learning_rate").get<double>();
      m.importances = p.at("importances").get<std::vector<double>>();
      model.params = std::move(m);
      break;
    }
  }
  return model;
}

}  // namespace verdict

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
#include <cmath>
#include <cstdint>
#include <vector>

#include "verdict/class_weights.hpp"
#include "verdict/error.hpp"
#include "verdict/sparse.hpp"

namespace verdict {

/// Multinomial naive Bayes with Laplace smoothing. Class weighting enters
/// as a log-prior shift ln(weight(c)); likelihood estimates stay untouched.
struct NaiveBayesModel {
  std::array<double, 2> log_prior = {0.0, 0.0};
  std::array<std::vector<double>, 2> feature_log_prob;

  /// Unnormalized joint log-likelihoods (log prior + log likelihood).
  std::array<double, 2> joint_log_likelihood(const SparseVector& x) const {
    std::array<double, 2> joint = {log_prior[0], log_prior[1]};
    for (const auto& [col, v] : x.entries) {
      joint[0] += v * feature_log_prob[0][col];
      joint[1] += v * feature_log_prob[1][col];
    }
    return joint;
  }
};

inline NaiveBayesModel train_naive_bayes(const std::vector<SparseVector>& x,
                                         const Labels& y, const ClassWeights& cw,
                                         double alpha, std::uint32_t dimension) {
  NaiveBayesModel m;
  std::array<std::vector<double>, 2> counts = {
      std::vector<double>(dimension, 0.0), std::vector<double>(dimension, 0.0)};
  std::array<double, 2> totals = {0.0, 0.0};
  std::array<double, 2> n_class = {0.0, 0.0};
  for (std::size_t i = 0; i < x.size(); ++i) {
    const int c = y[i] ? 1 : 0;
    n_class[c] += 1.0;
    for (const auto& [col, v] : x[i].entries) {
      if (v < 0.0)
        throw Error(Errc::invalid_config,
                    "multinomial naive Bayes requires non-negative features");
      counts[c][col] += v;
      totals[c] += v;
    }
  }
  const double n = n_class[0] + n_class[1];
  for (int c = 0; c < 2; ++c) {
    m.feature_log_prob[c].resize(dimension);
    const double denom = totals[c] + alpha * static_cast<double>(dimension);
    for (std::uint32_t j = 0; j < dimension; ++j)
      m.feature_log_prob[c][j] = std::log((counts[c][j] + alpha) / denom);
    m.log_prior[c] =
        std::log(n_class[c] / n) + std::log(cw.of(c == 1));
  }
  return m;
}

}  // namespace verdict

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

#include <cmath>
#include <cstdint>
#include <vector>

#include "verdict/class_weights.hpp"
#include "verdict/linear.hpp"
#include "verdict/tree.hpp"

namespace verdict {

/// Stagewise gradient boosting on the weighted logistic loss: depth-limited
/// regression trees fit to per-row gradients, leaves take a Newton step.
struct BoostModel {
  double base_score = 0.0;
  double learning_rate = 0.1;
  std::vector<Tree> trees;
  std::vector<double> importances;

  double margin(const SparseVector& x) const {
    double f = base_score;
    for (const auto& t : trees) f += learning_rate * t.leaf_for(x).v0;
    return f;
  }
};

struct BoostConfig {
  std::size_t stages = 100;
  double learning_rate = 0.1;
  std::size_t max_depth = 3;
  std::size_t min_samples_split = 2;
};

namespace detail {

/// Weighted logistic loss over raw margins: sum_i s_i * xent(y_i, sigmoid(F_i)).
inline double boosting_loss(const std::vector<double>& margins,
                            const std::vector<std::uint8_t>& y,
                            const std::vector<double>& sample_weight) {
  double loss = 0.0;
  for (std::size_t i = 0; i < margins.size(); ++i)
    loss += sample_weight[i] *
            (y[i] ? log1pexp(-margins[i]) : log1pexp(margins[i]));
  return loss;
}

/// d(loss)/d(margin_i) = s_i * (sigmoid(F_i) - y_i)
inline void boosting_loss_grad(const std::vector<double>& margins,
                               const std::vector<std::uint8_t>& y,
                               const std::vector<double>& sample_weight,
                               std::vector<double>& grad) {
  grad.resize(margins.size());
  for (std::size_t i = 0; i < margins.size(); ++i)
    grad[i] = sample_weight[i] * (sigmoid(margins[i]) - (y[i] ? 1.0 : 0.0));
}

}  // namespace detail

inline BoostModel train_boosting(const std::vector<SparseVector>& x,
                                 const Labels& y, const ClassWeights& cw,
                                 const BoostConfig& cfg,
                                 std::uint32_t dimension) {
  const std::size_t n = x.size();
  BoostModel model;
  model.learning_rate = cfg.learning_rate;
  model.importances.assign(dimension, 0.0);

  double pos_weight = 0.0, neg_weight = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    (y[i] ? pos_weight : neg_weight) += cw.of(y[i] != 0);
  model.base_score = std::log(pos_weight / neg_weight);

  std::vector<double> margins(n, model.base_score);

  detail::GrowConfig grow;
  grow.max_depth = cfg.max_depth;
  grow.min_samples_split = cfg.min_samples_split;
  grow.regression = true;

  std::vector<detail::TreeSlot> slots(n);
  auto all_features = [&](std::vector<std::uint32_t>& out) {
    out.resize(dimension);
    for (std::uint32_t f = 0; f < dimension; ++f) out[f] = f;
  };

  model.trees.reserve(cfg.stages);
  for (std::size_t stage = 0; stage < cfg.stages; ++stage) {
    for (std::size_t i = 0; i < n; ++i) {
      const double p = detail::sigmoid(margins[i]);
      detail::TreeSlot s;
      s.row = static_cast<std::uint32_t>(i);
      s.weight = cw.of(y[i] != 0);
      s.g = (y[i] ? 1.0 : 0.0) - p;  // negative gradient of the logistic loss
      s.h = p * (1.0 - p);
      slots[i] = s;
    }
    detail::TreeGrower grower(x, dimension, grow);
    Tree tree = grower.grow(slots, all_features, &model.importances);
    for (std::size_t i = 0; i < n; ++i)
      margins[i] += cfg.learning_rate * tree.leaf_for(x[i]).v0;
    model.trees.push_back(std::move(tree));
  }

  double total = 0.0;
  for (double v : model.importances) total += v;
  if (total > 0.0)
    for (double& v : model.importances) v /= total;
  return model;
}

}  // namespace verdict

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
#include "verdict/rng.hpp"
#include "verdict/tree.hpp"

namespace verdict {

/// Bagged Gini forest: each tree fits a seeded bootstrap resample and
/// considers floor(sqrt(V)) random features per split. Trees vote their
/// leaf's weighted majority class; scores are vote fractions.
struct ForestModel {
  std::vector<Tree> trees;
  std::vector<double> importances;  // normalized impurity decrease

  std::array<double, 2> vote_fractions(const SparseVector& x) const {
    std::size_t votes1 = 0;
    for (const auto& t : trees) {
      const TreeNode& leaf = t.leaf_for(x);
      if (leaf.v1 > leaf.v0) ++votes1;
    }
    const double f1 =
        static_cast<double>(votes1) / static_cast<double>(trees.size());
    return {1.0 - f1, f1};
  }
};

struct ForestConfig {
  std::size_t trees = 100;
  std::size_t max_depth = 0;  // 0 = unlimited
  std::size_t min_samples_split = 2;
  std::size_t mtry = 0;  // 0 = floor(sqrt(V))
};

inline ForestModel train_forest(const std::vector<SparseVector>& x,
                                const Labels& y, const ClassWeights& cw,
                                const ForestConfig& cfg, std::uint64_t seed,
                                std::uint32_t dimension) {
  ForestModel model;
  model.trees.resize(cfg.trees);
  model.importances.assign(dimension, 0.0);

  std::size_t mtry = cfg.mtry;
  if (mtry == 0)
    mtry = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::floor(std::sqrt(dimension))));
  if (mtry > dimension) mtry = dimension;

  const std::size_t n = x.size();
  detail::GrowConfig grow;
  grow.max_depth = cfg.max_depth;
  grow.min_samples_split = cfg.min_samples_split;
  grow.regression = false;

  std::vector<std::size_t> multiplicity(n);
  std::vector<detail::TreeSlot> slots;
  std::vector<std::uint8_t> drawn(dimension, 0);

  for (std::size_t t = 0; t < cfg.trees; ++t) {
    KeyedRng boot_rng(seed, "rf-bootstrap", t);
    std::fill(multiplicity.begin(), multiplicity.end(), 0);
    for (std::size_t d = 0; d < n; ++d)
      multiplicity[boot_rng.uniform_below(n)]++;

    slots.clear();
    for (std::size_t i = 0; i < n; ++i) {
      if (multiplicity[i] == 0) continue;
      detail::TreeSlot s;
      s.row = static_cast<std::uint32_t>(i);
      s.label = y[i];
      s.weight = static_cast<double>(multiplicity[i]) * cw.of(y[i] != 0);
      slots.push_back(s);
    }

    KeyedRng feat_rng(seed, "rf-features", t);
    auto sample_features = [&](std::vector<std::uint32_t>& out) {
      if (mtry >= dimension) {
        out.resize(dimension);
        for (std::uint32_t f = 0; f < dimension; ++f) out[f] = f;
        return;
      }
      out.clear();
      while (out.size() < mtry) {
        const auto f =
            static_cast<std::uint32_t>(feat_rng.uniform_below(dimension));
        if (!drawn[f]) {
          drawn[f] = 1;
          out.push_back(f);
        }
      }
      for (auto f : out) drawn[f] = 0;
    };

    detail::TreeGrower grower(x, dimension, grow);
    model.trees[t] = grower.grow(slots, sample_features, &model.importances);
  }

  double total = 0.0;
  for (double v : model.importances) total += v;
  if (total > 0.0)
    for (double& v : model.importances) v /= total;
  return model;
}

}  // namespace verdict

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
#include <vector>

#include "verdict/sparse.hpp"

namespace verdict {

/// One node of a binary axis-aligned tree. Internal nodes route
/// x[feature] <= threshold to `left`. Leaves carry either weighted class
/// totals (v0 = incorrect, v1 = correct) or a regression value in v0.
struct TreeNode {
  std::int32_t feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  std::int32_t left = -1;
  std::int32_t right = -1;
  double v0 = 0.0;
  double v1 = 0.0;
};

struct Tree {
  std::vector<TreeNode> nodes;

  const TreeNode& leaf_for(const SparseVector& x) const {
    std::size_t idx = 0;
    while (nodes[idx].feature >= 0) {
      const double v = x.at(static_cast<std::uint32_t>(nodes[idx].feature));
      idx = static_cast<std::size_t>(v <= nodes[idx].threshold ? nodes[idx].left
                                                               : nodes[idx].right);
    }
    return nodes[idx];
  }
};

namespace detail {

/// One in-bag training row: bootstrap multiplicity and class weight are
/// folded into `weight`. For regression trees, `g` is the target and `h`
/// the per-row curvature used for the leaf value.
struct TreeSlot {
  std::uint32_t row = 0;
  double weight = 1.0;
  std::uint8_t label = 0;
  double g = 0.0;
  double h = 1.0;
};

struct GrowConfig {
  std::size_t max_depth = 0;  // 0 = unlimited
  std::size_t min_samples_split = 2;
  double min_gain = 1e-12;
  bool regression = false;
};

/// Deterministic depth-first CART grower over sparse rows. Split search
/// gathers each candidate feature's nonzero values from the node's rows and
/// accounts for the implicit zero block, so cost scales with the node's
/// nonzeros rather than with n * V.
class TreeGrower {
 public:
  TreeGrower(const std::vector<SparseVector>& x, std::uint32_t dimension,
             GrowConfig cfg)
      : x_(x), dim_(dimension), cfg_(cfg) {
    candidate_mark_.assign(dim_, 0);
    feature_values_.resize(dim_);
  }

  /// `sample_features(out)` fills the per-node candidate feature list.
  /// `importances`, when given, accumulates real impurity decrease per
  /// feature (callers normalize).
  template <typename FeatureSampler>
  Tree grow(std::vector<TreeSlot>& slots, FeatureSampler&& sample_features,
            std::vector<double>* importances) {
    Tree tree;
    if (slots.empty()) {
      tree.nodes.push_back(TreeNode{});
      return tree;
    }
    build(tree, slots, 0, slots.size(), 0, sample_features, importances);
    return tree;
  }

 private:
  struct Group {
    double value = 0.0;
    double w = 0.0;
    double w0 = 0.0, w1 = 0.0;  // classification
    double wg = 0.0, wgg = 0.0;  // regression
  };

  struct BestSplit {
    bool found = false;
    double gain = 0.0;
    std::uint32_t feature = 0;
    double threshold = 0.0;
  };

  template <typename FeatureSampler>
  std::int32_t build(Tree& tree, std::vector<TreeSlot>& slots, std::size_t begin,
                     std::size_t end, std::size_t depth,
                     FeatureSampler&& sample_features,
                     std::vector<double>* importances) {
    const auto node_index = static_cast<std::int32_t>(tree.nodes.size());
    tree.nodes.push_back(TreeNode{});

    double w_total = 0.0, w0 = 0.0, w1 = 0.0, wg = 0.0, wgg = 0.0, wh = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
      const auto& s = slots[i];
      w_total += s.weight;
      if (cfg_.regression) {
        wg += s.weight * s.g;
        wgg += s.weight * s.g * s.g;
        wh += s.weight * s.h;
      } else {
        (s.label ? w1 : w0) += s.weight;
      }
    }

    auto make_leaf = [&] {
      TreeNode& leaf = tree.nodes[static_cast<std::size_t>(node_index)];
      if (cfg_.regression) {
        leaf.v0 = wh > 1e-12 ? wg / wh : 0.0;
        leaf.v1 = 0.0;
      } else {
        leaf.v0 = w0;
        leaf.v1 = w1;
      }
      return node_index;
    };

    const std::size_t count = end - begin;
    const bool depth_ok = cfg_.max_depth == 0 || depth < cfg_.max_depth;
    const bool pure = !cfg_.regression && (w0 <= 0.0 || w1 <= 0.0);
    if (!depth_ok || pure || count < cfg_.min_samples_split || w_total <= 0.0)
      return make_leaf();

    candidates_.clear();
    sample_features(candidates_);
    std::sort(candidates_.begin(), candidates_.end());
    for (auto f : candidates_) candidate_mark_[f] = 1;

    touched_.clear();
    for (std::size_t i = begin; i < end; ++i) {
      const auto& s = slots[i];
      for (const auto& [col, v] : x_[s.row].entries) {
        if (!candidate_mark_[col]) continue;
        if (feature_values_[col].empty()) touched_.push_back(col);
        feature_values_[col].push_back({v, static_cast<std::uint32_t>(i)});
      }
    }

    BestSplit best;
    std::sort(touched_.begin(), touched_.end());
    for (auto col : touched_) {
      evaluate_feature(col, feature_values_[col], slots, count, w_total, w0, w1,
                       wg, wgg, best);
    }
    for (auto col : touched_) feature_values_[col].clear();
    for (auto f : candidates_) candidate_mark_[f] = 0;

    if (!best.found || best.gain <= cfg_.min_gain) return make_leaf();

    if (importances)
      (*importances)[best.feature] += best.gain;

    const auto mid_it = std::stable_partition(
        slots.begin() + static_cast<std::ptrdiff_t>(begin),
        slots.begin() + static_cast<std::ptrdiff_t>(end), [&](const TreeSlot& s) {
          return x_[s.row].at(best.feature) <= best.threshold;
        });
    const auto mid =
        static_cast<std::size_t>(mid_it - slots.begin());
    if (mid == begin || mid == end) return make_leaf();  // degenerate split

    tree.nodes[static_cast<std::size_t>(node_index)].feature =
        static_cast<std::int32_t>(best.feature);
    tree.nodes[static_cast<std::size_t>(node_index)].threshold = best.threshold;
    const std::int32_t left =
        build(tree, slots, begin, mid, depth + 1, sample_features, importances);
    const std::int32_t right =
        build(tree, slots, mid, end, depth + 1, sample_features, importances);
    tree.nodes[static_cast<std::size_t>(node_index)].left = left;
    tree.nodes[static_cast<std::size_t>(node_index)].right = right;
    return node_index;
  }

  void evaluate_feature(std::uint32_t col,
                        std::vector<std::pair<double, std::uint32_t>>& nonzeros,
                        const std::vector<TreeSlot>& slots, std::size_t count,
                        double w_total, double w0, double w1, double wg,
                        double wgg, BestSplit& best) const {
    std::sort(nonzeros.begin(), nonzeros.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    groups_.clear();
    double nz_w = 0.0, nz_w0 = 0.0, nz_w1 = 0.0, nz_wg = 0.0, nz_wgg = 0.0;
    for (std::size_t i = 0; i < nonzeros.size();) {
      std::size_t j = i;
      Group grp;
      grp.value = nonzeros[i].first;
      while (j < nonzeros.size() && nonzeros[j].first == grp.value) {
        const auto& s = slots[nonzeros[j].second];
        grp.w += s.weight;
        if (cfg_.regression) {
          grp.wg += s.weight * s.g;
          grp.wgg += s.weight * s.g * s.g;
        } else {
          (s.label ? grp.w1 : grp.w0) += s.weight;
        }
        ++j;
      }
      nz_w += grp.w;
      nz_w0 += grp.w0;
      nz_w1 += grp.w1;
      nz_wg += grp.wg;
      nz_wgg += grp.wgg;
      groups_.push_back(grp);
      i = j;
    }

    if (nonzeros.size() < count) {
      // Implicit zero block: rows of this node without the feature.
      Group zero;
      zero.value = 0.0;
      zero.w = w_total - nz_w;
      zero.w0 = w0 - nz_w0;
      zero.w1 = w1 - nz_w1;
      zero.wg = wg - nz_wg;
      zero.wgg = wgg - nz_wgg;
      const auto pos = std::lower_bound(
          groups_.begin(), groups_.end(), 0.0,
          [](const Group& g, double v) { return g.value < v; });
      groups_.insert(pos, zero);
    }
    if (groups_.size() < 2) return;

    const double parent_score =
        cfg_.regression ? node_sse(w_total, wg, wgg)
                        : w_total * gini(w0, w1, w_total);

    double lw = 0.0, lw0 = 0.0, lw1 = 0.0, lwg = 0.0, lwgg = 0.0;
    for (std::size_t k = 0; k + 1 < groups_.size(); ++k) {
      lw += groups_[k].w;
      lw0 += groups_[k].w0;
      lw1 += groups_[k].w1;
      lwg += groups_[k].wg;
      lwgg += groups_[k].wgg;
      const double rw = w_total - lw;
      if (lw <= 0.0 || rw <= 0.0) continue;
      double threshold =
          0.5 * (groups_[k].value + groups_[k + 1].value);
      if (threshold >= groups_[k + 1].value) threshold = groups_[k].value;
      double gain;
      if (cfg_.regression) {
        gain = parent_score - node_sse(lw, lwg, lwgg) -
               node_sse(rw, wg - lwg, wgg - lwgg);
      } else {
        gain = parent_score - lw * gini(lw0, lw1, lw) -
               rw * gini(w0 - lw0, w1 - lw1, rw);
      }
      if (gain > best.gain) {
        best.found = true;
        best.gain = gain;
        best.feature = col;
        best.threshold = threshold;
      }
    }
  }

  static double gini(double c0, double c1, double w)  {
    if (w <= 0.0) return 0.0;
    const double p0 = c0 / w, p1 = c1 / w;
    return 1.0 - p0 * p0 - p1 * p1;
  }

  static double node_sse(double w, double swg, double swgg) {
    if (w <= 0.0) return 0.0;
    return swgg - swg * swg / w;
  }

  const std::vector<SparseVector>& x_;
  std::uint32_t dim_;
  GrowConfig cfg_;
  std::vector<std::uint8_t> candidate_mark_;
  mutable std::vector<std::vector<std::pair<double, std::uint32_t>>> feature_values_;
  std::vector<std::uint32_t> candidates_;
  std::vector<std::uint32_t> touched_;
  mutable std::vector<Group> groups_;
};

}  // namespace detail
}  // namespace verdict

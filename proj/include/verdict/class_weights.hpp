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
#include <vector>

#include "verdict/error.hpp"

namespace verdict {

/// 0/1 class labels; 1 = the annotation was correct.
using Labels = std::vector<std::uint8_t>;

struct ClassWeights {
  double incorrect = 1.0;
  double correct = 1.0;
  /// Set when only one class was present; that class got weight 1.0.
  bool single_class = false;

  double of(bool is_correct) const { return is_correct ? correct : incorrect; }

  static ClassWeights uniform() { return {}; }
};

/// Balanced class weights: weight(c) = N / (K * N_c) over the classes
/// present in `labels` (K = number of distinct classes present).
inline ClassWeights compute_class_weights(const Labels& labels) {
  if (labels.empty()) throw Error(Errc::empty_labels, "no labels given");
  double n_pos = 0.0, n_neg = 0.0;
  for (auto y : labels) (y ? n_pos : n_neg) += 1.0;
  ClassWeights w;
  const double n = n_pos + n_neg;
  if (n_pos == 0.0 || n_neg == 0.0) {
    w.single_class = true;  // degenerate: K = 1, weight = N / (1 * N) = 1
    return w;
  }
  w.incorrect = n / (2.0 * n_neg);
  w.correct = n / (2.0 * n_pos);
  return w;
}

}  // namespace verdict

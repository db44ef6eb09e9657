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
#include <utility>
#include <vector>

namespace verdict {

/// Sparse row vector with sorted, strictly increasing indices.
struct SparseVector {
  std::uint32_t dimension = 0;
  std::vector<std::pair<std::uint32_t, double>> entries;

  bool is_zero() const { return entries.empty(); }

  double at(std::uint32_t index) const {
    auto it = std::lower_bound(
        entries.begin(), entries.end(), index,
        [](const auto& e, std::uint32_t i) { return e.first < i; });
    return (it != entries.end() && it->first == index) ? it->second : 0.0;
  }

  double l2_norm() const {
    double s = 0.0;
    for (const auto& [i, v] : entries) s += v * v;
    return std::sqrt(s);
  }
};

/// Dot product of a sparse row with a dense weight vector.
inline double dot(const SparseVector& x, const std::vector<double>& w) {
  double s = 0.0;
  for (const auto& [i, v] : x.entries) s += v * w[i];
  return s;
}

/// w += scale * x
inline void axpy(double scale, const SparseVector& x, std::vector<double>& w) {
  for (const auto& [i, v] : x.entries) w[i] += scale * v;
}

}  // namespace verdict

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
#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "verdict/error.hpp"

namespace verdict::stats {

inline double mean(std::span<const double> x) {
  if (x.empty()) return 0.0;
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

/// Unbiased sample variance (n-1 denominator).
inline double variance(std::span<const double> x) {
  if (x.size() < 2) return 0.0;
  const double m = mean(x);
  double s = 0.0;
  for (double v : x) s += (v - m) * (v - m);
  return s / static_cast<double>(x.size() - 1);
}

/// Linear-interpolation quantile between order statistics
/// (h = (n-1)p convention). `sorted` must be ascending and non-empty.
inline double quantile_sorted(std::span<const double> sorted, double p) {
  const std::size_t n = sorted.size();
  if (n == 1) return sorted[0];
  const double h = (static_cast<double>(n) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= n) return sorted[n - 1];
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

inline double quantile(std::vector<double> x, double p) {
  std::sort(x.begin(), x.end());
  return quantile_sorted(x, p);
}

struct WelchResult {
  double t = 0.0;
  double df = 0.0;
  double p_value = 1.0;
};

/// Welch's two-sample t-test (unequal variances), two-sided p-value.
/// Degenerate zero-variance inputs resolve to p=1 when the means agree and
/// p=0 otherwise.
inline WelchResult welch_t_test(std::span<const double> a,
                                std::span<const double> b) {
  if (a.empty() || b.empty())
    throw Error(Errc::single_group, "both samples must be non-empty");
  WelchResult r;
  const double ma = mean(a), mb = mean(b);
  const double va = variance(a), vb = variance(b);
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  const double se2 = va / na + vb / nb;
  if (se2 <= 0.0) {
    r.t = 0.0;
    r.df = na + nb - 2.0;
    r.p_value = (ma == mb) ? 1.0 : 0.0;
    return r;
  }
  r.t = (ma - mb) / std::sqrt(se2);
  const double q = (va / na) * (va / na) / (na > 1 ? na - 1.0 : 1.0) +
                   (vb / nb) * (vb / nb) / (nb > 1 ? nb - 1.0 : 1.0);
  r.df = q > 0.0 ? se2 * se2 / q : na + nb - 2.0;
  if (r.df < 1.0) r.df = 1.0;
  boost::math::students_t dist(r.df);
  r.p_value = 2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(r.t)));
  if (r.p_value > 1.0) r.p_value = 1.0;
  return r;
}

struct MannWhitneyResult {
  double u = 0.0;
  double z = 0.0;
  double p_value = 1.0;
};

/// Mann-Whitney U rank-sum test, normal approximation with tie correction
/// and continuity correction, two-sided.
inline MannWhitneyResult mann_whitney_u(std::span<const double> a,
                                        std::span<const double> b) {
  if (a.empty() || b.empty())
    throw Error(Errc::single_group, "both samples must be non-empty");
  const std::size_t n1 = a.size(), n2 = b.size();
  std::vector<std::pair<double, int>> pooled;
  pooled.reserve(n1 + n2);
  for (double v : a) pooled.emplace_back(v, 0);
  for (double v : b) pooled.emplace_back(v, 1);
  std::sort(pooled.begin(), pooled.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });

  double rank_sum_a = 0.0;
  double tie_term = 0.0;
  std::size_t i = 0;
  while (i < pooled.size()) {
    std::size_t j = i;
    while (j < pooled.size() && pooled[j].first == pooled[i].first) ++j;
    const double avg_rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    const auto t = static_cast<double>(j - i);
    if (j - i > 1) tie_term += t * t * t - t;
    for (std::size_t k = i; k < j; ++k)
      if (pooled[k].second == 0) rank_sum_a += avg_rank;
    i = j;
  }

  MannWhitneyResult r;
  const double dn1 = static_cast<double>(n1), dn2 = static_cast<double>(n2);
  r.u = rank_sum_a - dn1 * (dn1 + 1.0) / 2.0;
  const double mu = dn1 * dn2 / 2.0;
  const double n = dn1 + dn2;
  const double sigma2 =
      dn1 * dn2 / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
  if (sigma2 <= 0.0) {
    r.z = 0.0;
    r.p_value = 1.0;
    return r;
  }
  double num = std::fabs(r.u - mu) - 0.5;  // continuity correction
  if (num < 0.0) num = 0.0;
  r.z = num / std::sqrt(sigma2);
  boost::math::normal norm;
  r.p_value = 2.0 * boost::math::cdf(boost::math::complement(norm, r.z));
  if (r.p_value > 1.0) r.p_value = 1.0;
  return r;
}

/// Holm step-down adjustment; returns adjusted p-values in input order.
inline std::vector<double> holm_adjust(const std::vector<double>& p) {
  const std::size_t m = p.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return p[i] < p[j]; });
  std::vector<double> adjusted(m, 0.0);
  double running_max = 0.0;
  for (std::size_t rank = 0; rank < m; ++rank) {
    const std::size_t idx = order[rank];
    double v = static_cast<double>(m - rank) * p[idx];
    if (v > 1.0) v = 1.0;
    running_max = std::max(running_max, v);
    adjusted[idx] = running_max;
  }
  return adjusted;
}

/// Kolmogorov-Smirnov statistic against Uniform(0,1).
inline double ks_statistic_uniform(std::vector<double> x) {
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double cdf = std::clamp(x[i], 0.0, 1.0);
    const double hi = static_cast<double>(i + 1) / n - cdf;
    const double lo = cdf - static_cast<double>(i) / n;
    d = std::max({d, hi, lo});
  }
  return d;
}

struct FiveNumber {
  double min = 0.0, q1 = 0.0, median = 0.0, q3 = 0.0, max = 0.0;
};

inline FiveNumber five_number_summary(std::vector<double> x) {
  std::sort(x.begin(), x.end());
  FiveNumber f;
  if (x.empty()) return f;
  f.min = x.front();
  f.max = x.back();
  f.q1 = quantile_sorted(x, 0.25);
  f.median = quantile_sorted(x, 0.5);
  f.q3 = quantile_sorted(x, 0.75);
  return f;
}

}  // namespace verdict::stats

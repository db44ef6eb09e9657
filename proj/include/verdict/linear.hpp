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
#include <deque>
#include <vector>

#include "verdict/class_weights.hpp"
#include "verdict/sparse.hpp"

namespace verdict {

struct LogisticModel {
  std::vector<double> weights;
  double intercept = 0.0;
};

struct SvmModel {
  std::vector<double> weights;
  double intercept = 0.0;
};

namespace detail {

inline double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

/// log(1 + exp(z)) without overflow.
inline double log1pexp(double z) {
  if (z > 0.0) return z + std::log1p(std::exp(-z));
  return std::log1p(std::exp(z));
}

/// Weighted L2-regularized logistic loss and gradient.
///
/// Variables are packed [w_0..w_{V-1}, intercept]; the intercept is not
/// regularized. Loss = sum_i s_i * xent(y_i, sigmoid(f_i)) + (lambda/2)|w|^2
/// with s_i the class weight of row i.
inline double logistic_loss_grad(const std::vector<SparseVector>& x,
                                 const std::vector<std::uint8_t>& y,
                                 const ClassWeights& cw, double lambda,
                                 const std::vector<double>& wb,
                                 std::vector<double>& grad) {
  const std::size_t dim = wb.size() - 1;
  grad.assign(wb.size(), 0.0);
  double loss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = dot(x[i], wb) + wb[dim];
    const double s = cw.of(y[i] != 0);
    loss += s * (y[i] ? log1pexp(-f) : log1pexp(f));
    const double residual = s * (sigmoid(f) - (y[i] ? 1.0 : 0.0));
    axpy(residual, x[i], grad);
    grad[dim] += residual;
  }
  for (std::size_t j = 0; j < dim; ++j) {
    loss += 0.5 * lambda * wb[j] * wb[j];
    grad[j] += lambda * wb[j];
  }
  return loss;
}

inline double l2_norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

struct LbfgsResult {
  bool converged = false;
  std::size_t iterations = 0;
};

/// Limited-memory BFGS with Armijo backtracking. `objective` must fill
/// `grad` and return the loss. Deterministic for deterministic objectives.
template <typename Objective>
LbfgsResult lbfgs_minimize(std::vector<double>& x, Objective&& objective,
                           double tol, std::size_t max_iter,
                           std::size_t memory = 10) {
  const std::size_t n = x.size();
  std::vector<double> grad(n), new_grad(n), direction(n), x_new(n);
  std::deque<std::vector<double>> s_hist, y_hist;
  std::deque<double> rho_hist;

  double loss = objective(x, grad);
  LbfgsResult result;
  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    result.iterations = iter;
    if (l2_norm(grad) <= tol) {
      result.converged = true;
      return result;
    }

    // Two-loop recursion for the search direction.
    direction = grad;
    std::vector<double> alpha(s_hist.size());
    for (std::size_t k = s_hist.size(); k-- > 0;) {
      double dot_sd = 0.0;
      for (std::size_t j = 0; j < n; ++j) dot_sd += s_hist[k][j] * direction[j];
      alpha[k] = rho_hist[k] * dot_sd;
      for (std::size_t j = 0; j < n; ++j)
        direction[j] -= alpha[k] * y_hist[k][j];
    }
    if (!s_hist.empty()) {
      double sy = 0.0, yy = 0.0;
      const auto& s_last = s_hist.back();
      const auto& y_last = y_hist.back();
      for (std::size_t j = 0; j < n; ++j) {
        sy += s_last[j] * y_last[j];
        yy += y_last[j] * y_last[j];
      }
      if (yy > 0.0) {
        const double gamma = sy / yy;
        for (double& d : direction) d *= gamma;
      }
    }
    for (std::size_t k = 0; k < s_hist.size(); ++k) {
      double dot_yd = 0.0;
      for (std::size_t j = 0; j < n; ++j) dot_yd += y_hist[k][j] * direction[j];
      const double beta = rho_hist[k] * dot_yd;
      for (std::size_t j = 0; j < n; ++j)
        direction[j] += s_hist[k][j] * (alpha[k] - beta);
    }
    for (double& d : direction) d = -d;

    double dir_dot_grad = 0.0;
    for (std::size_t j = 0; j < n; ++j) dir_dot_grad += direction[j] * grad[j];
    if (dir_dot_grad >= 0.0) {
      // Not a descent direction; fall back to steepest descent.
      for (std::size_t j = 0; j < n; ++j) direction[j] = -grad[j];
      dir_dot_grad = -l2_norm(grad) * l2_norm(grad);
    }

    // Armijo backtracking.
    double step = 1.0;
    double new_loss = loss;
    bool accepted = false;
    for (int bt = 0; bt < 60; ++bt) {
      for (std::size_t j = 0; j < n; ++j) x_new[j] = x[j] + step * direction[j];
      new_loss = objective(x_new, new_grad);
      if (new_loss <= loss + 1e-4 * step * dir_dot_grad) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) return result;  // stalled; caller surfaces NonConvergence

    std::vector<double> s_vec(n), y_vec(n);
    double sy = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      s_vec[j] = x_new[j] - x[j];
      y_vec[j] = new_grad[j] - grad[j];
      sy += s_vec[j] * y_vec[j];
    }
    if (sy > 1e-12) {
      s_hist.push_back(std::move(s_vec));
      y_hist.push_back(std::move(y_vec));
      rho_hist.push_back(1.0 / sy);
      if (s_hist.size() > memory) {
        s_hist.pop_front();
        y_hist.pop_front();
        rho_hist.pop_front();
      }
    }
    x = x_new;
    grad = new_grad;
    loss = new_loss;
  }
  result.converged = l2_norm(grad) <= tol;
  return result;
}

}  // namespace detail

/// Fit weighted L2-regularized logistic regression by L-BFGS.
/// Returns the model and whether the gradient-norm tolerance was reached
/// within the iteration budget.
inline std::pair<LogisticModel, bool> train_logistic(
    const std::vector<SparseVector>& x, const std::vector<std::uint8_t>& y,
    const ClassWeights& cw, double lambda, double tol, std::size_t max_iter,
    std::uint32_t dimension) {
  std::vector<double> wb(dimension + 1, 0.0);
  auto objective = [&](const std::vector<double>& v, std::vector<double>& g) {
    return detail::logistic_loss_grad(x, y, cw, lambda, v, g);
  };
  const auto res = detail::lbfgs_minimize(wb, objective, tol, max_iter);
  LogisticModel m;
  m.intercept = wb[dimension];
  wb.resize(dimension);
  m.weights = std::move(wb);
  return {std::move(m), res.converged};
}

/// Fit a linear SVM by deterministic full-batch subgradient descent on the
/// weighted hinge objective
///   (lambda/2)|w|^2 + (1/S) sum_i s_i max(0, 1 - z_i (w.x_i + b)),
/// S = sum_i s_i, with step 1/(lambda*t) at epoch t. Full-batch steps keep
/// the result independent of row order up to floating-point reassociation.
inline SvmModel train_svm(const std::vector<SparseVector>& x,
                          const std::vector<std::uint8_t>& y,
                          const ClassWeights& cw, double lambda,
                          std::size_t epochs, std::uint32_t dimension) {
  SvmModel m;
  m.weights.assign(dimension, 0.0);
  double total_weight = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) total_weight += cw.of(y[i] != 0);

  std::vector<double> grad(dimension);
  for (std::size_t t = 1; t <= epochs; ++t) {
    std::fill(grad.begin(), grad.end(), 0.0);
    double grad_b = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double z = y[i] ? 1.0 : -1.0;
      const double margin = z * (dot(x[i], m.weights) + m.intercept);
      if (margin < 1.0) {
        const double s = cw.of(y[i] != 0);
        axpy(-s * z / total_weight, x[i], grad);
        grad_b += -s * z / total_weight;
      }
    }
    const double eta = 1.0 / (lambda * static_cast<double>(t));
    for (std::uint32_t j = 0; j < dimension; ++j)
      m.weights[j] -= eta * (lambda * m.weights[j] + grad[j]);
    m.intercept -= eta * grad_b;
  }
  return m;
}

}  // namespace verdict

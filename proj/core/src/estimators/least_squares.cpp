// Copyright 2026 The qnode Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "qnode/estimators/least_squares.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "qnode/error.hpp"

namespace qnode::estimators {

double FitResult::value(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return values[i];
  throw InvalidArgument("no fit parameter named " + name);
}

double FitResult::error(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return errors[i];
  throw InvalidArgument("no fit parameter named " + name);
}

namespace {

struct Problem {
  std::span<const double> x;
  std::span<const double> y;
  std::vector<double> sqrt_w;
  const Model& model;
  std::vector<double> lower;
  std::vector<double> upper;

  void clamp(std::vector<double>& p) const {
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (!lower.empty()) p[j] = std::max(p[j], lower[j]);
      if (!upper.empty()) p[j] = std::min(p[j], upper[j]);
    }
  }

  Eigen::VectorXd residuals(const std::vector<double>& p) const {
    Eigen::VectorXd r(static_cast<Eigen::Index>(x.size()));
    for (std::size_t i = 0; i < x.size(); ++i) r(i) = sqrt_w[i] * (y[i] - model(x[i], p));
    return r;
  }

  // d(model)/dp, weighted; central differences. The step solving
  // (J^T J + damping) step = J^T r then lowers the residuals.
  Eigen::MatrixXd jacobian(const std::vector<double>& p) const {
    Eigen::MatrixXd j(static_cast<Eigen::Index>(x.size()), static_cast<Eigen::Index>(p.size()));
    std::vector<double> q = p;
    for (std::size_t k = 0; k < p.size(); ++k) {
      const double h = 1e-6 * (std::abs(p[k]) + 1e-3);
      q[k] = p[k] + h;
      const Eigen::VectorXd up = residuals(q);
      q[k] = p[k] - h;
      const Eigen::VectorXd down = residuals(q);
      q[k] = p[k];
      j.col(static_cast<Eigen::Index>(k)) = -(up - down) / (2.0 * h);
    }
    return j;
  }
};

}  // namespace

FitResult levenberg_marquardt(std::span<const double> x, std::span<const double> y,
                              std::span<const double> weights, const Model& model,
                              std::vector<double> p, std::vector<std::string> names,
                              std::vector<double> lower, std::vector<double> upper,
                              const LeastSquaresOptions& options) {
  const std::size_t n = x.size();
  const std::size_t m = p.size();
  if (y.size() != n || (!weights.empty() && weights.size() != n))
    throw InvalidArgument("fit data columns differ in length");
  if (names.size() != m) throw InvalidArgument("one name per fit parameter required");
  if ((!lower.empty() && lower.size() != m) || (!upper.empty() && upper.size() != m))
    throw InvalidArgument("bounds must match the parameter count");
  if (n < m) throw EstimatorError("fewer data points than fit parameters");

  Problem prob{x, y, std::vector<double>(n, 1.0), model, std::move(lower), std::move(upper)};
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i] >= 0.0)) throw InvalidArgument("fit weights must be non-negative");
    prob.sqrt_w[i] = std::sqrt(weights[i]);
  }
  prob.clamp(p);

  FitResult out;
  out.names = std::move(names);
  out.dof = static_cast<int>(n - m);

  Eigen::VectorXd r = prob.residuals(p);
  double rss = r.squaredNorm();
  if (!std::isfinite(rss)) throw EstimatorError("model is not finite at the starting point");
  double lambda = options.initial_lambda;
  Eigen::MatrixXd jac = prob.jacobian(p);

  int it = 0;
  for (; it < options.max_iterations && !out.converged; ++it) {
    if (rss <= 1e-28 * static_cast<double>(n)) {
      out.converged = true;
      break;
    }
    const Eigen::MatrixXd a = jac.transpose() * jac;
    const Eigen::VectorXd g = jac.transpose() * r;
    bool improved = false;
    while (lambda < 1e14) {
      Eigen::MatrixXd damped = a;
      for (Eigen::Index k = 0; k < damped.rows(); ++k)
        damped(k, k) += lambda * std::max(a(k, k), 1e-300);
      const Eigen::VectorXd step = damped.ldlt().solve(g);
      std::vector<double> trial = p;
      for (std::size_t k = 0; k < m; ++k) trial[k] += step(static_cast<Eigen::Index>(k));
      prob.clamp(trial);
      const Eigen::VectorXd r_trial = prob.residuals(trial);
      const double rss_trial = r_trial.squaredNorm();
      if (std::isfinite(rss_trial) && rss_trial <= rss) {
        double moved = 0.0;
        double size = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
          moved = std::max(moved, std::abs(trial[k] - p[k]));
          size = std::max(size, std::abs(p[k]));
        }
        const double drop = rss - rss_trial;
        p = std::move(trial);
        r = r_trial;
        rss = rss_trial;
        lambda = std::max(lambda / 3.0, 1e-12);
        improved = true;
        if (drop <= options.tolerance * rss || moved <= options.tolerance * (size + 1e-12))
          out.converged = true;
        break;
      }
      lambda *= 4.0;
    }
    if (!improved) {
      // No downhill step at any damping: a stationary point up to rounding.
      out.converged = true;
      break;
    }
    jac = prob.jacobian(p);
  }

  out.iterations = it;
  out.values = p;
  out.rss = rss;
  out.errors.assign(m, 0.0);
  const Eigen::MatrixXd a = jac.transpose() * jac;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  if (lu.isInvertible()) {
    const double scale = out.dof > 0 ? rss / out.dof : 0.0;
    const Eigen::MatrixXd cov = lu.inverse() * scale;
    for (std::size_t k = 0; k < m; ++k)
      out.errors[k] = std::sqrt(std::max(0.0, cov(static_cast<Eigen::Index>(k),
                                                  static_cast<Eigen::Index>(k))));
  } else {
    out.note = "singular normal matrix; uncertainties unavailable";
    for (double& e : out.errors) e = std::numeric_limits<double>::infinity();
  }
  if (!out.converged && out.note.empty()) out.note = "iteration limit reached";
  return out;
}

std::vector<double> linear_least_squares(std::span<const double> x, std::span<const double> y,
                                         std::span<const double> weights,
                                         const std::vector<std::function<double(double)>>& basis) {
  const auto n = static_cast<Eigen::Index>(x.size());
  const auto m = static_cast<Eigen::Index>(basis.size());
  if (static_cast<Eigen::Index>(y.size()) != n) throw InvalidArgument("x and y differ in length");
  if (n < m) throw EstimatorError("fewer data points than basis functions");
  Eigen::MatrixXd a(n, m);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double w = weights.empty() ? 1.0 : std::sqrt(weights[static_cast<std::size_t>(i)]);
    for (Eigen::Index k = 0; k < m; ++k)
      a(i, k) = w * basis[static_cast<std::size_t>(k)](x[static_cast<std::size_t>(i)]);
    b(i) = w * y[static_cast<std::size_t>(i)];
  }
  const Eigen::VectorXd c = a.colPivHouseholderQr().solve(b);
  return {c.data(), c.data() + c.size()};
}

}  // namespace qnode::estimators

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
#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace qnode::estimators {

struct FitResult {
  std::vector<std::string> names;
  std::vector<double> values;
  std::vector<double> errors;  // one sigma, from the scaled covariance
  double rss = 0.0;            // weighted residual sum of squares
  int dof = 0;
  int iterations = 0;
  bool converged = false;
  bool lower_bound_only = false;  // first parameter is only bounded from below
  std::string note;

  double value(const std::string& name) const;
  double error(const std::string& name) const;
};

using Model = std::function<double(double x, std::span<const double> params)>;

struct LeastSquaresOptions {
  int max_iterations = 200;
  double tolerance = 1e-10;  // relative change of rss that counts as converged
  double initial_lambda = 1e-3;
};

// Damped Gauss-Newton with a central-difference Jacobian. weights are inverse
// variances; pass an empty span for unit weights. Parameters are clamped to
// [lower, upper] when those are given.
FitResult levenberg_marquardt(std::span<const double> x, std::span<const double> y,
                              std::span<const double> weights, const Model& model,
                              std::vector<double> initial, std::vector<std::string> names,
                              std::vector<double> lower = {}, std::vector<double> upper = {},
                              const LeastSquaresOptions& options = {});

// Ordinary linear least squares y ~ sum_k c_k basis_k(x). Returns coefficients.
std::vector<double> linear_least_squares(std::span<const double> x, std::span<const double> y,
                                         std::span<const double> weights,
                                         const std::vector<std::function<double(double)>>& basis);

}  // namespace qnode::estimators

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
#include "qnode/estimators/readout.hpp"

#include <cmath>

#include <boost/math/special_functions/gamma.hpp>

#include "qnode/error.hpp"

namespace qnode::estimators {

ReadoutThreshold readout_threshold(double mu_atom, double mu_bg) {
  if (!(mu_bg > 0.0) || !(mu_atom >= mu_bg) || !std::isfinite(mu_atom))
    throw InvalidArgument("readout threshold needs mu_atom >= mu_bg > 0");
  // P(Pois(mu) < k) = Q(k, mu); P(Pois(mu) >= k) = P(k, mu).
  auto miss = [&](int k) { return k == 0 ? 0.0 : boost::math::gamma_q(double(k), mu_atom); };
  auto fals = [&](int k) { return k == 0 ? 1.0 : boost::math::gamma_p(double(k), mu_bg); };
  const int k_max = static_cast<int>(std::ceil(mu_atom + 20.0 * std::sqrt(mu_atom) + 20.0));
  ReadoutThreshold best{0, miss(0), fals(0), 0.0};
  double best_err = best.p_miss + best.p_false;
  for (int k = 1; k <= k_max; ++k) {
    const double m = miss(k);
    const double f = fals(k);
    if (m + f < best_err) {
      best_err = m + f;
      best = {k, m, f, 0.0};
    }
  }
  best.fidelity = 1.0 - 0.5 * best_err;
  return best;
}

double visibility_penalty(Angle delta) { return std::cos(2.0 * delta.rad()); }

MeasuredReadout measure_readout_fidelity(std::span<const int> present_counts,
                                         std::span<const int> absent_counts, int threshold) {
  if (present_counts.empty() || absent_counts.empty())
    throw EstimatorError("readout fidelity needs loaded and empty-trap shots");
  const double np = double(present_counts.size());
  const double na = double(absent_counts.size());
  double miss = 0.0;
  double fals = 0.0;
  for (int c : present_counts) miss += c < threshold;
  for (int c : absent_counts) fals += c >= threshold;
  MeasuredReadout m;
  m.p_miss = miss / np;
  m.p_false = fals / na;
  m.fidelity.value = 1.0 - m.p_miss;
  m.fidelity.uncertainty = std::sqrt(m.p_miss * (1.0 - m.p_miss) / np);
  m.balanced.value = 1.0 - 0.5 * (m.p_miss + m.p_false);
  m.balanced.uncertainty =
      0.5 * std::sqrt(m.p_miss * (1.0 - m.p_miss) / np + m.p_false * (1.0 - m.p_false) / na);
  return m;
}

}  // namespace qnode::estimators

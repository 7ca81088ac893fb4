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
#include "qnode/physics/readout.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "qnode/estimators/readout.hpp"

namespace qnode::physics {

ReadoutCounts readout_counts(bool atom_present, const NodeConfig& c, Rng& rng) {
  double mean = c.mu_bg_per_spcm;
  if (atom_present) {
    double fraction = 1.0;
    if (c.readout_atom_loss) {
      const double lifetime_ms = c.trap_lifetime_s * 1e3;
      const double t_loss = std::exponential_distribution<double>(1.0 / lifetime_ms)(rng);
      fraction = std::min(t_loss, c.readout_exposure_ms) / c.readout_exposure_ms;
    }
    mean += (c.mu_atom_per_spcm - c.mu_bg_per_spcm) * fraction;
  }
  std::poisson_distribution<int> counts(mean);
  ReadoutCounts r;
  r.spcm1 = counts(rng);
  r.spcm2 = counts(rng);
  return r;
}

ReadoutModel readout_model(const NodeConfig& c) {
  const double bright = 2.0 * c.mu_atom_per_spcm;
  const double dark = 2.0 * c.mu_bg_per_spcm;
  ReadoutModel m;
  m.threshold = estimators::readout_threshold(bright, dark).threshold;
  const double th = m.threshold;
  // P(Pois(mu) < th) = Q(th, mu)
  auto below = [th](double mu) { return mu <= 0.0 ? 1.0 : boost::math::gamma_q(th, mu); };
  m.p_false_present = 1.0 - below(dark);
  if (!c.readout_atom_loss) {
    m.p_miss_present = below(bright);
    return m;
  }
  const double life = c.trap_lifetime_s * 1e3;
  const double t_exp = c.readout_exposure_ms;
  auto integrand = [&](double t) {
    return std::exp(-t / life) / life * below(dark + (bright - dark) * t / t_exp);
  };
  const double lost =
      boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, 0.0, t_exp, 10, 1e-12);
  m.p_miss_present = std::exp(-t_exp / life) * below(bright) + lost;
  return m;
}

}  // namespace qnode::physics

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
#include "qnode/physics/emission.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "qnode/error.hpp"
#include "qnode/units.hpp"

namespace qnode::physics {
namespace {

// exp(x^2) erfc(x), stable for large positive x.
double erfcx(double x) {
  if (x < 25.0) return std::exp(x * x) * std::erfc(x);
  const double inv2 = 1.0 / (x * x);
  return (1.0 - 0.5 * inv2 + 0.75 * inv2 * inv2) / (x * std::sqrt(std::numbers::pi));
}

// exp(sigma^2/2tau^2 - (t-mu)/tau) * Phi((t-mu)/sigma - sigma/tau)
double emg_tail(double t, double center, double sigma, double tau) {
  const double u = (t - center) / sigma;
  const double a = (sigma / tau - u) / std::numbers::sqrt2;
  if (a >= 0.0) return 0.5 * erfcx(a) * std::exp(-0.5 * u * u);
  return 0.5 * std::erfc(a) * std::exp(a * a - 0.5 * u * u);
}

void check_shape(double sigma, double tau) {
  if (!(sigma > 0.0) || !(tau > 0.0)) throw InvalidArgument("EMG needs sigma > 0 and tau > 0");
}

}  // namespace

double emg_pdf(double t, double center, double sigma, double tau) {
  check_shape(sigma, tau);
  return emg_tail(t, center, sigma, tau) / tau;
}

double emg_cdf(double t, double center, double sigma, double tau) {
  check_shape(sigma, tau);
  const double u = (t - center) / sigma;
  const double phi = 0.5 * std::erfc(-u / std::numbers::sqrt2);
  return std::clamp(phi - emg_tail(t, center, sigma, tau), 0.0, 1.0);
}

double sample_emission_time(Rng& rng, const NodeConfig& c) {
  std::normal_distribution<double> pulse(c.pulse_center_ns, c.pulse_fwhm_ns / kFwhmPerSigma);
  std::exponential_distribution<double> decay(1.0 / c.tau_excited_ns);
  return pulse(rng) + decay(rng);
}

std::optional<Click> CycleOutcome::trigger() const {
  const auto all = clicks();
  if (all.empty()) return std::nullopt;
  return all.front();
}

std::vector<Click> CycleOutcome::clicks() const {
  std::vector<Click> all = dark_clicks;
  if (detected) all.push_back(photon_click);
  std::sort(all.begin(), all.end(), [](const Click& a, const Click& b) {
    return a.attempt != b.attempt ? a.attempt < b.attempt : a.time_ns < b.time_ns;
  });
  return all;
}

namespace {

// Number of dark clicks (at least one) given that the gate saw any, by
// inversion of the zero-truncated Poisson distribution.
int truncated_poisson(Rng& rng, double lambda) {
  const double p0 = std::exp(-lambda);
  const double v = p0 + uniform01(rng) * (1.0 - p0);
  int k = 1;
  double pk = lambda * p0;
  double cum = p0 + pk;
  while (v > cum && k < 1000) {
    ++k;
    pk *= lambda / k;
    cum += pk;
  }
  return k;
}

}  // namespace

CycleOutcome sample_excitation_cycle(const AtomQubit& state, const NodeConfig& c, Rng& rng,
                                     const CycleOptions& options) {
  CycleOutcome out;
  out.started_in_initial_state = in_initial_state(state);
  bool can_emit = out.started_in_initial_state;
  const double eta = eta_chain(c);
  const double lambda = 2.0 * c.dark_rate_hz * c.gate_window_ns * 1e-9;  // both SPCMs
  const double p_any_dark = -std::expm1(-lambda);

  for (int attempt = 1; attempt <= c.attempts_per_cycle; ++attempt) {
    ++out.gates_opened;
    bool clicked = false;
    if (p_any_dark > 0.0 && uniform01(rng) < p_any_dark) {
      const int n = truncated_poisson(rng, lambda);
      for (int k = 0; k < n; ++k) {
        Click d;
        d.attempt = attempt;
        d.channel = bernoulli(rng, 0.5) ? 1 : 2;
        d.time_ns = uniform01(rng) * c.gate_window_ns;
        d.origin = ClickOrigin::dark;
        out.dark_clicks.push_back(d);
      }
      clicked = true;
    }
    if (can_emit) {
      const double u = uniform01(rng);
      if (u >= 1.0 / 3.0) {
        can_emit = false;
        out.emission_attempt = attempt;
        out.emitted = u < 2.0 / 3.0 ? Emitted::sigma_plus : Emitted::sigma_minus;
        if (bernoulli(rng, eta)) {
          const double t = sample_emission_time(rng, c);
          if (t >= 0.0 && t <= c.gate_window_ns) {
            out.detected = true;
            out.photon_click = {attempt, bernoulli(rng, 0.5) ? 1 : 2, t, ClickOrigin::photon};
            out.multi_photon = bernoulli(rng, c.multi_photon_rate);
            clicked = true;
          }
        }
      }
    }
    if (options.stop_on_click && clicked) break;
  }
  return out;
}

quantum::JointState entangled_emission(const NodeConfig& c) {
  return quantum::with_white_noise(quantum::bell_psi_plus(), c.excitation_pol_admixture);
}

quantum::JointState entangled_emission(const NodeConfig& c, const quantum::PolarizationOp& fiber) {
  if (fiber.kind() != quantum::OpKind::unitary || !fiber.is_valid(1e-9))
    throw InvalidArgument("fiber must be a unitary polarization operator");
  return entangled_emission(c).in_linear_coordinates().with_photon_unitary(fiber.matrix());
}

}  // namespace qnode::physics

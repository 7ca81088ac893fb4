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
#include "qnode/physics/atom.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "qnode/error.hpp"
#include "qnode/quantum/joint_state.hpp"

namespace qnode::physics {

using quantum::Complex;
using quantum::Mat2;

AtomLevel pair_level(QubitPair pair, int slot) {
  if (slot != 0 && slot != 1) throw InvalidArgument("qubit slot must be 0 or 1");
  switch (pair) {
    case QubitPair::pre_map: return slot == 0 ? AtomLevel::down() : AtomLevel::up();
    case QubitPair::mapped: return slot == 0 ? AtomLevel::down() : AtomLevel::up_prime();
    case QubitPair::clock: return slot == 0 ? AtomLevel::clock_lower() : AtomLevel::clock_upper();
    case QubitPair::bare: return slot == 0 ? AtomLevel::up() : AtomLevel::up_prime();
  }
  throw InvalidArgument("unknown qubit pair");
}

AtomQubit AtomQubit::in_slot(QubitPair pair, int slot) {
  AtomQubit a;
  a.pair = pair;
  a.qubit(slot, slot) = 1.0;
  return a;
}

AtomQubit AtomQubit::parked() {
  AtomQubit a;
  a.other_f1 = 1.0;
  return a;
}

double AtomQubit::f2_population() const {
  return pair_level(pair, 1).f == 2 ? qubit(1, 1).real() : 0.0;
}

bool AtomQubit::is_valid(double tol) const {
  if (std::abs(total() - 1.0) > tol || other_f1 < -tol) return false;
  if ((qubit - qubit.adjoint()).norm() > tol) return false;
  Eigen::SelfAdjointEigenSolver<Mat2> es(qubit);
  return es.eigenvalues().minCoeff() > -1e-10;
}

AtomQubit optical_pump(Rng& rng, const NodeConfig& c) {
  if (bernoulli(rng, c.pump_fidelity)) return AtomQubit::parked();
  return AtomQubit::in_slot(QubitPair::pre_map, bernoulli(rng, 0.5) ? 1 : 0);
}

bool in_initial_state(const AtomQubit& a) {
  return a.pair == QubitPair::pre_map && a.other_f1 > 1.0 - 1e-12;
}

// The pumped m_f = 0 population becomes slot 0 of the driven pair.
AtomQubit prepare_pair(const AtomQubit& pumped, QubitPair pair) {
  AtomQubit a;
  a.pair = pair;
  a.qubit(0, 0) = pumped.other_f1;
  a.other_f1 = pumped.qubit.trace().real();
  return a;
}

AtomQubit dephase(const AtomQubit& a, double t, double t2star) {
  AtomQubit out = a;
  const double k = quantum::coherence_factor(t, t2star);
  out.qubit(0, 1) *= k;
  out.qubit(1, 0) *= k;
  return out;
}

AtomQubit rotate(const AtomQubit& a, Angle theta, Angle phi) {
  const double c = std::cos(theta.rad() / 2.0);
  const double s = std::sin(theta.rad() / 2.0);
  const Complex i(0.0, 1.0);
  Mat2 u;
  // exp(-i theta/2 (cos phi X + sin phi Y))
  u << c, -i * s * std::exp(-i * phi.rad()), -i * s * std::exp(i * phi.rad()), c;
  AtomQubit out = a;
  out.qubit = u * a.qubit * u.adjoint();
  return out;
}

namespace {

// Amplitude up -> up' of a pi pulse with Rabi frequency 1/(2 len) at detuning delta.
Complex detuned_transfer_amplitude(double delta_khz, const NodeConfig& c) {
  const double omega = std::numbers::pi / c.map_pulse_len_us;  // rad/us
  const double delta = 2.0 * std::numbers::pi * delta_khz * 1e-3;
  const double gen = std::hypot(omega, delta);
  const double s = std::sin(gen * c.map_pulse_len_us / 2.0);
  // The resonant amplitude -i is divided out so delta = 0 is a pure relabel.
  return Complex(omega / gen * s, 0.0);
}

}  // namespace

double sample_map_detuning(const NodeConfig& c, Rng& rng) {
  if (c.map_error_model != MapErrorModel::detuning || c.map_detuning_sigma_khz == 0.0) return 0.0;
  return std::normal_distribution<double>(0.0, c.map_detuning_sigma_khz)(rng);
}

AtomQubit microwave_pi_map_at(const AtomQubit& a, const NodeConfig& c, double detuning_khz) {
  if (a.pair != QubitPair::pre_map) throw InvalidArgument("mapping pulse expects the pre-map pair");
  const Complex amp = c.map_error_model == MapErrorModel::detuning
                          ? detuned_transfer_amplitude(detuning_khz, c)
                          : Complex(std::sqrt(c.map_fidelity_m1), 0.0);
  AtomQubit out;
  out.pair = QubitPair::mapped;
  out.qubit(0, 0) = a.qubit(0, 0);
  out.qubit(1, 1) = std::norm(amp) * a.qubit(1, 1);
  out.qubit(0, 1) = a.qubit(0, 1) * std::conj(amp);
  out.qubit(1, 0) = std::conj(out.qubit(0, 1));
  out.other_f1 = a.other_f1 + (1.0 - std::norm(amp)) * a.qubit(1, 1).real();
  return out;
}

AtomQubit microwave_pi_map(const AtomQubit& a, const NodeConfig& c, Rng& rng) {
  return microwave_pi_map_at(a, c, sample_map_detuning(c, rng));
}

double detuning_model_transfer(const NodeConfig& c) {
  const double s = c.map_detuning_sigma_khz;
  if (s == 0.0) return 1.0;
  constexpr int kPoints = 4001;
  double sum = 0.0;
  double norm = 0.0;
  for (int k = 0; k < kPoints; ++k) {
    const double x = -8.0 + 16.0 * k / (kPoints - 1);
    const double w = std::exp(-0.5 * x * x);
    sum += w * std::norm(detuned_transfer_amplitude(x * s, c));
    norm += w;
  }
  return sum / norm;
}

AtomQubit two_photon_rotation(const AtomQubit& a, Angle pulse_area, const NodeConfig& c) {
  if (a.pair != QubitPair::mapped) throw InvalidArgument("two-photon rotation expects the mapped pair");
  return rotate(a, pulse_area * (1.0 + rotation_area_error(c)),
                Angle::degrees(c.rotation_axis_deg));
}

double retention_probability(const AtomQubit& a, const NodeConfig& c) {
  const double total = a.total();
  if (total <= 0.0) throw InvalidArgument("atom state has no population");
  const double p2 = a.f2_population() / total;
  return p2 * (1.0 - c.blowaway_fidelity) + (1.0 - p2) * c.blowaway_fidelity;
}

bool blow_away(const AtomQubit& a, const NodeConfig& c, Rng& rng) {
  const bool in_f2 = bernoulli(rng, a.f2_population() / a.total());
  const bool removed = bernoulli(rng, c.blowaway_fidelity) ? in_f2 : !in_f2;
  return !removed;
}

bool atom_survival(double elapsed_s, const NodeConfig& c, Rng& rng) {
  if (elapsed_s < 0.0) throw InvalidArgument("elapsed time must be non-negative");
  return bernoulli(rng, std::exp(-elapsed_s / c.trap_lifetime_s));
}

}  // namespace qnode::physics

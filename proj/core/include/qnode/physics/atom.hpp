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

#include <Eigen/Dense>

#include "qnode/physics/node_config.hpp"
#include "qnode/quantum/jones.hpp"
#include "qnode/rng.hpp"
#include "qnode/units.hpp"

namespace qnode::physics {

enum class Manifold { ground_5s_half, excited_5p_half, excited_5p_three_half };

struct AtomLevel {
  int f = 1;
  int m_f = 0;
  Manifold manifold = Manifold::ground_5s_half;

  bool is_valid() const { return f >= 0 && f <= 2 && m_f >= -f && m_f <= f; }
  bool operator==(const AtomLevel&) const = default;

  static constexpr AtomLevel down() { return {1, -1, Manifold::ground_5s_half}; }
  static constexpr AtomLevel up() { return {1, 1, Manifold::ground_5s_half}; }
  static constexpr AtomLevel up_prime() { return {2, 1, Manifold::ground_5s_half}; }
  static constexpr AtomLevel clock_lower() { return {1, 0, Manifold::ground_5s_half}; }
  static constexpr AtomLevel clock_upper() { return {2, 0, Manifold::ground_5s_half}; }
  static constexpr AtomLevel excited() { return {0, 0, Manifold::excited_5p_three_half}; }
};

// Two levels addressed by a qubit operation; slot 0 is the lower level.
enum class QubitPair {
  pre_map,  // (down, up)       both f = 1
  mapped,   // (down, up')      f = 1 / f = 2, magic-field qubit
  clock,    // (|1,0>, |2,0>)
  bare,     // (up, up')
};

AtomLevel pair_level(QubitPair pair, int slot);

// Atom state during the incoherent stages of a sequence: a (sub-normalized)
// density matrix on one qubit pair plus the population parked in f = 1
// sublevels outside that pair. Coherence between the pair and the parked
// population never influences a hyperfine-selective measurement, so it is not
// tracked.
struct AtomQubit {
  QubitPair pair = QubitPair::pre_map;
  quantum::Mat2 qubit = quantum::Mat2::Zero();
  double other_f1 = 0.0;

  static AtomQubit in_slot(QubitPair pair, int slot);
  static AtomQubit parked();  // all population outside the pair, e.g. |1,0> before mapping

  double total() const { return qubit.trace().real() + other_f1; }
  double f2_population() const;
  double f1_population() const { return total() - f2_population(); }
  bool is_valid(double tol = 1e-12) const;
};

// |f=1, m_f=0> with probability pump_fidelity, else m_f = +-1 with equal odds.
AtomQubit optical_pump(Rng& rng, const NodeConfig& c);

// True when the atom sits in the excitation-capable |f=1, m_f=0> state.
bool in_initial_state(const AtomQubit& a);

// Moves |1,0> population into slot 0 of pair and the qubit-slot (m_f = +-1)
// population out to the parked bin.
AtomQubit prepare_pair(const AtomQubit& pumped, QubitPair pair);

AtomQubit dephase(const AtomQubit& a, double t, double t2star);

// Rotation by angle theta about the equatorial axis at azimuth phi.
AtomQubit rotate(const AtomQubit& a, Angle theta, Angle phi);

// up -> up' on the pre-map qubit. Incoherent model: transfer with probability
// map_fidelity_m1, the remainder stays in f = 1. Detuning model: per-shot
// Gaussian detuning with map_detuning_sigma_khz on a resonant pi pulse.
AtomQubit microwave_pi_map(const AtomQubit& a, const NodeConfig& c, Rng& rng);

// Per-shot detuning of the detuning model; 0 (and no draw) otherwise.
double sample_map_detuning(const NodeConfig& c, Rng& rng);

// Mapping pulse at a given detuning (ignored by the incoherent model).
AtomQubit microwave_pi_map_at(const AtomQubit& a, const NodeConfig& c, double detuning_khz);

// Mean transferred population of the detuning model (numerical average).
double detuning_model_transfer(const NodeConfig& c);

// Rotation of the mapped qubit by pulse_area * (1 + eps) about the configured axis.
AtomQubit two_photon_rotation(const AtomQubit& a, Angle pulse_area, const NodeConfig& c);

// Probability that blow-away leaves the atom trapped (symmetric error model).
double retention_probability(const AtomQubit& a, const NodeConfig& c);

// Samples the hyperfine manifold, then the blow-away outcome.
bool blow_away(const AtomQubit& a, const NodeConfig& c, Rng& rng);

// Exponential trap survival over elapsed_s seconds.
bool atom_survival(double elapsed_s, const NodeConfig& c, Rng& rng);

}  // namespace qnode::physics

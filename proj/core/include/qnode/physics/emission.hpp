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
#include <optional>
#include <vector>

#include "qnode/physics/atom.hpp"
#include "qnode/physics/node_config.hpp"
#include "qnode/quantum/joint_state.hpp"
#include "qnode/rng.hpp"

namespace qnode::physics {

// Exponentially modified Gaussian: Normal(center, sigma) + Exponential(tau).
double emg_pdf(double t, double center, double sigma, double tau);
double emg_cdf(double t, double center, double sigma, double tau);

// Photon arrival time in ns relative to the start of the attempt.
double sample_emission_time(Rng& rng, const NodeConfig& c);

enum class Emitted { none, sigma_plus, sigma_minus };
enum class ClickOrigin { photon, dark };

struct Click {
  int attempt = 0;  // 1-based
  int channel = 1;  // SPCM 1 or 2
  double time_ns = 0.0;
  ClickOrigin origin = ClickOrigin::dark;
};

struct CycleOutcome {
  bool started_in_initial_state = false;
  int emission_attempt = 0;  // attempt emitting a sigma photon, 0 = none
  Emitted emitted = Emitted::none;
  bool detected = false;
  Click photon_click;  // valid when detected
  bool multi_photon = false;
  std::vector<Click> dark_clicks;
  int gates_opened = 0;

  // Earliest click of the cycle, if any.
  std::optional<Click> trigger() const;
  // Every click, ordered by (attempt, time).
  std::vector<Click> clicks() const;
};

struct CycleOptions {
  // Entanglement runs stop at the first gate with a click; g2 runs open all gates.
  bool stop_on_click = false;
};

// One excitation cycle: up to attempts_per_cycle excitations of the atom, each
// decaying back to |1,0> (pi, 1/3) or emitting a sigma photon that ends the
// cycle's useful attempts. Detected photons are assigned an SPCM by a 50:50
// splitter; dark clicks are uniform over every open gate.
CycleOutcome sample_excitation_cycle(const AtomQubit& state, const NodeConfig& c, Rng& rng,
                                     const CycleOptions& options = {});

// Joint atom-photon state of a collected sigma photon, circular basis, with the
// configured white-noise admixture.
quantum::JointState entangled_emission(const NodeConfig& c);

// Same state after the photon crossed the fiber (linear coordinates).
quantum::JointState entangled_emission(const NodeConfig& c, const quantum::PolarizationOp& fiber);

}  // namespace qnode::physics

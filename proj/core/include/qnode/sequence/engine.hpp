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

#include <array>
#include <cstdint>
#include <vector>

#include "qnode/physics/node_config.hpp"
#include "qnode/quantum/jones.hpp"
#include "qnode/sequence/event_log.hpp"
#include "qnode/sequence/spec.hpp"

namespace qnode::sequence {

// Static polarization rotation of the fiber for a log, Haar-distributed.
quantum::PolarizationOp fiber_unitary(std::uint64_t seed);

// Fiber of a spec: the override when present, else the seeded draw.
quantum::Mat2 resolve_fiber(const SequenceSpec& spec);

// Entanglement generation and verification. Waveplate angles are optimized
// first when the spec leaves them unset.
EventLog run_entanglement(const SequenceSpec& spec, const physics::NodeConfig& config);

struct ExpectedTomogram {
  std::array<double, 4> p{};  // DiagonalTomogram entry order
  std::int64_t valid_shots = 0;
};

// Rao-Blackwellised joint populations over spec.budget shots at fixed angles:
// the same shot streams as run_entanglement, with outcome sampling replaced by
// conditional probabilities.
ExpectedTomogram expected_joint_probabilities(const SequenceSpec& spec,
                                              const physics::NodeConfig& config,
                                              const WaveplateAngles& angles);

// HBT run: spec.budget excitation cycles with every gate open.
EventLog run_g2(const SequenceSpec& spec, const physics::NodeConfig& config);

struct PopulationRow {
  double t_us = 0.0;
  std::int64_t shots = 0;
  std::int64_t f2_detected = 0;  // atom absent at readout
  double population() const { return shots > 0 ? double(f2_detected) / double(shots) : 0.0; }
};

struct PopulationTable {
  Transition transition = Transition::clock;
  double detuning_khz = 0.0;
  std::vector<PopulationRow> rows;
};

double rabi_frequency_khz(Transition t, const physics::NodeConfig& c);
double coherence_time_us(Transition t, const physics::NodeConfig& c);

// Default scan grids: Rabi over about four periods, Ramsey over 2.5 T2*.
std::vector<double> default_rabi_grid(Transition t, const physics::NodeConfig& c, int points = 80);
std::vector<double> default_ramsey_grid(Transition t, const physics::NodeConfig& c, int points = 80);
double default_ramsey_detuning_khz(Transition t, const physics::NodeConfig& c);

PopulationTable run_rabi(const SequenceSpec& spec, const physics::NodeConfig& config);
PopulationTable run_ramsey(const SequenceSpec& spec, const physics::NodeConfig& config);

struct ReadoutShot {
  bool atom_present = false;
  physics::ReadoutCounts counts;
};

// Alternating loaded / empty trap readouts.
std::vector<ReadoutShot> run_readout_histogram(const SequenceSpec& spec,
                                               const physics::NodeConfig& config);

}  // namespace qnode::sequence

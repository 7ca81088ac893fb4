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

// Internal: one entanglement shot split into the angle-independent trajectory
// (excitation cycles up to the trigger) and the measurement stage.

#include <array>
#include <cstdint>
#include <vector>

#include "qnode/physics/atom.hpp"
#include "qnode/physics/emission.hpp"
#include "qnode/physics/readout.hpp"
#include "qnode/sequence/event_log.hpp"

namespace qnode::sequence::detail {

struct Trajectory {
  Trigger trigger = Trigger::none;
  bool multi_photon = false;
  physics::Click trigger_click;
  std::vector<physics::Click> gate_clicks;  // every click of the trigger gate
  physics::AtomQubit dark_atom;             // atom state behind a dark trigger
  double map_detuning_khz = 0.0;
  std::int64_t cycles = 0;
  std::int64_t atoms_loaded = 0;
  std::int64_t gates = 0;
};

Trajectory sample_trajectory(const physics::NodeConfig& c, Rng& rng);

// Photon measurement chain and the fixed conditional atom states of the
// emitted pair for one setting of the waveplates.
struct Measurement {
  quantum::MeasurementBasis basis = quantum::MeasurementBasis::z;
  std::array<double, 2> p_photon{};          // P(H), P(V) for a collected photon
  std::array<quantum::Mat2, 2> atom_given{};  // normalized, pre-map
  physics::ReadoutModel readout;
};

Measurement make_measurement(const physics::NodeConfig& c, const quantum::Mat2& fiber,
                             const WaveplateAngles& actual, quantum::MeasurementBasis basis);

// Atom state right before blow-away.
physics::AtomQubit verify_pipeline(physics::AtomQubit atom, const physics::NodeConfig& c,
                                   quantum::MeasurementBasis basis, double map_detuning_khz);

// P(atom reported up', i.e. absent at readout) for a pre-blow-away state.
double p_report_up(const physics::AtomQubit& atom, const physics::NodeConfig& c,
                   const physics::ReadoutModel& r);

// Expected DiagonalTomogram-ordered populations of one shot; all zero for
// shots the estimators exclude.
std::array<double, 4> expected_outcome(const Trajectory& t, const Measurement& m,
                                       const physics::NodeConfig& c);

struct SampledShot {
  ShotRecord summary;
  std::vector<ClickRecord> clicks;
};

// Continues the trajectory's stream through photon and atom measurement.
SampledShot sample_measurement(const Trajectory& t, const Measurement& m,
                               const physics::NodeConfig& c, Rng& rng, std::int64_t shot_id,
                               const WaveplateAngles& commanded);

std::vector<Trajectory> sample_trajectories(const physics::NodeConfig& c, std::uint64_t seed,
                                            std::int64_t n, unsigned threads);

// Summed expected populations over trajectories; valid counts contributing shots.
std::array<double, 4> expected_sum(const std::vector<Trajectory>& trajectories, const Measurement& m,
                                   const physics::NodeConfig& c, std::int64_t* valid = nullptr);

WaveplateAngles with_setting_errors(const WaveplateAngles& commanded, const physics::NodeConfig& c);

// Applies fn(i) for i in [0, n) over up to threads workers; fn must be
// independent across i.
template <class Fn>
void parallel_for(std::int64_t n, unsigned threads, Fn&& fn);

}  // namespace qnode::sequence::detail

#include "parallel.inl"

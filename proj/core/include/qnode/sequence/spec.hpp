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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qnode/quantum/fidelity.hpp"
#include "qnode/quantum/jones.hpp"

namespace qnode::sequence {

enum class ExperimentKind { entanglement, g2, rabi, ramsey, readout_histogram };
enum class Transition { clock, bare, magic };
enum class G2Source { atom, poisson };
// sampled: every outcome drawn. expected: photon and atom outcomes replaced by
// their exact conditional probabilities (used for scans and angle search).
enum class Sampling { sampled, expected };

struct WaveplateAngles {
  double qwp_deg = 0.0;  // alpha
  double hwp_deg = 0.0;  // beta
  bool operator==(const WaveplateAngles&) const = default;
};

struct SequenceSpec {
  ExperimentKind kind = ExperimentKind::entanglement;
  quantum::MeasurementBasis basis = quantum::MeasurementBasis::z;
  std::optional<WaveplateAngles> angles;  // unset: optimize before the run
  // HWP angles (deg) for waveplate scans; durations/delays (us) for rabi/ramsey.
  std::vector<double> grid;
  Transition transition = Transition::clock;
  double detuning_khz = 0.0;  // ramsey; 0 picks about three fringes per T2*
  std::int64_t budget = 1000;  // shots, cycles (g2), or shots per grid point
  std::uint64_t seed = 1;
  G2Source g2_source = G2Source::atom;
  double poisson_mean_per_gate = 0.2;  // detected photons per gate, both SPCMs
  Sampling sampling = Sampling::sampled;
  std::int64_t optimizer_shots = 200;  // per grid point of the angle search
  std::optional<quantum::Mat2> fiber;  // unset: Haar draw from the seed
  unsigned threads = 1;

  // Throws InvalidArgument on an empty or non-increasing grid where one is
  // needed, or on a non-positive budget.
  void validate() const;

  bool operator==(const SequenceSpec&) const = default;
};

std::string to_string(ExperimentKind k);
std::string to_string(Transition t);
std::string to_string(quantum::MeasurementBasis b);
std::string to_string(G2Source s);
std::string to_string(Sampling s);
// Inverses; throw InvalidArgument on unknown names.
ExperimentKind experiment_kind_from(const std::string& s);
Transition transition_from(const std::string& s);
quantum::MeasurementBasis basis_from(const std::string& s);
G2Source g2_source_from(const std::string& s);
Sampling sampling_from(const std::string& s);

// Evenly spaced grid [first, last] with n points.
std::vector<double> linear_grid(double first, double last, int n);

}  // namespace qnode::sequence

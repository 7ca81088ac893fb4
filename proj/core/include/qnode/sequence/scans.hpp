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
#include <vector>

#include "qnode/estimators/least_squares.hpp"
#include "qnode/physics/node_config.hpp"
#include "qnode/sequence/spec.hpp"

namespace qnode::sequence {

struct ScanRow {
  double beta_deg = 0.0;
  std::array<double, 4> p{};  // DiagonalTomogram entry order
  std::int64_t shots = 0;
  double even_parity() const { return p[0] + p[3]; }
};

struct ScanTable {
  quantum::MeasurementBasis basis = quantum::MeasurementBasis::z;
  double alpha_deg = 0.0;
  std::vector<ScanRow> rows;
};

// Joint populations across spec.grid (HWP angles) at fixed QWP angle alpha.
// Every grid point reuses the same shot streams (common random numbers).
// spec.sampling selects sampled frequencies or expected probabilities.
ScanTable scan_waveplates(const SequenceSpec& spec, const physics::NodeConfig& config,
                          double alpha_deg);

// Even-parity fit of a scan.
estimators::FitResult fit_scan_parity(const ScanTable& table);

struct AngleSearch {
  WaveplateAngles best;
  double amplitude = 0.0;  // fitted parity amplitude at the best alpha
};

// Coarse-to-fine search: alpha on a 5 deg grid then 1 deg around the best,
// an 18-point HWP scan at each alpha; beta is placed on the fitted even-parity
// maximum. Waveplate setting errors are not visible to the search.
AngleSearch optimize_angles(const SequenceSpec& spec, const physics::NodeConfig& config);

}  // namespace qnode::sequence

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

#include "qnode/quantum/joint_state.hpp"

namespace qnode::quantum {

enum class MeasurementBasis { z, x };

// Joint populations in one measurement basis. In the x basis the labels refer
// to the rotated outcomes: up' <-> atom |+>, H <-> photon |+>.
struct DiagonalTomogram {
  enum Entry { up_h = 0, up_v = 1, down_h = 2, down_v = 3 };

  std::array<double, 4> p{};
  std::array<double, 4> sigma{};

  double operator[](Entry e) const { return p[e]; }

  // Throws InvalidArgument on negative/over-unity entries or a sum that
  // misses 1 by more than the combined uncertainty.
  void validate() const;
};

struct Estimate {
  double value = 0.0;
  double uncertainty = 0.0;
};

// Reads circular-tagged states in the ideal analyzer frame (sigma- -> H,
// sigma+ -> V) and pre-map states with up -> up'. Linear-tagged states are
// read as they are.
JointState analyzer_frame(const JointState& rho);

// F = (rho_{up'H,up'H} + rho_{downV,downV})/2 + Re rho_{up'H,downV}
double fidelity_full(const JointState& rho);

// Lower bound from z and x populations with first-order uncertainty.
Estimate fidelity_lower_bound(const DiagonalTomogram& z, const DiagonalTomogram& x);

// Exact populations of a state in the analyzer frame, no uncertainty.
DiagonalTomogram exact_diagonals(const JointState& rho, MeasurementBasis basis);

}  // namespace qnode::quantum

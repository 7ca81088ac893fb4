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
#include "qnode/estimators/budget.hpp"

#include <cmath>
#include <numbers>

#include "qnode/error.hpp"
#include "qnode/estimators/readout.hpp"
#include "qnode/quantum/joint_state.hpp"

namespace qnode::estimators {

double ErrorBudget::linear_sum() const {
  double s = 0.0;
  for (const auto& e : entries) s += e.infidelity;
  return s;
}

double ErrorBudget::quadrature_sum() const {
  double s = 0.0;
  for (const auto& e : entries) s += e.uncertainty * e.uncertainty;
  return std::sqrt(s);
}

ErrorBudget reference_budget() {
  return {{
      {"atomic state measurement", 0.05, 0.07, false},
      {"atom basis rotation", 0.005, 0.005, false},
      {"atom dephasing", 0.005, 0.0, true},
      {"photon detection noise", 0.003, 0.0, true},
      {"waveplate rotation error", 0.003, 0.0, true},
      {"excitation polarization", 0.005, 0.0, true},
      {"imperfect optical pumping", 0.0, 0.0, false},
  }};
}

ErrorBudget budget_from_config(const physics::NodeConfig& c) {
  ErrorBudget b;
  b.entries.push_back({"atomic state measurement", 1.0 - physics::atom_measurement_fidelity(c), 0.0,
                       false});
  // A pi/2 pulse with relative area error eps keeps cos(pi eps / 2) of the
  // x-basis contrast; the bound averages both bases.
  const double eps = physics::rotation_area_error(c);
  b.entries.push_back(
      {"atom basis rotation", 0.5 * (1.0 - std::cos(std::numbers::pi * eps / 2.0)), 0.0, false});
  const double deph =
      c.premap_dephasing
          ? 0.5 * (1.0 - quantum::coherence_factor(physics::premap_window_us(c), c.t2_bare_us))
          : 0.0;
  b.entries.push_back({"atom dephasing", deph, 0.0, false});
  // Dark-triggered shots carry no correlation.
  const double dark_per_cycle = 2.0 * physics::dark_click_probability(c) * c.attempts_per_cycle;
  const double dark_fraction =
      dark_per_cycle / (dark_per_cycle + physics::expected_cycle_detection_probability(c));
  b.entries.push_back({"photon detection noise", 0.75 * dark_fraction, 0.0, false});
  b.entries.push_back({"waveplate rotation error",
                       1.0 - visibility_penalty(Angle::degrees(c.qwp_angle_error_deg)), 0.0, false});
  b.entries.push_back({"excitation polarization", 0.75 * c.excitation_pol_admixture, 0.0, false});
  b.entries.push_back({"imperfect optical pumping", 0.0, 0.0, false});
  return b;
}

quantum::Estimate compose_error_budget(const ErrorBudget& budget) {
  for (const auto& e : budget.entries) {
    if (!(e.infidelity >= 0.0 && e.infidelity <= 1.0))
      throw InvalidArgument("budget entry '" + e.name + "' outside [0, 1]");
    if (!(e.uncertainty >= 0.0)) throw InvalidArgument("budget entry '" + e.name + "' has negative uncertainty");
  }
  return {budget.linear_sum(), budget.quadrature_sum()};
}

}  // namespace qnode::estimators

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

#include <string>

namespace qnode::physics {

enum class MapErrorModel { incoherent, detuning };

// Every physical parameter of the node. Units are part of the field names.
// The second block holds the imperfection knobs; at their defaults they sit
// at the central values of the node's infidelity budget.
struct NodeConfig {
  // Excitation and photon collection.
  double tau_excited_ns = 26.4;
  double pulse_fwhm_ns = 18.7;
  double pulse_center_ns = 40.0;  // excitation pulse centre inside the gate
  double gate_window_ns = 200.0;
  double trap_off_window_ns = 250.0;
  int attempts_per_cycle = 5;
  double attempt_spacing_us = 20.0;
  double eta_fiber = 0.066;
  double optics_loss = 0.15;
  double spcm_qe = 0.65;
  double raman_bg_rate_hz = 2000.0;  // trap light on only; never inside a gate

  // Fluorescence readout and atom lifetime.
  double readout_exposure_ms = 20.0;
  double mu_atom_per_spcm = 100.0;  // includes the background below
  double mu_bg_per_spcm = 40.0;
  double cycles_per_atom_mean = 80.0;
  double trap_lifetime_s = 2.0;
  double cycle_duration_ms = 25.0;  // effective wall time per excitation cycle
  double loading_probability = 0.95;

  // Qubit coherence and microwave/RF control.
  double t2_bare_us = 110.0;
  double t2_magic_us = 3200.0;
  double t2_clock_us = 3320.0;
  double map_pulse_len_us = 5.3;
  double branch_delay_us = 5.0;
  double two_photon_rabi_khz = 2.87;
  double pi_half_len_us = 87.0;
  double clock_rabi_khz = 118.0;
  double bare_rabi_khz = 94.339622641509436;  // pi pulse of map_pulse_len_us
  double bias_field_gauss = 3.23;
  double rotation_axis_deg = 90.0;  // 90 = sigma_y
  double fluor_readout_fidelity = 0.996;

  // Imperfection knobs.
  double pump_fidelity = 0.987;
  double map_fidelity_m1 = 0.96;
  MapErrorModel map_error_model = MapErrorModel::incoherent;
  double map_detuning_sigma_khz = 0.0;
  double blowaway_fidelity = 0.992;
  double two_photon_transfer_fidelity = 0.96;
  double dark_rate_hz = 50.0;
  bool premap_dephasing = true;
  bool readout_atom_loss = true;
  double multi_photon_rate = 0.005;
  double excitation_pol_admixture = 0.0067;
  double qwp_angle_error_deg = 2.0;
  double hwp_angle_error_deg = 0.0;

  // Throws InvalidArgument naming the first offending field.
  void validate() const;

  bool operator==(const NodeConfig&) const = default;
};

// Same physics with every imperfection knob switched off.
NodeConfig ideal_knobs(NodeConfig config);

// eta_fiber * (1 - optics_loss) * spcm_qe
double eta_chain(const NodeConfig& c);

// 1 - (1/3)^attempts
double sigma_emission_probability(const NodeConfig& c);

// (1 - (1/3)^attempts) * eta_chain
double closed_form_cycle_detection(const NodeConfig& c);

// Closed form including pumping failures (no emission from m_f = +-1) and the
// fraction of the arrival-time distribution falling inside the gate.
double expected_cycle_detection_probability(const NodeConfig& c);

// Probability of a photon emitted at the start of an attempt arriving in the gate.
double gate_acceptance(const NodeConfig& c);

// Dark-click probability for one SPCM in one gate.
double dark_click_probability(const NodeConfig& c);

// branch_delay + map_pulse_len / 2
double premap_window_us(const NodeConfig& c);

// Relative pulse-area error eps with sin^2(pi (1 + eps) / 2) = transfer fidelity.
double rotation_area_error(const NodeConfig& c);

// Mapping, blow-away and fluorescence readout in series.
double atom_measurement_fidelity(const NodeConfig& c);

}  // namespace qnode::physics

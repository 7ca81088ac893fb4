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
#include "qnode/physics/node_config.hpp"

#include <cmath>
#include <string>

#include "qnode/error.hpp"
#include "qnode/physics/emission.hpp"
#include "qnode/units.hpp"

namespace qnode::physics {
namespace {

void require(bool ok, const char* field, const char* what) {
  if (!ok) throw InvalidArgument(std::string(field) + " " + what);
}

void positive(double v, const char* field) {
  require(std::isfinite(v) && v > 0.0, field, "must be positive");
}

void non_negative(double v, const char* field) {
  require(std::isfinite(v) && v >= 0.0, field, "must be non-negative");
}

void probability(double v, const char* field) {
  require(std::isfinite(v) && v >= 0.0 && v <= 1.0, field, "must lie in [0, 1]");
}

}  // namespace

void NodeConfig::validate() const {
  positive(tau_excited_ns, "tau_excited_ns");
  positive(pulse_fwhm_ns, "pulse_fwhm_ns");
  non_negative(pulse_center_ns, "pulse_center_ns");
  positive(gate_window_ns, "gate_window_ns");
  positive(trap_off_window_ns, "trap_off_window_ns");
  require(gate_window_ns <= trap_off_window_ns, "gate_window_ns",
          "must fit inside trap_off_window_ns");
  require(attempts_per_cycle >= 1, "attempts_per_cycle", "must be at least 1");
  positive(attempt_spacing_us, "attempt_spacing_us");
  probability(eta_fiber, "eta_fiber");
  probability(optics_loss, "optics_loss");
  probability(spcm_qe, "spcm_qe");
  require(eta_chain(*this) > 0.0, "eta_fiber", "leaves no detection efficiency");
  non_negative(raman_bg_rate_hz, "raman_bg_rate_hz");

  positive(readout_exposure_ms, "readout_exposure_ms");
  positive(mu_atom_per_spcm, "mu_atom_per_spcm");
  non_negative(mu_bg_per_spcm, "mu_bg_per_spcm");
  require(mu_atom_per_spcm > mu_bg_per_spcm, "mu_atom_per_spcm", "must exceed mu_bg_per_spcm");
  require(std::isfinite(cycles_per_atom_mean) && cycles_per_atom_mean >= 1.0,
          "cycles_per_atom_mean", "must be at least 1");
  positive(trap_lifetime_s, "trap_lifetime_s");
  positive(cycle_duration_ms, "cycle_duration_ms");
  require(loading_probability > 0.0 && loading_probability <= 1.0, "loading_probability",
          "must lie in (0, 1]");

  positive(t2_bare_us, "t2_bare_us");
  positive(t2_magic_us, "t2_magic_us");
  positive(t2_clock_us, "t2_clock_us");
  positive(map_pulse_len_us, "map_pulse_len_us");
  non_negative(branch_delay_us, "branch_delay_us");
  positive(two_photon_rabi_khz, "two_photon_rabi_khz");
  positive(pi_half_len_us, "pi_half_len_us");
  positive(clock_rabi_khz, "clock_rabi_khz");
  positive(bare_rabi_khz, "bare_rabi_khz");
  non_negative(bias_field_gauss, "bias_field_gauss");
  require(std::isfinite(rotation_axis_deg), "rotation_axis_deg", "must be finite");
  require(fluor_readout_fidelity > 0.5 && fluor_readout_fidelity <= 1.0,
          "fluor_readout_fidelity", "must lie in (0.5, 1]");

  probability(pump_fidelity, "pump_fidelity");
  probability(map_fidelity_m1, "map_fidelity_m1");
  non_negative(map_detuning_sigma_khz, "map_detuning_sigma_khz");
  probability(blowaway_fidelity, "blowaway_fidelity");
  probability(two_photon_transfer_fidelity, "two_photon_transfer_fidelity");
  non_negative(dark_rate_hz, "dark_rate_hz");
  probability(multi_photon_rate, "multi_photon_rate");
  probability(excitation_pol_admixture, "excitation_pol_admixture");
  require(std::isfinite(qwp_angle_error_deg), "qwp_angle_error_deg", "must be finite");
  require(std::isfinite(hwp_angle_error_deg), "hwp_angle_error_deg", "must be finite");
}

NodeConfig ideal_knobs(NodeConfig c) {
  c.pump_fidelity = 1.0;
  c.map_fidelity_m1 = 1.0;
  c.map_detuning_sigma_khz = 0.0;
  c.blowaway_fidelity = 1.0;
  c.two_photon_transfer_fidelity = 1.0;
  c.dark_rate_hz = 0.0;
  c.premap_dephasing = false;
  c.readout_atom_loss = false;
  c.multi_photon_rate = 0.0;
  c.excitation_pol_admixture = 0.0;
  c.qwp_angle_error_deg = 0.0;
  c.hwp_angle_error_deg = 0.0;
  return c;
}

double eta_chain(const NodeConfig& c) { return c.eta_fiber * (1.0 - c.optics_loss) * c.spcm_qe; }

double sigma_emission_probability(const NodeConfig& c) {
  return 1.0 - std::pow(1.0 / 3.0, c.attempts_per_cycle);
}

double closed_form_cycle_detection(const NodeConfig& c) {
  return sigma_emission_probability(c) * eta_chain(c);
}

double gate_acceptance(const NodeConfig& c) {
  const double sigma = c.pulse_fwhm_ns / kFwhmPerSigma;
  return emg_cdf(c.gate_window_ns, c.pulse_center_ns, sigma, c.tau_excited_ns) -
         emg_cdf(0.0, c.pulse_center_ns, sigma, c.tau_excited_ns);
}

double expected_cycle_detection_probability(const NodeConfig& c) {
  return c.pump_fidelity * closed_form_cycle_detection(c) * gate_acceptance(c);
}

double dark_click_probability(const NodeConfig& c) {
  return -std::expm1(-c.dark_rate_hz * c.gate_window_ns * 1e-9);
}

double premap_window_us(const NodeConfig& c) { return c.branch_delay_us + c.map_pulse_len_us / 2.0; }

double rotation_area_error(const NodeConfig& c) {
  return 2.0 * std::acos(std::sqrt(c.two_photon_transfer_fidelity)) / std::numbers::pi;
}

double atom_measurement_fidelity(const NodeConfig& c) {
  return c.map_fidelity_m1 * c.blowaway_fidelity * c.fluor_readout_fidelity;
}

}  // namespace qnode::physics

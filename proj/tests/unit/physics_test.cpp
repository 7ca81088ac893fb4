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
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gtest/gtest.h>

#include "qnode/error.hpp"
#include "qnode/physics/atom.hpp"
#include "qnode/physics/emission.hpp"
#include "qnode/physics/node_config.hpp"
#include "qnode/physics/readout.hpp"
#include "qnode/quantum/fidelity.hpp"

namespace qnode::physics {
namespace {

constexpr double kPi = std::numbers::pi;

// |observed - expected| within k binomial standard deviations.
void expect_binomial(double hits, double n, double p, double k = 4.0) {
  EXPECT_NEAR(hits / n, p, k * std::sqrt(p * (1 - p) / n)) << "n=" << n;
}

TEST(NodeConfig, DefaultsValidateAndRejectNonsense) {
  NodeConfig c;
  EXPECT_NO_THROW(c.validate());
  c.eta_fiber = 1.5;
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = {};
  c.attempts_per_cycle = 0;
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = {};
  c.tau_excited_ns = -1;
  EXPECT_THROW(c.validate(), InvalidArgument);
}

TEST(NodeConfig, EfficiencyChainClosedForms) {
  const NodeConfig c;
  EXPECT_NEAR(eta_chain(c), 0.066 * 0.85 * 0.65, 1e-15);
  EXPECT_NEAR(sigma_emission_probability(c), 1.0 - 1.0 / 243.0, 1e-15);
  EXPECT_NEAR(closed_form_cycle_detection(c), (1.0 - 1.0 / 243.0) * 0.066 * 0.85 * 0.65, 1e-15);
  const double expected = expected_cycle_detection_probability(c);
  EXPECT_LT(expected, closed_form_cycle_detection(c));
  EXPECT_NEAR(expected, c.pump_fidelity * closed_form_cycle_detection(c) * gate_acceptance(c), 1e-12);
  EXPECT_NEAR(dark_click_probability(c), -std::expm1(-50.0 * 200e-9), 1e-15);
  EXPECT_NEAR(premap_window_us(c), 5.0 + 5.3 / 2, 1e-12);
}

TEST(NodeConfig, RotationAreaErrorInvertsTransfer) {
  NodeConfig c;
  const double eps = rotation_area_error(c);
  EXPECT_NEAR(std::pow(std::sin(kPi * (1 + eps) / 2), 2), c.two_photon_transfer_fidelity, 1e-12);
  c.two_photon_transfer_fidelity = 1.0;
  EXPECT_NEAR(rotation_area_error(c), 0.0, 1e-12);
}

TEST(NodeConfig, AtomMeasurementFidelityIsAProduct) {
  const NodeConfig c;
  EXPECT_NEAR(atom_measurement_fidelity(c), 0.96 * 0.992 * 0.996, 1e-15);
  // Fluorescence readout is not an imperfection knob.
  EXPECT_NEAR(atom_measurement_fidelity(ideal_knobs(c)), 0.996, 1e-15);
}

TEST(Emission, EmgPdfIntegratesToCdf) {
  const NodeConfig c;
  const double sigma = c.pulse_fwhm_ns / kFwhmPerSigma;
  auto pdf = [&](double t) { return emg_pdf(t, c.pulse_center_ns, sigma, c.tau_excited_ns); };
  for (double t : {0.0, 25.0, 40.0, 60.0, 120.0, 200.0}) {
    const double num = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(pdf, -200.0, t, 15, 1e-13);
    EXPECT_NEAR(emg_cdf(t, c.pulse_center_ns, sigma, c.tau_excited_ns), num, 1e-10) << t;
  }
  const double total = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(pdf, -200.0, 2000.0, 15, 1e-13);
  EXPECT_NEAR(total, 1.0, 1e-10);
  EXPECT_NEAR(gate_acceptance(c), emg_cdf(200.0, 40.0, sigma, 26.4) - emg_cdf(0.0, 40.0, sigma, 26.4), 1e-15);
  // Far tails stay finite.
  EXPECT_TRUE(std::isfinite(emg_pdf(-500.0, 40.0, sigma, 26.4)));
  EXPECT_TRUE(std::isfinite(emg_pdf(5000.0, 40.0, sigma, 26.4)));
  EXPECT_THROW(emg_pdf(0.0, 0.0, 0.0, 1.0), InvalidArgument);
}

TEST(Emission, SampledTimesHaveEmgMoments) {
  const NodeConfig c;
  Rng rng(7);
  const int n = 200000;
  double s = 0, s2 = 0;
  for (int i = 0; i < n; ++i) {
    const double t = sample_emission_time(rng, c);
    s += t;
    s2 += t * t;
  }
  const double mean = s / n, var = s2 / n - mean * mean;
  const double sigma = c.pulse_fwhm_ns / kFwhmPerSigma;
  const double true_var = sigma * sigma + c.tau_excited_ns * c.tau_excited_ns;
  EXPECT_NEAR(mean, c.pulse_center_ns + c.tau_excited_ns, 4 * std::sqrt(true_var / n));
  EXPECT_NEAR(var, true_var, 0.02 * true_var);
}

TEST(Emission, FiveAttemptBranching) {
  NodeConfig c;
  c.dark_rate_hz = 0.0;
  Rng rng(1);
  const int n = 200000;
  int emitted = 0, first = 0;
  for (int i = 0; i < n; ++i) {
    const auto o = sample_excitation_cycle(AtomQubit::parked(), c, rng);
    EXPECT_TRUE(o.started_in_initial_state);
    emitted += o.emitted != Emitted::none;
    first += o.emission_attempt == 1;
  }
  expect_binomial(emitted, n, sigma_emission_probability(c));
  expect_binomial(first, n, 2.0 / 3.0);
}

TEST(Emission, DetectionMatchesClosedFormOnAGrid) {
  // Perfect pumping and a gate wide enough to keep every photon.
  int point = 0;
  for (int attempts : {1, 3, 5}) {
    for (double fiber : {0.05, 0.3, 0.9}) {
      NodeConfig c;
      c.attempts_per_cycle = attempts;
      c.eta_fiber = fiber;
      c.dark_rate_hz = 0.0;
      c.pump_fidelity = 1.0;
      c.gate_window_ns = c.trap_off_window_ns = 2000.0;
      Rng rng = make_stream(30, StreamPurpose::shot, point++);
      const int n = 100000;
      int detected = 0;
      for (int i = 0; i < n; ++i)
        detected += sample_excitation_cycle(optical_pump(rng, c), c, rng).detected;
      const double p = closed_form_cycle_detection(c);
      EXPECT_NEAR(double(detected) / n, p, 3 * std::sqrt(p * (1 - p) / n)) << attempts << " " << fiber;
    }
  }
}

TEST(Emission, PumpFailuresDoNotEmit) {
  const NodeConfig c;
  Rng rng(2);
  for (int slot = 0; slot < 2; ++slot) {
    for (int i = 0; i < 1000; ++i) {
      const auto o = sample_excitation_cycle(AtomQubit::in_slot(QubitPair::pre_map, slot), c, rng);
      EXPECT_EQ(o.emitted, Emitted::none);
      EXPECT_FALSE(o.detected);
    }
  }
}

TEST(Emission, DetectionAndClickBookkeeping) {
  NodeConfig c;
  c.dark_rate_hz = 2e5;  // dark clicks in about 8% of gates
  Rng rng(3);
  const int n = 100000;
  int detected = 0, darks = 0, gates = 0, ch1 = 0;
  for (int i = 0; i < n; ++i) {
    const auto o = sample_excitation_cycle(AtomQubit::parked(), c, rng);
    gates += o.gates_opened;
    darks += static_cast<int>(o.dark_clicks.size());
    if (o.detected) {
      ++detected;
      ch1 += o.photon_click.channel == 1;
      EXPECT_GE(o.photon_click.time_ns, 0.0);
      EXPECT_LE(o.photon_click.time_ns, c.gate_window_ns);
      EXPECT_EQ(o.photon_click.attempt, o.emission_attempt);
    }
    for (const auto& k : o.clicks()) {
      EXPECT_GE(k.attempt, 1);
      EXPECT_LE(k.attempt, c.attempts_per_cycle);
    }
    EXPECT_EQ(o.gates_opened, c.attempts_per_cycle);
  }
  expect_binomial(detected, n, expected_cycle_detection_probability(c) / c.pump_fidelity);
  expect_binomial(ch1, detected, 0.5);
  const double lambda = 2.0 * c.dark_rate_hz * c.gate_window_ns * 1e-9;
  EXPECT_NEAR(double(darks) / gates, lambda, 5 * std::sqrt(lambda / gates));
}

TEST(Emission, StopOnClickClosesLaterGates) {
  NodeConfig c;
  c.eta_fiber = 1.0;
  c.optics_loss = 0.0;
  c.spcm_qe = 1.0;
  Rng rng(4);
  for (int i = 0; i < 2000; ++i) {
    const auto o = sample_excitation_cycle(AtomQubit::parked(), c, rng, {.stop_on_click = true});
    if (auto t = o.trigger()) {
      EXPECT_EQ(o.gates_opened, t->attempt);
    }
  }
}

TEST(Emission, EntangledStateWithAdmixture) {
  NodeConfig c;
  c.excitation_pol_admixture = 0.0;
  EXPECT_NEAR(quantum::fidelity_full(entangled_emission(c)), 1.0, 1e-12);
  c.excitation_pol_admixture = 0.1;
  EXPECT_NEAR(quantum::fidelity_full(entangled_emission(c)), 0.9 + 0.1 / 4, 1e-12);
}

TEST(Atom, LevelsAndPairs) {
  EXPECT_TRUE(AtomLevel::down().is_valid());
  EXPECT_EQ(pair_level(QubitPair::mapped, 1), AtomLevel::up_prime());
  EXPECT_EQ(pair_level(QubitPair::pre_map, 1), AtomLevel::up());
  EXPECT_EQ(pair_level(QubitPair::clock, 0), AtomLevel::clock_lower());
  EXPECT_FALSE((AtomLevel{1, 2, Manifold::ground_5s_half}.is_valid()));
}

TEST(Atom, OpticalPumpingSuccessRate) {
  const NodeConfig c;
  Rng rng(5);
  const int n = 100000;
  int ok = 0;
  for (int i = 0; i < n; ++i) ok += in_initial_state(optical_pump(rng, c));
  expect_binomial(ok, n, c.pump_fidelity);
}

TEST(Atom, RotationsPreservePopulation) {
  const AtomQubit a = AtomQubit::in_slot(QubitPair::clock, 0);
  const AtomQubit pi = rotate(a, Angle::radians(kPi), Angle());
  EXPECT_NEAR(pi.qubit(1, 1).real(), 1.0, 1e-12);
  const AtomQubit half = rotate(a, Angle::radians(kPi / 2), Angle::radians(0.3));
  EXPECT_NEAR(half.qubit(0, 0).real(), 0.5, 1e-12);
  EXPECT_NEAR(half.total(), 1.0, 1e-12);
  EXPECT_TRUE(half.is_valid());
  const AtomQubit d = dephase(half, 110.0, 110.0);
  EXPECT_NEAR(std::abs(d.qubit(0, 1)), 0.5 * std::exp(-1.0), 1e-12);
  EXPECT_NEAR(d.qubit(0, 0).real(), 0.5, 1e-12);
}

TEST(Atom, IncoherentMappingTransfersUpOnly) {
  const NodeConfig c;
  Rng rng(6);
  const AtomQubit up = microwave_pi_map(AtomQubit::in_slot(QubitPair::pre_map, 1), c, rng);
  EXPECT_EQ(up.pair, QubitPair::mapped);
  EXPECT_NEAR(up.qubit(1, 1).real(), c.map_fidelity_m1, 1e-12);
  EXPECT_NEAR(up.other_f1, 1 - c.map_fidelity_m1, 1e-12);
  EXPECT_NEAR(up.f2_population(), c.map_fidelity_m1, 1e-12);
  const AtomQubit down = microwave_pi_map(AtomQubit::in_slot(QubitPair::pre_map, 0), c, rng);
  EXPECT_NEAR(down.qubit(0, 0).real(), 1.0, 1e-12);
  EXPECT_NEAR(down.f2_population(), 0.0, 1e-12);
}

TEST(Atom, DetuningModelMatchesRabiFormula) {
  NodeConfig c;
  c.map_error_model = MapErrorModel::detuning;
  const double rabi_khz = 1.0 / (2.0 * c.map_pulse_len_us * 1e-3);  // pi pulse
  const double delta = 20.0;
  const double gen = std::hypot(rabi_khz, delta);
  const double oracle = std::pow(rabi_khz / gen * std::sin(kPi * gen * c.map_pulse_len_us * 1e-3), 2);
  const AtomQubit a = microwave_pi_map_at(AtomQubit::in_slot(QubitPair::pre_map, 1), c, delta);
  EXPECT_NEAR(a.f2_population(), oracle, 1e-9);
  EXPECT_NEAR(microwave_pi_map_at(AtomQubit::in_slot(QubitPair::pre_map, 1), c, 0.0).f2_population(), 1.0, 1e-12);
}

TEST(Atom, TwoPhotonRotationAreaError) {
  NodeConfig c;
  const AtomQubit a = AtomQubit::in_slot(QubitPair::mapped, 0);
  const AtomQubit pi = two_photon_rotation(a, Angle::radians(kPi), c);
  EXPECT_NEAR(pi.qubit(1, 1).real(), c.two_photon_transfer_fidelity, 1e-12);
  c.two_photon_transfer_fidelity = 1.0;
  EXPECT_NEAR(two_photon_rotation(a, Angle::radians(kPi), c).qubit(1, 1).real(), 1.0, 1e-12);
}

TEST(Atom, BlowAwayIsSymmetric) {
  const NodeConfig c;
  const AtomQubit f2 = AtomQubit::in_slot(QubitPair::mapped, 1);
  const AtomQubit f1 = AtomQubit::in_slot(QubitPair::mapped, 0);
  EXPECT_NEAR(retention_probability(f2, c), 1 - c.blowaway_fidelity, 1e-15);
  EXPECT_NEAR(retention_probability(f1, c), c.blowaway_fidelity, 1e-15);
  Rng rng(8);
  const int n = 200000;
  int kept = 0;
  for (int i = 0; i < n; ++i) kept += blow_away(f2, c, rng);
  expect_binomial(kept, n, 1 - c.blowaway_fidelity);
}

TEST(Atom, SurvivalFollowsTrapLifetime) {
  const NodeConfig c;
  Rng rng(9);
  const int n = 100000;
  int alive = 0;
  for (int i = 0; i < n; ++i) alive += atom_survival(0.09, c, rng);
  expect_binomial(alive, n, std::exp(-0.09 / c.trap_lifetime_s));
  EXPECT_THROW(atom_survival(-1.0, c, rng), InvalidArgument);
}

TEST(Readout, CountsMatchPoissonMeans) {
  NodeConfig c;
  c.readout_atom_loss = false;
  Rng rng(10);
  const int n = 20000;
  double sp = 0, sa = 0;
  for (int i = 0; i < n; ++i) {
    sp += readout_counts(true, c, rng).total();
    sa += readout_counts(false, c, rng).total();
  }
  EXPECT_NEAR(sp / n, 2 * c.mu_atom_per_spcm, 4 * std::sqrt(200.0 / n));
  EXPECT_NEAR(sa / n, 2 * c.mu_bg_per_spcm, 4 * std::sqrt(80.0 / n));
}

TEST(Readout, ModelErrorRatesMatchSimulation) {
  const NodeConfig c;
  const ReadoutModel m = readout_model(c);
  Rng rng(11);
  const int n = 200000;
  int miss = 0, fals = 0;
  for (int i = 0; i < n; ++i) {
    miss += !m.classify(readout_counts(true, c, rng));
    fals += m.classify(readout_counts(false, c, rng));
  }
  expect_binomial(miss, n, m.p_miss_present);
  EXPECT_LE(fals, 3);
  EXPECT_LT(m.p_false_present, 1e-5);
  // Loss during the exposure is what limits the loaded-trap fidelity.
  EXPECT_GT(m.p_miss_present, 1e-3);
  EXPECT_NEAR(m.fidelity_present(), 0.996, 0.002);
  NodeConfig no_loss = c;
  no_loss.readout_atom_loss = false;
  EXPECT_LT(readout_model(no_loss).p_miss_present, 1e-5);
}

}  // namespace
}  // namespace qnode::physics

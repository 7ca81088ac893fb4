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
#include "shot_model.hpp"

#include <cmath>
#include <numbers>

#include "qnode/error.hpp"
#include "qnode/quantum/joint_state.hpp"

namespace qnode::sequence::detail {

using physics::AtomQubit;
using physics::NodeConfig;
using physics::QubitPair;

namespace {

constexpr std::int64_t kMaxCyclesPerShot = 100'000'000;

AtomQubit mixed_qubit() {
  AtomQubit a;
  a.qubit = quantum::Mat2::Identity() * 0.5;
  return a;
}

AtomQubit pre_map_state(const quantum::Mat2& rho) {
  AtomQubit a;
  a.qubit = rho;
  return a;
}

int outcome_index(bool up, int nu) { return up ? nu : 2 + nu; }

}  // namespace

Trajectory sample_trajectory(const NodeConfig& c, Rng& rng) {
  Trajectory t;
  t.atoms_loaded = 1;
  const double p_loss = 1.0 / c.cycles_per_atom_mean;
  const physics::CycleOptions stop{true};
  while (true) {
    // Losing the atom drops the rest of its cycles; the next atom starts fresh.
    if (t.cycles > 0 && bernoulli(rng, p_loss)) ++t.atoms_loaded;
    const AtomQubit pumped = physics::optical_pump(rng, c);
    const physics::CycleOutcome cyc = physics::sample_excitation_cycle(pumped, c, rng, stop);
    ++t.cycles;
    t.gates += cyc.gates_opened;
    if (const auto trig = cyc.trigger()) {
      t.trigger_click = *trig;
      for (const auto& k : cyc.clicks())
        if (k.attempt == trig->attempt) t.gate_clicks.push_back(k);
      if (trig->origin == physics::ClickOrigin::photon) {
        t.trigger = Trigger::photon;
        t.multi_photon = cyc.multi_photon;
      } else {
        t.trigger = Trigger::dark;
        // An earlier sigma photon left the atom entangled with a lost photon.
        const bool emitted = cyc.emission_attempt > 0 && cyc.emission_attempt <= trig->attempt;
        t.dark_atom = emitted ? mixed_qubit() : pumped;
      }
      break;
    }
    if (t.cycles >= kMaxCyclesPerShot) throw Error("no click after " + std::to_string(t.cycles) + " cycles");
  }
  t.map_detuning_khz = physics::sample_map_detuning(c, rng);
  return t;
}

std::vector<Trajectory> sample_trajectories(const NodeConfig& c, std::uint64_t seed, std::int64_t n,
                                            unsigned threads) {
  std::vector<Trajectory> out(static_cast<std::size_t>(n));
  parallel_for(n, threads, [&](std::int64_t i) {
    Rng rng = make_stream(seed, StreamPurpose::shot, static_cast<std::uint64_t>(i));
    out[static_cast<std::size_t>(i)] = sample_trajectory(c, rng);
  });
  return out;
}

WaveplateAngles with_setting_errors(const WaveplateAngles& a, const NodeConfig& c) {
  return {a.qwp_deg + c.qwp_angle_error_deg, a.hwp_deg + c.hwp_angle_error_deg};
}

Measurement make_measurement(const NodeConfig& c, const quantum::Mat2& fiber,
                             const WaveplateAngles& actual, quantum::MeasurementBasis basis) {
  const quantum::PolarizationOp chain[] = {quantum::PolarizationOp::unitary(fiber),
                                           quantum::jones_qwp(Angle::degrees(actual.qwp_deg)),
                                           quantum::jones_hwp(Angle::degrees(actual.hwp_deg))};
  const auto pm = quantum::measure_photon(physics::entangled_emission(c), chain);
  Measurement m;
  m.basis = basis;
  m.p_photon = {pm.p_h, pm.p_v};
  m.atom_given = {pm.atom_given_h, pm.atom_given_v};
  m.readout = physics::readout_model(c);
  return m;
}

AtomQubit verify_pipeline(AtomQubit atom, const NodeConfig& c, quantum::MeasurementBasis basis,
                          double map_detuning_khz) {
  if (c.premap_dephasing) atom = physics::dephase(atom, physics::premap_window_us(c), c.t2_bare_us);
  atom = physics::microwave_pi_map_at(atom, c, map_detuning_khz);
  if (basis == quantum::MeasurementBasis::x)
    atom = physics::two_photon_rotation(atom, Angle::radians(std::numbers::pi / 2.0), c);
  return atom;
}

double p_report_up(const AtomQubit& atom, const NodeConfig& c, const physics::ReadoutModel& r) {
  const double retained = physics::retention_probability(atom, c);
  return retained * r.p_miss_present + (1.0 - retained) * (1.0 - r.p_false_present);
}

std::array<double, 4> expected_outcome(const Trajectory& t, const Measurement& m, const NodeConfig& c) {
  std::array<double, 4> out{};
  if (t.trigger == Trigger::none || t.multi_photon) return out;
  auto add = [&](const AtomQubit& atom, int nu, double weight) {
    if (weight <= 0.0) return;
    const double up = p_report_up(verify_pipeline(atom, c, m.basis, t.map_detuning_khz), c, m.readout);
    out[static_cast<std::size_t>(outcome_index(true, nu))] += weight * up;
    out[static_cast<std::size_t>(outcome_index(false, nu))] += weight * (1.0 - up);
  };
  if (t.trigger == Trigger::photon) {
    for (int nu = 0; nu < 2; ++nu) add(pre_map_state(m.atom_given[nu]), nu, m.p_photon[nu]);
  } else {
    add(t.dark_atom, t.trigger_click.channel - 1, 1.0);
  }
  return out;
}

std::array<double, 4> expected_sum(const std::vector<Trajectory>& trajectories, const Measurement& m,
                                   const NodeConfig& c, std::int64_t* valid) {
  std::array<double, 4> sum{};
  std::int64_t n = 0;
  for (const auto& t : trajectories) {
    const auto p = expected_outcome(t, m, c);
    if (p[0] + p[1] + p[2] + p[3] > 0.0) ++n;
    for (std::size_t k = 0; k < 4; ++k) sum[k] += p[k];
  }
  if (valid) *valid = n;
  return sum;
}

SampledShot sample_measurement(const Trajectory& t, const Measurement& m, const NodeConfig& c,
                               Rng& rng, std::int64_t shot_id, const WaveplateAngles& commanded) {
  SampledShot s;
  ShotRecord& r = s.summary;
  r.shot = shot_id;
  r.basis = m.basis;
  r.alpha_deg = commanded.qwp_deg;
  r.beta_deg = commanded.hwp_deg;
  r.multi_photon = t.multi_photon;
  r.cycles = t.cycles;
  r.trigger = t.trigger;

  int nu = 0;
  AtomQubit atom;
  if (t.trigger == Trigger::photon) {
    if (t.multi_photon) {
      nu = bernoulli(rng, 0.5) ? 1 : 0;
      atom = mixed_qubit();
    } else {
      nu = uniform01(rng) < m.p_photon[0] ? 0 : 1;
      atom = pre_map_state(m.atom_given[static_cast<std::size_t>(nu)]);
    }
  } else {
    nu = t.trigger_click.channel - 1;
    atom = t.dark_atom;
  }
  r.photon = nu == 0 ? PhotonOutcome::h : PhotonOutcome::v;

  for (const auto& k : t.gate_clicks) {
    ClickRecord cr;
    cr.shot = shot_id;
    cr.cycle = t.cycles - 1;
    cr.attempt = k.attempt;
    cr.channel = k.origin == physics::ClickOrigin::photon ? nu + 1 : k.channel;
    cr.time_ns = std::llround(k.time_ns);
    cr.origin = k.origin == physics::ClickOrigin::photon ? ClickOrigin::photon : ClickOrigin::dark;
    s.clicks.push_back(cr);
  }

  atom = verify_pipeline(atom, c, m.basis, t.map_detuning_khz);
  const bool retained = physics::blow_away(atom, c, rng);
  double elapsed_us = c.branch_delay_us + c.map_pulse_len_us;
  if (m.basis == quantum::MeasurementBasis::x) elapsed_us += c.pi_half_len_us;
  r.atom_survived = physics::atom_survival(elapsed_us * 1e-6, c, rng);
  r.counts = physics::readout_counts(retained && r.atom_survived, c, rng);
  r.atom_up = !m.readout.classify(r.counts);
  return s;
}

}  // namespace qnode::sequence::detail

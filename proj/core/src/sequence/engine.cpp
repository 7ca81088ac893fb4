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
#include "qnode/sequence/engine.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "qnode/error.hpp"
#include "qnode/io/config_file.hpp"
#include "qnode/physics/atom.hpp"
#include "qnode/physics/emission.hpp"
#include "qnode/sequence/scans.hpp"
#include "shot_model.hpp"

namespace qnode::sequence {

using physics::AtomQubit;
using physics::NodeConfig;

namespace {

void require_kind(const SequenceSpec& spec, ExperimentKind kind) {
  if (spec.kind != kind)
    throw InvalidArgument("spec is for '" + to_string(spec.kind) + "', expected '" + to_string(kind) + "'");
}

ClickRecord to_record(const physics::Click& k, std::int64_t shot, std::int64_t cycle) {
  ClickRecord r;
  r.shot = shot;
  r.cycle = cycle;
  r.attempt = k.attempt;
  r.channel = k.channel;
  r.time_ns = std::llround(k.time_ns);
  r.origin = k.origin == physics::ClickOrigin::photon ? ClickOrigin::photon : ClickOrigin::dark;
  return r;
}

LogHeader make_header(const SequenceSpec& spec, const NodeConfig& config) {
  LogHeader h;
  h.seed = spec.seed;
  h.config = config;
  h.config_hash = io::config_hash(config);
  h.spec = spec;
  h.spec.threads = 1;  // logs are identical for any thread count
  return h;
}

}  // namespace

quantum::PolarizationOp fiber_unitary(std::uint64_t seed) {
  Rng rng = make_stream(seed, StreamPurpose::fiber);
  return quantum::haar_random_unitary(rng);
}

quantum::Mat2 resolve_fiber(const SequenceSpec& spec) {
  if (spec.fiber) {
    if (!quantum::PolarizationOp::unitary(*spec.fiber).is_valid(1e-9))
      throw InvalidArgument("fiber override must be unitary");
    return *spec.fiber;
  }
  return fiber_unitary(spec.seed).matrix();
}

EventLog run_entanglement(const SequenceSpec& spec, const NodeConfig& config) {
  spec.validate();
  config.validate();
  require_kind(spec, ExperimentKind::entanglement);

  const quantum::Mat2 fiber = resolve_fiber(spec);
  const WaveplateAngles angles = spec.angles ? *spec.angles : optimize_angles(spec, config).best;
  const detail::Measurement m =
      detail::make_measurement(config, fiber, detail::with_setting_errors(angles, config), spec.basis);

  const std::int64_t n = spec.budget;
  std::vector<detail::SampledShot> shots(static_cast<std::size_t>(n));
  std::vector<detail::Trajectory> stats(static_cast<std::size_t>(n));
  detail::parallel_for(n, spec.threads, [&](std::int64_t i) {
    Rng rng = make_stream(spec.seed, StreamPurpose::shot, static_cast<std::uint64_t>(i));
    detail::Trajectory t = detail::sample_trajectory(config, rng);
    shots[static_cast<std::size_t>(i)] = detail::sample_measurement(t, m, config, rng, i, angles);
    t.gate_clicks.clear();
    stats[static_cast<std::size_t>(i)] = std::move(t);
  });

  EventLog log;
  log.header = make_header(spec, config);
  log.header.resolved_angles = angles;
  log.header.fiber = fiber;
  RunSummary sum;
  sum.shots = n;
  for (std::int64_t i = 0; i < n; ++i) {
    auto& s = shots[static_cast<std::size_t>(i)];
    const auto& t = stats[static_cast<std::size_t>(i)];
    sum.cycles += t.cycles;
    sum.gates += t.gates;
    sum.atoms_loaded += t.atoms_loaded;
    bool photon_cycle = false;
    for (auto& c : s.clicks) {
      if (c.origin == ClickOrigin::photon) {
        ++sum.photon_clicks;
        photon_cycle = true;
      } else {
        ++sum.dark_clicks;
      }
      log.records.emplace_back(c);
    }
    if (photon_cycle) ++sum.detected_cycles;
    log.records.emplace_back(std::move(s.summary));
  }
  log.records.emplace_back(sum);
  return log;
}

ExpectedTomogram expected_joint_probabilities(const SequenceSpec& spec, const NodeConfig& config,
                                              const WaveplateAngles& angles) {
  spec.validate();
  config.validate();
  const quantum::Mat2 fiber = resolve_fiber(spec);
  const detail::Measurement m =
      detail::make_measurement(config, fiber, detail::with_setting_errors(angles, config), spec.basis);
  const std::int64_t n = spec.budget;
  std::vector<std::array<double, 4>> per(static_cast<std::size_t>(n));
  detail::parallel_for(n, spec.threads, [&](std::int64_t i) {
    Rng rng = make_stream(spec.seed, StreamPurpose::shot, static_cast<std::uint64_t>(i));
    per[static_cast<std::size_t>(i)] =
        detail::expected_outcome(detail::sample_trajectory(config, rng), m, config);
  });
  ExpectedTomogram out;
  double total = 0.0;
  for (const auto& p : per) {
    const double w = p[0] + p[1] + p[2] + p[3];
    if (w > 0.0) ++out.valid_shots;
    total += w;
    for (std::size_t k = 0; k < 4; ++k) out.p[k] += p[k];
  }
  if (total <= 0.0) throw EstimatorError("no valid shots");
  for (double& v : out.p) v /= total;
  return out;
}

EventLog run_g2(const SequenceSpec& spec, const NodeConfig& config) {
  spec.validate();
  config.validate();
  require_kind(spec, ExperimentKind::g2);

  constexpr std::int64_t kBlock = 4096;
  const std::int64_t n = spec.budget;
  const std::int64_t blocks = (n + kBlock - 1) / kBlock;
  struct Block {
    std::vector<ClickRecord> clicks;
    RunSummary sum;
  };
  std::vector<Block> out(static_cast<std::size_t>(blocks));
  const double p_loss = 1.0 / config.cycles_per_atom_mean;
  const double p_dark = physics::dark_click_probability(config);
  const double p_poisson = -std::expm1(-spec.poisson_mean_per_gate / 2.0);

  detail::parallel_for(blocks, spec.threads, [&](std::int64_t b) {
    Rng rng = make_stream(spec.seed, StreamPurpose::g2_block, static_cast<std::uint64_t>(b));
    Block& blk = out[static_cast<std::size_t>(b)];
    const std::int64_t end = std::min(n, (b + 1) * kBlock);
    for (std::int64_t cycle = b * kBlock; cycle < end; ++cycle) {
      ++blk.sum.cycles;
      std::vector<physics::Click> clicks;
      if (spec.g2_source == G2Source::atom) {
        if (bernoulli(rng, p_loss)) ++blk.sum.atoms_loaded;
        const AtomQubit pumped = physics::optical_pump(rng, config);
        const auto cyc = physics::sample_excitation_cycle(pumped, config, rng);
        blk.sum.gates += cyc.gates_opened;
        clicks = cyc.clicks();
      } else {
        for (int attempt = 1; attempt <= config.attempts_per_cycle; ++attempt) {
          ++blk.sum.gates;
          for (int ch = 1; ch <= 2; ++ch) {
            if (bernoulli(rng, p_poisson))
              clicks.push_back({attempt, ch, uniform01(rng) * config.gate_window_ns,
                                physics::ClickOrigin::photon});
            if (bernoulli(rng, p_dark))
              clicks.push_back({attempt, ch, uniform01(rng) * config.gate_window_ns,
                                physics::ClickOrigin::dark});
          }
        }
      }
      bool photon_cycle = false;
      for (const auto& k : clicks) {
        if (k.origin == physics::ClickOrigin::photon) {
          ++blk.sum.photon_clicks;
          photon_cycle = true;
        } else {
          ++blk.sum.dark_clicks;
        }
        blk.clicks.push_back(to_record(k, 0, cycle));
      }
      if (photon_cycle) ++blk.sum.detected_cycles;
    }
  });

  EventLog log;
  log.header = make_header(spec, config);
  RunSummary sum;
  sum.atoms_loaded = 1;
  for (auto& blk : out) {
    for (auto& c : blk.clicks) log.records.emplace_back(c);
    sum.cycles += blk.sum.cycles;
    sum.gates += blk.sum.gates;
    sum.detected_cycles += blk.sum.detected_cycles;
    sum.atoms_loaded += blk.sum.atoms_loaded;
    sum.photon_clicks += blk.sum.photon_clicks;
    sum.dark_clicks += blk.sum.dark_clicks;
    blk.clicks = {};
  }
  log.records.emplace_back(sum);
  return log;
}

double rabi_frequency_khz(Transition t, const NodeConfig& c) {
  switch (t) {
    case Transition::clock: return c.clock_rabi_khz;
    case Transition::bare: return c.bare_rabi_khz;
    case Transition::magic: return c.two_photon_rabi_khz;
  }
  throw InvalidArgument("unknown transition");
}

double coherence_time_us(Transition t, const NodeConfig& c) {
  switch (t) {
    case Transition::clock: return c.t2_clock_us;
    case Transition::bare: return c.t2_bare_us;
    case Transition::magic: return c.t2_magic_us;
  }
  throw InvalidArgument("unknown transition");
}

std::vector<double> default_rabi_grid(Transition t, const NodeConfig& c, int points) {
  return linear_grid(0.0, 4.0e3 / rabi_frequency_khz(t, c), points);
}

std::vector<double> default_ramsey_grid(Transition t, const NodeConfig& c, int points) {
  return linear_grid(0.0, 2.5 * coherence_time_us(t, c), points);
}

double default_ramsey_detuning_khz(Transition t, const NodeConfig& c) {
  return 3.0e3 / coherence_time_us(t, c);
}

namespace {

physics::QubitPair pair_of(Transition t) {
  switch (t) {
    case Transition::clock: return physics::QubitPair::clock;
    case Transition::bare: return physics::QubitPair::bare;
    case Transition::magic: return physics::QubitPair::mapped;
  }
  throw InvalidArgument("unknown transition");
}

// Runs spec.budget shots per grid point; evolve(atom, t_us) holds the pulses.
template <class Evolve>
PopulationTable population_scan(const SequenceSpec& spec, const NodeConfig& config,
                                std::vector<double> grid, Evolve evolve) {
  PopulationTable table;
  table.transition = spec.transition;
  table.rows.resize(grid.size());
  const physics::ReadoutModel readout = physics::readout_model(config);
  const physics::QubitPair pair = pair_of(spec.transition);
  detail::parallel_for(static_cast<std::int64_t>(grid.size()), spec.threads, [&](std::int64_t i) {
    Rng rng = make_stream(spec.seed, StreamPurpose::scan_point, static_cast<std::uint64_t>(i));
    PopulationRow& row = table.rows[static_cast<std::size_t>(i)];
    row.t_us = grid[static_cast<std::size_t>(i)];
    for (std::int64_t s = 0; s < spec.budget; ++s) {
      AtomQubit a = physics::prepare_pair(physics::optical_pump(rng, config), pair);
      a = evolve(a, row.t_us);
      const bool retained = physics::blow_away(a, config, rng);
      const auto counts = physics::readout_counts(retained, config, rng);
      ++row.shots;
      if (!readout.classify(counts)) ++row.f2_detected;
    }
  });
  return table;
}

}  // namespace

PopulationTable run_rabi(const SequenceSpec& spec, const NodeConfig& config) {
  spec.validate();
  config.validate();
  require_kind(spec, ExperimentKind::rabi);
  const double f = rabi_frequency_khz(spec.transition, config);
  auto grid = spec.grid.empty() ? default_rabi_grid(spec.transition, config) : spec.grid;
  return population_scan(spec, config, std::move(grid), [f](const AtomQubit& a, double t_us) {
    return physics::rotate(a, Angle::radians(2.0 * std::numbers::pi * f * t_us * 1e-3), Angle());
  });
}

PopulationTable run_ramsey(const SequenceSpec& spec, const NodeConfig& config) {
  spec.validate();
  config.validate();
  require_kind(spec, ExperimentKind::ramsey);
  const double t2 = coherence_time_us(spec.transition, config);
  const double delta =
      spec.detuning_khz != 0.0 ? spec.detuning_khz : default_ramsey_detuning_khz(spec.transition, config);
  auto grid = spec.grid.empty() ? default_ramsey_grid(spec.transition, config) : spec.grid;
  const Angle half = Angle::radians(std::numbers::pi / 2.0);
  PopulationTable table =
      population_scan(spec, config, std::move(grid), [&](const AtomQubit& a0, double t_us) {
        AtomQubit a = physics::rotate(a0, half, Angle());
        const std::complex<double> phase =
            std::polar(1.0, 2.0 * std::numbers::pi * delta * t_us * 1e-3);
        a.qubit(0, 1) *= phase;
        a.qubit(1, 0) *= std::conj(phase);
        a = physics::dephase(a, t_us, t2);
        return physics::rotate(a, half, Angle());
      });
  table.detuning_khz = delta;
  return table;
}

std::vector<ReadoutShot> run_readout_histogram(const SequenceSpec& spec, const NodeConfig& config) {
  spec.validate();
  config.validate();
  require_kind(spec, ExperimentKind::readout_histogram);
  std::vector<ReadoutShot> out(static_cast<std::size_t>(spec.budget));
  detail::parallel_for(spec.budget, spec.threads, [&](std::int64_t i) {
    Rng rng = make_stream(spec.seed, StreamPurpose::readout, static_cast<std::uint64_t>(i));
    ReadoutShot& s = out[static_cast<std::size_t>(i)];
    s.atom_present = i % 2 == 0;
    s.counts = physics::readout_counts(s.atom_present, config, rng);
  });
  return out;
}

}  // namespace qnode::sequence

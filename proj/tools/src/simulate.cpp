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
#include <memory>
#include <ostream>

#include "commands.hpp"
#include "qnode/error.hpp"
#include "qnode/estimators/fits.hpp"
#include "qnode/estimators/readout.hpp"
#include "qnode/estimators/tomography.hpp"
#include "qnode/io/log_io.hpp"
#include "qnode/io/table_io.hpp"
#include "qnode/sequence/engine.hpp"
#include "qnode/sequence/scans.hpp"

namespace qnode::cli {
namespace {

using namespace qnode::sequence;

SequenceSpec base_spec(ExperimentKind kind, const io::ConfigFile& cfg) {
  SequenceSpec spec;
  spec.kind = kind;
  spec.seed = cfg.sequence.seed;
  spec.optimizer_shots = cfg.sequence.optimizer_shots;
  spec.threads = cfg.sequence.threads;
  return spec;
}

// Arrival times of photon clicks; integer nanosecond stamps fall on bin centres.
void write_click_histogram(const std::string& path, const EventLog& log, const io::ConfigFile& cfg) {
  const double width = cfg.analysis.decay_bin_ns;
  const int bins = static_cast<int>(std::ceil((cfg.node.gate_window_ns + 0.5) / width));
  std::vector<double> times;
  for (const auto& c : log.clicks())
    if (c.origin == ClickOrigin::photon) times.push_back(static_cast<double>(c.time_ns));
  const auto h = estimators::make_histogram(times, -0.5, width, bins);
  io::Table t;
  t.comments.push_back("photon click arrival times after gate opening");
  t.columns = {"t_ns", "counts"};
  for (std::size_t i = 0; i < h.counts.size(); ++i) t.add_row({h.center(i), h.counts[i]});
  io::write_table_file(path, t);
}

Rows summary_rows(const RunSummary& s) {
  return {{"cycles", std::to_string(s.cycles)},
          {"gates", std::to_string(s.gates)},
          {"detected cycles", std::to_string(s.detected_cycles)},
          {"per-cycle detection", s.cycles > 0 ? fmt(double(s.detected_cycles) / double(s.cycles), 5) : "n/a"},
          {"photon clicks", std::to_string(s.photon_clicks)},
          {"dark clicks", std::to_string(s.dark_clicks)},
          {"atoms loaded", std::to_string(s.atoms_loaded)}};
}

void fill_summary(Summary& j, const RunSummary& s) {
  j["cycles"] = s.cycles;
  j["gates"] = s.gates;
  j["detected_cycles"] = s.detected_cycles;
  j["per_cycle_detection"] = s.cycles > 0 ? double(s.detected_cycles) / double(s.cycles) : 0.0;
  j["photon_clicks"] = s.photon_clicks;
  j["dark_clicks"] = s.dark_clicks;
  j["atoms_loaded"] = s.atoms_loaded;
}

struct EntanglementOpts {
  std::optional<std::int64_t> shots;
  std::string basis = "z";
  std::optional<double> qwp;
  std::optional<double> hwp;
  bool identity_fiber = false;
  std::string out;
  std::string histogram;
};

int simulate_entanglement(Streams& s, const Common& common, const EntanglementOpts& o) {
  const io::ConfigFile cfg = effective_config(common);
  SequenceSpec spec = base_spec(ExperimentKind::entanglement, cfg);
  spec.basis = basis_from(o.basis);
  spec.budget = o.shots.value_or(cfg.sequence.shots);
  if (o.qwp.has_value() != o.hwp.has_value()) throw InvalidArgument("give both --qwp and --hwp, or neither");
  if (o.qwp) spec.angles = WaveplateAngles{*o.qwp, *o.hwp};
  if (o.identity_fiber) spec.fiber = quantum::Mat2::Identity();

  const EventLog log = run_entanglement(spec, cfg.node);
  io::write_log_file(o.out, log);
  if (!o.histogram.empty()) write_click_histogram(o.histogram, log, cfg);

  const RunSummary sum = *log.summary();
  const auto counts = estimators::joint_counts(log, spec.basis);
  const auto angles = *log.header.resolved_angles;
  Rows rows{{"basis", o.basis}, {"shots", std::to_string(sum.shots)}};
  for (auto& r : summary_rows(sum)) rows.push_back(r);
  rows.emplace_back("valid shots", std::to_string(counts.total()));
  rows.emplace_back("qwp (deg)", fmt(angles.qwp_deg, 2));
  rows.emplace_back("hwp (deg)", fmt(angles.hwp_deg, 2));
  print_rows(s.out, rows);

  Summary j;
  j["command"] = "simulate entanglement";
  j["basis"] = o.basis;
  j["seed"] = spec.seed;
  j["shots"] = sum.shots;
  fill_summary(j, sum);
  j["valid_shots"] = counts.total();
  j["qwp_deg"] = angles.qwp_deg;
  j["hwp_deg"] = angles.hwp_deg;
  j["out"] = o.out;
  print_summary(s.out, j);
  return ok;
}

struct G2Opts {
  std::optional<std::int64_t> cycles;
  std::string source = "atom";
  double mean = 0.2;
  std::string out;
  std::string histogram;
};

int simulate_g2(Streams& s, const Common& common, const G2Opts& o) {
  const io::ConfigFile cfg = effective_config(common);
  SequenceSpec spec = base_spec(ExperimentKind::g2, cfg);
  spec.budget = o.cycles.value_or(cfg.sequence.g2_cycles);
  spec.g2_source = g2_source_from(o.source);
  spec.poisson_mean_per_gate = o.mean;

  const EventLog log = run_g2(spec, cfg.node);
  io::write_log_file(o.out, log);
  if (!o.histogram.empty()) write_click_histogram(o.histogram, log, cfg);

  const RunSummary sum = *log.summary();
  Rows rows{{"source", o.source}};
  for (auto& r : summary_rows(sum)) rows.push_back(r);
  print_rows(s.out, rows);
  Summary j;
  j["command"] = "simulate g2";
  j["source"] = o.source;
  j["seed"] = spec.seed;
  fill_summary(j, sum);
  j["out"] = o.out;
  print_summary(s.out, j);
  return ok;
}

struct ScanOpts {
  std::optional<std::int64_t> shots;  // per point
  std::optional<std::string> transition;
  int points = 80;
  std::optional<double> t_max_us;
  double detuning_khz = 0.0;
  std::string out;
};

int simulate_population(Streams& s, const Common& common, const ScanOpts& o, ExperimentKind kind) {
  const io::ConfigFile cfg = effective_config(common);
  SequenceSpec spec = base_spec(kind, cfg);
  spec.budget = o.shots.value_or(cfg.sequence.shots_per_point);
  spec.transition = o.transition ? transition_from(*o.transition) : cfg.sequence.transition;
  spec.detuning_khz = o.detuning_khz;
  if (o.points < 2) throw InvalidArgument("--points must be at least 2");
  const bool rabi = kind == ExperimentKind::rabi;
  if (o.t_max_us) {
    if (!(*o.t_max_us > 0.0)) throw InvalidArgument("--t-max must be positive");
    spec.grid = linear_grid(0.0, *o.t_max_us, o.points);
  } else {
    spec.grid = rabi ? default_rabi_grid(spec.transition, cfg.node, o.points)
                     : default_ramsey_grid(spec.transition, cfg.node, o.points);
  }
  const PopulationTable table = rabi ? run_rabi(spec, cfg.node) : run_ramsey(spec, cfg.node);

  io::Table t;
  t.comments.push_back(std::string(rabi ? "rabi" : "ramsey") + " scan, transition " + to_string(spec.transition));
  if (!rabi) t.comments.push_back("detuning_khz " + fmt(table.detuning_khz, 6));
  t.columns = {"t_us", "shots", "f2_detected", "population"};
  for (const auto& r : table.rows)
    t.add_row({r.t_us, double(r.shots), double(r.f2_detected), r.population()});
  io::write_table_file(o.out, t);

  Rows rows{{"transition", to_string(spec.transition)},
            {"points", std::to_string(table.rows.size())},
            {"shots per point", std::to_string(spec.budget)},
            {"t max (us)", fmt(spec.grid.back(), 3)}};
  if (!rabi) rows.emplace_back("detuning (kHz)", fmt(table.detuning_khz, 4));
  print_rows(s.out, rows);
  Summary j;
  j["command"] = rabi ? "simulate rabi" : "simulate ramsey";
  j["transition"] = to_string(spec.transition);
  j["seed"] = spec.seed;
  j["points"] = table.rows.size();
  j["shots_per_point"] = spec.budget;
  if (!rabi) j["detuning_khz"] = table.detuning_khz;
  j["out"] = o.out;
  print_summary(s.out, j);
  return ok;
}

struct ReadoutOpts {
  std::optional<std::int64_t> shots;
  std::string out;
};

int simulate_readout(Streams& s, const Common& common, const ReadoutOpts& o) {
  const io::ConfigFile cfg = effective_config(common);
  SequenceSpec spec = base_spec(ExperimentKind::readout_histogram, cfg);
  spec.budget = o.shots.value_or(cfg.sequence.readout_shots);
  const auto shots = run_readout_histogram(spec, cfg.node);

  io::Table t;
  t.comments.push_back("fluorescence counts; present = 1 for a loaded trap");
  t.columns = {"present", "spcm1", "spcm2", "total"};
  std::vector<int> present, absent;
  for (const auto& r : shots) {
    t.add_row({r.atom_present ? 1.0 : 0.0, double(r.counts.spcm1), double(r.counts.spcm2),
               double(r.counts.total())});
    (r.atom_present ? present : absent).push_back(r.counts.total());
  }
  io::write_table_file(o.out, t);

  const auto th = estimators::readout_threshold(2.0 * cfg.node.mu_atom_per_spcm, 2.0 * cfg.node.mu_bg_per_spcm);
  const auto m = estimators::measure_readout_fidelity(present, absent, th.threshold);
  print_rows(s.out, {{"shots", std::to_string(shots.size())},
                     {"threshold", std::to_string(th.threshold)},
                     {"p(miss)", fmt(m.p_miss, 5)},
                     {"p(false)", fmt(m.p_false, 5)},
                     {"fidelity (loaded traps)", fmt(m.fidelity.value, 5) + " +- " + fmt(m.fidelity.uncertainty, 5)},
                     {"balanced fidelity", fmt(m.balanced.value, 5) + " +- " + fmt(m.balanced.uncertainty, 5)}});
  Summary j;
  j["command"] = "simulate readout";
  j["seed"] = spec.seed;
  j["shots"] = shots.size();
  j["threshold"] = th.threshold;
  j["p_miss"] = m.p_miss;
  j["p_false"] = m.p_false;
  j["readout_fidelity"] = m.fidelity.value;
  j["readout_fidelity_sigma"] = m.fidelity.uncertainty;
  j["balanced_fidelity"] = m.balanced.value;
  j["out"] = o.out;
  print_summary(s.out, j);
  return ok;
}

struct WaveplateScanOpts {
  std::optional<std::int64_t> shots;
  std::string basis = "z";
  std::optional<double> qwp;
  double step_deg = 5.0;
  std::string sampling = "sampled";
  bool identity_fiber = false;
  std::string out;
};

int simulate_scan(Streams& s, const Common& common, const WaveplateScanOpts& o) {
  const io::ConfigFile cfg = effective_config(common);
  SequenceSpec spec = base_spec(ExperimentKind::entanglement, cfg);
  spec.basis = basis_from(o.basis);
  spec.budget = o.shots.value_or(cfg.sequence.optimizer_shots);
  spec.sampling = sampling_from(o.sampling);
  if (o.identity_fiber) spec.fiber = quantum::Mat2::Identity();
  if (!(o.step_deg > 0.0 && o.step_deg <= 15.0)) throw InvalidArgument("--step must lie in (0, 15] deg");
  const int n = static_cast<int>(std::floor(90.0 / o.step_deg + 1e-9));
  spec.grid = linear_grid(0.0, o.step_deg * (n - 1), n);
  const double alpha = o.qwp ? *o.qwp : optimize_angles(spec, cfg.node).best.qwp_deg;
  const ScanTable table = scan_waveplates(spec, cfg.node, alpha);

  io::Table t;
  t.comments.push_back("waveplate scan, basis " + o.basis + ", qwp_deg " + fmt(alpha, 3));
  t.columns = {"beta_deg", "up_h", "up_v", "down_h", "down_v", "parity", "shots"};
  for (const auto& r : table.rows)
    t.add_row({r.beta_deg, r.p[0], r.p[1], r.p[2], r.p[3], r.even_parity(), double(r.shots)});
  io::write_table_file(o.out, t);
  print_rows(s.out, {{"basis", o.basis},
                     {"qwp (deg)", fmt(alpha, 2)},
                     {"points", std::to_string(table.rows.size())},
                     {"sampling", o.sampling}});
  Summary j;
  j["command"] = "simulate scan";
  j["seed"] = spec.seed;
  j["basis"] = o.basis;
  j["qwp_deg"] = alpha;
  j["points"] = table.rows.size();
  j["out"] = o.out;
  print_summary(s.out, j);
  return ok;
}

const std::map<std::string, std::string> kBases{{"z", "z"}, {"x", "x"}};

}  // namespace

void add_simulate(CLI::App& app, const Common& common, Action& action) {
  auto* sim = app.add_subcommand("simulate", "Run a simulated experiment");
  sim->require_subcommand(1);

  {
    auto o = std::make_shared<EntanglementOpts>();
    auto* c = sim->add_subcommand("entanglement", "Atom-photon entanglement shots; writes an event log");
    c->add_option("--shots", o->shots, "Shots (default from config)");
    c->add_option("--basis", o->basis, "Measurement basis")->transform(CLI::IsMember(kBases));
    c->add_option("--qwp", o->qwp, "Quarter-wave plate angle, deg (default: optimized)");
    c->add_option("--hwp", o->hwp, "Half-wave plate angle, deg (default: optimized)");
    c->add_flag("--identity-fiber", o->identity_fiber, "Fiber leaves polarization unchanged");
    c->add_option("--out", o->out, "Event log path")->required();
    c->add_option("--histogram", o->histogram, "Also write a photon arrival-time histogram table");
    c->callback([&common, &action, o] { action = [&common, o](Streams& s) { return simulate_entanglement(s, common, *o); }; });
  }
  {
    auto o = std::make_shared<G2Opts>();
    auto* c = sim->add_subcommand("g2", "Excitation cycles with all gates open; writes an event log");
    c->add_option("--shots,--cycles", o->cycles, "Excitation cycles (default from config)");
    c->add_option("--source", o->source, "atom or poisson")
        ->transform(CLI::IsMember(std::map<std::string, std::string>{{"atom", "atom"}, {"poisson", "poisson"}}));
    c->add_option("--mean", o->mean, "Poisson source: detected photons per gate");
    c->add_option("--out", o->out, "Event log path")->required();
    c->add_option("--histogram", o->histogram, "Also write a photon arrival-time histogram table");
    c->callback([&common, &action, o] { action = [&common, o](Streams& s) { return simulate_g2(s, common, *o); }; });
  }
  for (const auto kind : {ExperimentKind::rabi, ExperimentKind::ramsey}) {
    auto o = std::make_shared<ScanOpts>();
    const bool rabi = kind == ExperimentKind::rabi;
    auto* c = sim->add_subcommand(rabi ? "rabi" : "ramsey",
                                  rabi ? "Rabi oscillation scan; writes a table" : "Ramsey scan; writes a table");
    c->add_option("--shots", o->shots, "Shots per point (default from config)");
    c->add_option("--transition", o->transition, "clock, bare or magic");
    c->add_option("--points", o->points, "Grid points");
    c->add_option("--t-max", o->t_max_us, "Longest pulse or delay, us");
    if (!rabi) c->add_option("--detuning", o->detuning_khz, "Ramsey detuning, kHz (0: automatic)");
    c->add_option("--out", o->out, "Table path")->required();
    c->callback([&common, &action, o, kind] {
      action = [&common, o, kind](Streams& s) { return simulate_population(s, common, *o, kind); };
    });
  }
  {
    auto o = std::make_shared<ReadoutOpts>();
    auto* c = sim->add_subcommand("readout", "Fluorescence counts of loaded and empty traps; writes a table");
    c->add_option("--shots", o->shots, "Exposures, alternating loaded and empty (default from config)");
    c->add_option("--out", o->out, "Table path")->required();
    c->callback([&common, &action, o] { action = [&common, o](Streams& s) { return simulate_readout(s, common, *o); }; });
  }
  {
    auto o = std::make_shared<WaveplateScanOpts>();
    auto* c = sim->add_subcommand("scan", "Half-wave plate scan of the joint populations; writes a table");
    c->add_option("--shots", o->shots, "Shots per point (default: optimizer_shots)");
    c->add_option("--basis", o->basis, "Measurement basis")->transform(CLI::IsMember(kBases));
    c->add_option("--qwp", o->qwp, "Quarter-wave plate angle, deg (default: optimized)");
    c->add_option("--step", o->step_deg, "HWP step over [0, 90) deg");
    c->add_option("--sampling", o->sampling, "sampled or expected");
    c->add_flag("--identity-fiber", o->identity_fiber, "Fiber leaves polarization unchanged");
    c->add_option("--out", o->out, "Table path")->required();
    c->callback([&common, &action, o] { action = [&common, o](Streams& s) { return simulate_scan(s, common, *o); }; });
  }
}

}  // namespace qnode::cli

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
#include "qnode/io/report.hpp"

#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qnode/error.hpp"
#include "qnode/estimators/budget.hpp"
#include "qnode/estimators/g2.hpp"
#include "qnode/estimators/readout.hpp"
#include "qnode/estimators/tomography.hpp"
#include "qnode/sequence/engine.hpp"

namespace qnode::io {
namespace {

std::string fixed(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  return buf;
}

}  // namespace

void Report::add(const std::string& key, double value, int precision, const std::string& note) {
  entries.push_back({key, fixed(value, precision), note, true});
}

void Report::add_count(const std::string& key, long long value, const std::string& note) {
  entries.push_back({key, std::to_string(value), note, true});
}

void Report::add_text(const std::string& key, const std::string& value, const std::string& note) {
  entries.push_back({key, value, note, false});
}

const ReportEntry* Report::find(const std::string& key) const {
  for (const auto& e : entries)
    if (e.key == key) return &e;
  return nullptr;
}

std::string Report::to_text() const {
  std::ostringstream out;
  out << "# qnode report v1\n";
  for (const auto& e : entries) {
    out << e.key << " = " << e.value;
    if (!e.note.empty()) out << "  # " << e.note;
    out << '\n';
  }
  return out.str();
}

std::string Report::to_json_line() const {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& e : entries) {
    if (e.numeric)
      j[e.key] = nlohmann::ordered_json::parse(e.value);
    else
      j[e.key] = e.value;
  }
  return j.dump();
}

Report run_standard_battery(const ConfigFile& config) {
  using namespace qnode::sequence;
  const auto& node = config.node;
  const auto& seq = config.sequence;
  Report r;
  r.add_count("seed", static_cast<long long>(seq.seed));
  r.add_text("config_hash", config_hash(node));

  SequenceSpec z;
  z.kind = ExperimentKind::entanglement;
  z.basis = quantum::MeasurementBasis::z;
  z.budget = seq.shots;
  z.seed = seq.seed;
  z.optimizer_shots = seq.optimizer_shots;
  z.threads = seq.threads;
  const EventLog zlog = run_entanglement(z, node);
  SequenceSpec x = z;
  x.basis = quantum::MeasurementBasis::x;
  const EventLog xlog = run_entanglement(x, node);
  r.add("z_qwp_deg", zlog.header.resolved_angles->qwp_deg, 1);
  r.add("z_hwp_deg", zlog.header.resolved_angles->hwp_deg, 1);
  r.add("x_qwp_deg", xlog.header.resolved_angles->qwp_deg, 1);
  r.add("x_hwp_deg", xlog.header.resolved_angles->hwp_deg, 1);

  const auto sum = *zlog.summary();
  r.add("cycle_detection_probability", double(sum.detected_cycles) / double(sum.cycles), 5,
        "model " + fixed(physics::expected_cycle_detection_probability(node), 5) + ", measured 0.0366 +- 0.001");

  const auto tz = estimators::joint_probabilities(zlog, quantum::MeasurementBasis::z);
  const auto tx = estimators::joint_probabilities(xlog, quantum::MeasurementBasis::x);
  const auto f = quantum::fidelity_lower_bound(tz, tx);
  r.add("fidelity_lower_bound", f.value, 4, "measured 0.93 +- 0.05");
  r.add("fidelity_lower_bound_sigma", f.uncertainty, 4);
  const auto fc = estimators::correct_for_readout(f, config.analysis.readout_correction);
  r.add("fidelity_corrected", fc.value, 4, "atom measurement fidelity " + fixed(config.analysis.readout_correction, 3) + ", measured 0.98");
  r.add("fidelity_corrected_sigma", fc.uncertainty, 4);

  SequenceSpec g;
  g.kind = ExperimentKind::g2;
  g.budget = seq.g2_cycles;
  g.seed = seq.seed;
  g.threads = seq.threads;
  const EventLog glog = run_g2(g, node);
  try {
    const auto g2 = estimators::estimate_g2(glog, config.analysis.g2_window_ns);
    r.add("g2", g2.value, 4, "measured 0.006 +- 0.006");
    r.add("g2_sigma", g2.uncertainty, 4);
  } catch (const EstimatorError& e) {
    r.add_text("g2", "undefined", e.what());
  }

  SequenceSpec ro;
  ro.kind = ExperimentKind::readout_histogram;
  ro.budget = seq.readout_shots;
  ro.seed = seq.seed;
  ro.threads = seq.threads;
  std::vector<int> present;
  std::vector<int> absent;
  for (const auto& s : run_readout_histogram(ro, node))
    (s.atom_present ? present : absent).push_back(s.counts.total());
  const auto th = estimators::readout_threshold(2.0 * node.mu_atom_per_spcm, 2.0 * node.mu_bg_per_spcm);
  r.add_count("readout_threshold", th.threshold);
  const auto m = estimators::measure_readout_fidelity(present, absent, th.threshold);
  r.add("readout_fidelity", m.fidelity.value, 4, "measured 0.996 +- 0.002");
  r.add("readout_fidelity_sigma", m.fidelity.uncertainty, 4);

  const auto reference = estimators::compose_error_budget(estimators::reference_budget());
  r.add("reference_budget_infidelity", reference.value, 4, "published error table");
  r.add("reference_budget_infidelity_sigma", reference.uncertainty, 4);
  const auto budget = estimators::budget_from_config(node);
  const auto model = estimators::compose_error_budget(budget);
  r.add("budget_infidelity", model.value, 4, "linear sum of the configured error sources");
  return r;
}

}  // namespace qnode::io

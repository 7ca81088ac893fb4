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
#include <fstream>
#include <memory>
#include <ostream>

#include "commands.hpp"
#include "qnode/error.hpp"
#include "qnode/estimators/budget.hpp"
#include "qnode/estimators/g2.hpp"
#include "qnode/estimators/tomography.hpp"
#include "qnode/io/log_io.hpp"
#include "qnode/io/table_io.hpp"

namespace qnode::cli {
namespace {

using quantum::MeasurementBasis;

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  return in;
}

struct G2Opts {
  std::string log;
  double window_ns = 0.0;  // 0: from config
};

int analyze_g2(Streams& s, const Common& common, const G2Opts& o) {
  const double window = o.window_ns > 0.0 ? o.window_ns : effective_config(common).analysis.g2_window_ns;
  std::ifstream in = open_input(o.log);
  io::LogReader reader(in);
  if (window > reader.header().config.gate_window_ns)
    throw InvalidArgument("coincidence window exceeds the detection gate");
  estimators::G2Accumulator acc(window);
  sequence::Record r;
  while (reader.next(r)) acc.add(r);
  const auto c = acc.counts();
  print_rows(s.out, {{"gates", std::to_string(c.gates)},
                     {"singles 1", std::to_string(c.singles1)},
                     {"singles 2", std::to_string(c.singles2)},
                     {"coincidences", std::to_string(c.coincidences)}});
  const auto g2 = estimators::g2_from_counts(c);
  print_rows(s.out, {{"g2(0)", fmt(g2.value, 5) + " +- " + fmt(g2.uncertainty, 5)}});
  Summary j;
  j["command"] = "analyze g2";
  j["window_ns"] = window;
  j["gates"] = c.gates;
  j["singles1"] = c.singles1;
  j["singles2"] = c.singles2;
  j["coincidences"] = c.coincidences;
  j["g2"] = g2.value;
  j["g2_sigma"] = g2.uncertainty;
  print_summary(s.out, j);
  return ok;
}

estimators::JointCounts stream_counts(const std::string& path, MeasurementBasis basis) {
  std::ifstream in = open_input(path);
  io::LogReader reader(in);
  if (reader.header().spec.basis != basis)
    throw InvalidArgument(path + " was not measured in the " + sequence::to_string(basis) + " basis");
  estimators::JointCounts c;
  sequence::Record r;
  while (reader.next(r))
    if (const auto* shot = std::get_if<sequence::ShotRecord>(&r)) estimators::accumulate(c, *shot, basis);
  return c;
}

std::string tomogram_text(const quantum::DiagonalTomogram& t) {
  return fmt(t.p[0], 4) + " " + fmt(t.p[1], 4) + " " + fmt(t.p[2], 4) + " " + fmt(t.p[3], 4);
}

struct FidelityOpts {
  std::string z_log;
  std::string x_log;
  std::optional<double> correct_readout;
};

int analyze_fidelity(Streams& s, const FidelityOpts& o) {
  const auto cz = stream_counts(o.z_log, MeasurementBasis::z);
  const auto cx = stream_counts(o.x_log, MeasurementBasis::x);
  const auto tz = estimators::tomogram_from_counts(cz);
  const auto tx = estimators::tomogram_from_counts(cx);
  const auto f = quantum::fidelity_lower_bound(tz, tx);
  Rows rows{{"z valid / excluded", std::to_string(cz.total()) + " / " + std::to_string(cz.excluded)},
            {"x valid / excluded", std::to_string(cx.total()) + " / " + std::to_string(cx.excluded)},
            {"z (up'H up'V downH downV)", tomogram_text(tz)},
            {"x (up'H up'V downH downV)", tomogram_text(tx)},
            {"F_low", fmt(f.value, 4) + " +- " + fmt(f.uncertainty, 4)}};
  Summary j;
  j["command"] = "analyze fidelity";
  j["z_valid_shots"] = cz.total();
  j["x_valid_shots"] = cx.total();
  j["fidelity_lower_bound"] = f.value;
  j["fidelity_lower_bound_sigma"] = f.uncertainty;
  if (o.correct_readout) {
    const auto fc = estimators::correct_for_readout(f, *o.correct_readout);
    rows.emplace_back("F_low corrected", fmt(fc.value, 4) + " +- " + fmt(fc.uncertainty, 4));
    j["readout_fidelity"] = *o.correct_readout;
    j["fidelity_corrected"] = fc.value;
    j["fidelity_corrected_sigma"] = fc.uncertainty;
  }
  print_rows(s.out, rows);
  print_summary(s.out, j);
  return ok;
}

struct BudgetOpts {
  std::string table;
  bool from_config = false;
};

estimators::ErrorBudget budget_from_table(const std::string& path) {
  const io::Table t = io::read_table_file(path);
  if (!t.has("infidelity")) throw InvalidArgument("budget table needs an 'infidelity' column");
  const auto inf = t.column("infidelity");
  const auto unc = t.has("uncertainty") ? t.column("uncertainty") : std::vector<double>(inf.size(), 0.0);
  const auto ub = t.has("upper_bound") ? t.column("upper_bound") : std::vector<double>(inf.size(), 0.0);
  estimators::ErrorBudget b;
  for (std::size_t i = 0; i < inf.size(); ++i)
    b.entries.push_back({"row " + std::to_string(i + 1), inf[i], unc[i], ub[i] != 0.0});
  return b;
}

int analyze_budget(Streams& s, const Common& common, const BudgetOpts& o) {
  if (o.from_config && !o.table.empty()) throw InvalidArgument("give --table or --from-config, not both");
  const estimators::ErrorBudget b = !o.table.empty() ? budget_from_table(o.table)
                                    : o.from_config  ? estimators::budget_from_config(effective_config(common).node)
                                                     : estimators::reference_budget();
  const auto total = estimators::compose_error_budget(b);
  Rows rows;
  for (const auto& e : b.entries)
    rows.emplace_back(e.name, (e.upper_bound ? "< " : "") + fmt(e.infidelity, 4) +
                                  (e.uncertainty > 0.0 ? " +- " + fmt(e.uncertainty, 4) : ""));
  rows.emplace_back("total", fmt(total.value, 4) + " +- " + fmt(total.uncertainty, 4));
  rows.emplace_back("implied fidelity", fmt(1.0 - total.value, 4));
  print_rows(s.out, rows);
  Summary j;
  j["command"] = "analyze budget";
  j["source"] = !o.table.empty() ? "table" : o.from_config ? "config" : "reference";
  j["entries"] = b.entries.size();
  j["infidelity"] = total.value;
  j["infidelity_sigma"] = total.uncertainty;
  j["implied_fidelity"] = 1.0 - total.value;
  print_summary(s.out, j);
  return ok;
}

}  // namespace

void add_analyze(CLI::App& app, const Common& common, Action& action) {
  auto* an = app.add_subcommand("analyze", "Estimate quantities from logs or tables");
  an->require_subcommand(1);
  {
    auto o = std::make_shared<G2Opts>();
    auto* c = an->add_subcommand("g2", "Gate-based g2(0) from an event log (single pass)");
    c->add_option("log", o->log, "Event log")->required();
    c->add_option("--window", o->window_ns, "Coincidence window after gate opening, ns");
    c->callback([&common, &action, o] { action = [&common, o](Streams& s) { return analyze_g2(s, common, *o); }; });
  }
  {
    auto o = std::make_shared<FidelityOpts>();
    auto* c = an->add_subcommand("fidelity", "Fidelity lower bound from a z-basis and an x-basis log");
    c->add_option("z_log", o->z_log, "z-basis event log")->required();
    c->add_option("x_log", o->x_log, "x-basis event log")->required();
    c->add_option("--correct-readout", o->correct_readout, "Atom measurement fidelity to correct for");
    c->callback([&action, o] { action = [o](Streams& s) { return analyze_fidelity(s, *o); }; });
  }
  {
    auto o = std::make_shared<BudgetOpts>();
    auto* c = an->add_subcommand("budget", "Compose an error budget (default: reference table)");
    c->add_option("--table", o->table, "Table with columns infidelity, uncertainty, upper_bound");
    c->add_flag("--from-config", o->from_config, "Budget implied by the configured error knobs");
    c->callback([&common, &action, o] { action = [&common, o](Streams& s) { return analyze_budget(s, common, *o); }; });
  }
}

}  // namespace qnode::cli

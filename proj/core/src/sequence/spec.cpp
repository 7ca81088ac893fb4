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
#include "qnode/sequence/spec.hpp"

#include <cmath>

#include "qnode/error.hpp"

namespace qnode::sequence {

void SequenceSpec::validate() const {
  if (budget <= 0) throw InvalidArgument("budget must be positive");
  if (optimizer_shots <= 0) throw InvalidArgument("optimizer_shots must be positive");
  if (threads == 0) throw InvalidArgument("threads must be at least 1");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i])) throw InvalidArgument("grid values must be finite");
    if (i > 0 && !(grid[i] > grid[i - 1])) throw InvalidArgument("grid must be strictly increasing");
  }
  if (kind == ExperimentKind::g2 && g2_source == G2Source::poisson &&
      !(poisson_mean_per_gate > 0.0 && std::isfinite(poisson_mean_per_gate)))
    throw InvalidArgument("poisson_mean_per_gate must be positive");
  if ((kind == ExperimentKind::rabi || kind == ExperimentKind::ramsey) && !grid.empty() &&
      grid.front() < 0.0)
    throw InvalidArgument("durations must be non-negative");
  if (!std::isfinite(detuning_khz)) throw InvalidArgument("detuning must be finite");
}

std::string to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::entanglement: return "entanglement";
    case ExperimentKind::g2: return "g2";
    case ExperimentKind::rabi: return "rabi";
    case ExperimentKind::ramsey: return "ramsey";
    case ExperimentKind::readout_histogram: return "readout";
  }
  return "?";
}

std::string to_string(Transition t) {
  switch (t) {
    case Transition::clock: return "clock";
    case Transition::bare: return "bare";
    case Transition::magic: return "magic";
  }
  return "?";
}

std::string to_string(quantum::MeasurementBasis b) { return b == quantum::MeasurementBasis::z ? "z" : "x"; }

std::string to_string(G2Source s) { return s == G2Source::atom ? "atom" : "poisson"; }

std::string to_string(Sampling s) { return s == Sampling::sampled ? "sampled" : "expected"; }

ExperimentKind experiment_kind_from(const std::string& s) {
  for (auto k : {ExperimentKind::entanglement, ExperimentKind::g2, ExperimentKind::rabi,
                 ExperimentKind::ramsey, ExperimentKind::readout_histogram})
    if (to_string(k) == s) return k;
  throw InvalidArgument("unknown experiment kind '" + s + "'");
}

Transition transition_from(const std::string& s) {
  for (auto t : {Transition::clock, Transition::bare, Transition::magic})
    if (to_string(t) == s) return t;
  throw InvalidArgument("unknown transition '" + s + "'");
}

quantum::MeasurementBasis basis_from(const std::string& s) {
  if (s == "z") return quantum::MeasurementBasis::z;
  if (s == "x") return quantum::MeasurementBasis::x;
  throw InvalidArgument("unknown basis '" + s + "' (expected z or x)");
}

G2Source g2_source_from(const std::string& s) {
  if (s == "atom") return G2Source::atom;
  if (s == "poisson") return G2Source::poisson;
  throw InvalidArgument("unknown g2 source '" + s + "'");
}

Sampling sampling_from(const std::string& s) {
  if (s == "sampled") return Sampling::sampled;
  if (s == "expected") return Sampling::expected;
  throw InvalidArgument("unknown sampling mode '" + s + "'");
}

std::vector<double> linear_grid(double first, double last, int n) {
  if (n < 1) throw InvalidArgument("grid needs at least one point");
  if (n == 1) return {first};
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = first + (last - first) * i / (n - 1);
  return g;
}

}  // namespace qnode::sequence

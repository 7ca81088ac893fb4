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
#include "qnode/estimators/g2.hpp"

#include <cmath>
#include <tuple>

#include "qnode/error.hpp"

namespace qnode::estimators {

G2Accumulator::G2Accumulator(double window_ns) : window_ns_(window_ns) {
  if (!(window_ns > 0.0)) throw InvalidArgument("coincidence window must be positive");
}

void G2Accumulator::flush() {
  if (!open_) return;
  if (ch1_) ++counts_.singles1;
  if (ch2_) ++counts_.singles2;
  if (ch1_ && ch2_) ++counts_.coincidences;
  open_ = ch1_ = ch2_ = false;
}

void G2Accumulator::add(const sequence::ClickRecord& click) {
  if (static_cast<double>(click.time_ns) > window_ns_ || click.time_ns < 0) return;
  const auto key = std::tie(click.shot, click.cycle, click.attempt);
  if (!open_ || key != std::tie(shot_, cycle_, attempt_)) {
    if (open_ && key < std::tie(shot_, cycle_, attempt_))
      throw EstimatorError("click records are not in gate order");
    flush();
    open_ = true;
    shot_ = click.shot;
    cycle_ = click.cycle;
    attempt_ = click.attempt;
  }
  (click.channel == 1 ? ch1_ : ch2_) = true;
}

void G2Accumulator::add(const sequence::Record& record) {
  if (const auto* c = std::get_if<sequence::ClickRecord>(&record)) {
    add(*c);
  } else if (const auto* s = std::get_if<sequence::RunSummary>(&record)) {
    set_gates(s->gates);
  }
}

G2Counts G2Accumulator::counts() const {
  G2Accumulator copy = *this;
  copy.flush();
  return copy.counts_;
}

quantum::Estimate g2_from_counts(const G2Counts& c) {
  if (c.singles1 == 0 || c.singles2 == 0) throw EstimatorError("g2 undefined: a channel has no singles");
  if (c.gates <= 0) throw EstimatorError("g2 undefined: no gates recorded");
  const double n = static_cast<double>(c.gates);
  const double n1 = static_cast<double>(c.singles1);
  const double n2 = static_cast<double>(c.singles2);
  const double n12 = static_cast<double>(c.coincidences);
  const double scale = n / (n1 * n2);
  quantum::Estimate e;
  e.value = n12 * scale;
  e.uncertainty = n12 > 0 ? e.value * std::sqrt(1.0 / n12 + 1.0 / n1 + 1.0 / n2) : scale;
  return e;
}

quantum::Estimate estimate_g2(const sequence::EventLog& log, double window_ns) {
  if (window_ns > log.header.config.gate_window_ns)
    throw InvalidArgument("coincidence window exceeds the detection gate");
  G2Accumulator acc(window_ns);
  for (const auto& r : log.records) acc.add(r);
  return g2_from_counts(acc.counts());
}

}  // namespace qnode::estimators

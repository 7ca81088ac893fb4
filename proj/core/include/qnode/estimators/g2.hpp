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

#include <cstdint>

#include "qnode/quantum/fidelity.hpp"
#include "qnode/sequence/event_log.hpp"

namespace qnode::estimators {

struct G2Counts {
  std::int64_t gates = 0;
  std::int64_t singles1 = 0;
  std::int64_t singles2 = 0;
  std::int64_t coincidences = 0;
};

// Streaming gate-based g2: a gate is identified by (shot, cycle, attempt);
// records must arrive in non-decreasing gate order.
class G2Accumulator {
 public:
  explicit G2Accumulator(double window_ns = 200.0);

  void add(const sequence::ClickRecord& click);
  void add(const sequence::Record& record);
  // Gates that saw no click are only known from the run summary.
  void set_gates(std::int64_t gates) { counts_.gates = gates; }

  G2Counts counts() const;

 private:
  void flush();

  double window_ns_;
  G2Counts counts_;
  bool open_ = false;
  std::int64_t shot_ = -1;
  std::int64_t cycle_ = -1;
  int attempt_ = -1;
  bool ch1_ = false;
  bool ch2_ = false;
};

// g2 = N12 N / (N1 N2) with Poisson error propagation. With no coincidence the
// uncertainty is that of a single count. Throws EstimatorError on zero singles.
quantum::Estimate g2_from_counts(const G2Counts& counts);

quantum::Estimate estimate_g2(const sequence::EventLog& log, double window_ns = 200.0);

}  // namespace qnode::estimators

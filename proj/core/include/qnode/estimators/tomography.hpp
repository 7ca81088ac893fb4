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

struct JointCounts {
  std::array<std::int64_t, 4> n{};  // indexed by DiagonalTomogram::Entry
  std::int64_t excluded = 0;        // lost atoms and multi-photon shots
  std::int64_t total() const { return n[0] + n[1] + n[2] + n[3]; }
};

// Adds one shot if it was measured in basis; shots without a valid outcome
// count as excluded.
void accumulate(JointCounts& counts, const sequence::ShotRecord& shot, quantum::MeasurementBasis basis);
JointCounts joint_counts(const sequence::EventLog& log, quantum::MeasurementBasis basis);

// Frequencies with binomial uncertainties from smoothed estimates (k+1/2)/(n+1).
quantum::DiagonalTomogram tomogram_from_counts(const JointCounts& counts);

quantum::DiagonalTomogram joint_probabilities(const sequence::EventLog& log,
                                              quantum::MeasurementBasis basis);

// Populations seen through an atom readout that reports the wrong state with
// probability 1 - f_meas.
quantum::DiagonalTomogram forward_confusion(const quantum::DiagonalTomogram& t, double f_meas);

// Exact inverse of forward_confusion. Requires f_meas > 1/2.
quantum::DiagonalTomogram correct_for_readout(const quantum::DiagonalTomogram& t, double f_meas);

// Scalar form for a fidelity measured through that readout:
// 1/2 + (F_raw - 1/2) / (2 f_meas - 1).
quantum::Estimate correct_for_readout(const quantum::Estimate& f_raw, double f_meas);

}  // namespace qnode::estimators

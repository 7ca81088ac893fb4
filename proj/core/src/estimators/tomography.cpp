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
#include "qnode/estimators/tomography.hpp"

#include <cmath>

#include "qnode/error.hpp"

namespace qnode::estimators {

using quantum::DiagonalTomogram;

void accumulate(JointCounts& c, const sequence::ShotRecord& s, quantum::MeasurementBasis basis) {
  if (s.basis != basis) return;
  if (!s.atom_survived || s.multi_photon || !s.photon || !s.atom_up) {
    ++c.excluded;
    return;
  }
  const bool h = *s.photon == sequence::PhotonOutcome::h;
  const int idx = *s.atom_up ? (h ? DiagonalTomogram::up_h : DiagonalTomogram::up_v)
                             : (h ? DiagonalTomogram::down_h : DiagonalTomogram::down_v);
  ++c.n[static_cast<std::size_t>(idx)];
}

JointCounts joint_counts(const sequence::EventLog& log, quantum::MeasurementBasis basis) {
  JointCounts c;
  for (const auto& r : log.records)
    if (const auto* s = std::get_if<sequence::ShotRecord>(&r)) accumulate(c, *s, basis);
  return c;
}

DiagonalTomogram tomogram_from_counts(const JointCounts& c) {
  const auto n = c.total();
  if (n == 0) throw EstimatorError("no valid shots in the requested basis");
  DiagonalTomogram t;
  const double nd = static_cast<double>(n);
  for (std::size_t k = 0; k < 4; ++k) {
    const double kd = static_cast<double>(c.n[k]);
    t.p[k] = kd / nd;
    const double smooth = (kd + 0.5) / (nd + 1.0);
    t.sigma[k] = std::sqrt(smooth * (1.0 - smooth) / nd);
  }
  return t;
}

DiagonalTomogram joint_probabilities(const sequence::EventLog& log, quantum::MeasurementBasis basis) {
  return tomogram_from_counts(joint_counts(log, basis));
}

namespace {

void check_fidelity(double f, bool strict) {
  if (!(f >= 0.0 && f <= 1.0)) throw InvalidArgument("measurement fidelity must lie in [0, 1]");
  if (strict && !(f > 0.5)) throw InvalidArgument("measurement fidelity must exceed 1/2 to invert");
}

// Mixes each atom-up entry with its atom-down partner of the same photon outcome.
DiagonalTomogram mix(const DiagonalTomogram& t, double keep, double swap, double scale) {
  DiagonalTomogram out;
  const std::pair<int, int> pairs[] = {{DiagonalTomogram::up_h, DiagonalTomogram::down_h},
                                       {DiagonalTomogram::up_v, DiagonalTomogram::down_v}};
  for (auto [u, d] : pairs) {
    out.p[u] = (keep * t.p[u] + swap * t.p[d]) / scale;
    out.p[d] = (keep * t.p[d] + swap * t.p[u]) / scale;
    out.sigma[u] = std::hypot(keep * t.sigma[u], swap * t.sigma[d]) / std::abs(scale);
    out.sigma[d] = std::hypot(keep * t.sigma[d], swap * t.sigma[u]) / std::abs(scale);
  }
  return out;
}

}  // namespace

DiagonalTomogram forward_confusion(const DiagonalTomogram& t, double f_meas) {
  check_fidelity(f_meas, false);
  return mix(t, f_meas, 1.0 - f_meas, 1.0);
}

DiagonalTomogram correct_for_readout(const DiagonalTomogram& t, double f_meas) {
  check_fidelity(f_meas, true);
  return mix(t, f_meas, -(1.0 - f_meas), 2.0 * f_meas - 1.0);
}

quantum::Estimate correct_for_readout(const quantum::Estimate& f_raw, double f_meas) {
  check_fidelity(f_meas, true);
  const double k = 2.0 * f_meas - 1.0;
  return {0.5 + (f_raw.value - 0.5) / k, f_raw.uncertainty / k};
}

}  // namespace qnode::estimators

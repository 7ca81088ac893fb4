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

#include <span>

#include "qnode/quantum/fidelity.hpp"
#include "qnode/units.hpp"

namespace qnode::estimators {

struct ReadoutThreshold {
  int threshold = 0;      // classify "present" iff counts >= threshold
  double p_miss = 0.0;    // P(Pois(mu_atom) < threshold)
  double p_false = 0.0;   // P(Pois(mu_bg) >= threshold)
  double fidelity = 0.0;  // 1 - (p_miss + p_false) / 2
};

// Threshold minimising the summed misclassification of two Poisson count
// distributions with means mu_atom > mu_bg.
ReadoutThreshold readout_threshold(double mu_atom, double mu_bg);

// Threshold performance measured on labelled shots: summed counts of loaded
// and of empty-trap exposures. fidelity is the fraction of loaded traps
// classified present (the two-readout definition); balanced also charges
// empty-trap false positives. Binomial uncertainties.
struct MeasuredReadout {
  double p_miss = 0.0;
  double p_false = 0.0;
  quantum::Estimate fidelity;
  quantum::Estimate balanced;
};
MeasuredReadout measure_readout_fidelity(std::span<const int> present_counts,
                                         std::span<const int> absent_counts, int threshold);

// Parity-visibility factor cos(2 delta) left by a quarter-wave plate set off
// by delta (worst case: linear light along the plate axis; circular light only
// picks up a phase).
double visibility_penalty(Angle delta);

}  // namespace qnode::estimators

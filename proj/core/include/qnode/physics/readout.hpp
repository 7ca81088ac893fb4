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

#include "qnode/physics/node_config.hpp"
#include "qnode/rng.hpp"

namespace qnode::physics {

struct ReadoutCounts {
  int spcm1 = 0;
  int spcm2 = 0;
  int total() const { return spcm1 + spcm2; }
  bool operator==(const ReadoutCounts&) const = default;
};

// Per-SPCM Poisson counts over one exposure. With the loss model enabled a
// present atom may leave the trap during the exposure; its signal then stops.
ReadoutCounts readout_counts(bool atom_present, const NodeConfig& c, Rng& rng);

// Threshold classifier on the summed counts with its exact error rates.
struct ReadoutModel {
  int threshold = 0;            // present iff total >= threshold
  double p_miss_present = 0.0;  // present atom classified absent (incl. loss)
  double p_false_present = 0.0; // empty trap classified present

  bool classify(const ReadoutCounts& counts) const { return counts.total() >= threshold; }
  double fidelity_present() const { return 1.0 - p_miss_present; }
};

ReadoutModel readout_model(const NodeConfig& c);

}  // namespace qnode::physics

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
#include <random>

namespace qnode {

using Rng = std::mt19937_64;

// Independent sub-streams are addressed by (purpose, index) and derived from the
// master seed by counter splitting, so a shot's randomness never depends on the
// order in which shots are executed.
enum class StreamPurpose : std::uint64_t {
  fiber = 1,
  shot = 2,
  g2_block = 3,
  scan_point = 4,
  readout = 5,
  optimizer = 6,
  bootstrap = 7,
};

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t stream_seed(std::uint64_t master, StreamPurpose purpose,
                                    std::uint64_t index) {
  return splitmix64(splitmix64(master ^ splitmix64(static_cast<std::uint64_t>(purpose))) +
                    index);
}

inline Rng make_stream(std::uint64_t master, StreamPurpose purpose, std::uint64_t index = 0) {
  return Rng(stream_seed(master, purpose, index));
}

// Uniform double in [0, 1).
inline double uniform01(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

inline bool bernoulli(Rng& rng, double p) { return uniform01(rng) < p; }

}  // namespace qnode

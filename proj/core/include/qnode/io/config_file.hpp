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
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "qnode/physics/node_config.hpp"
#include "qnode/quantum/fidelity.hpp"
#include "qnode/sequence/spec.hpp"

namespace qnode::io {

inline constexpr int kConfigFormatVersion = 1;
inline constexpr const char* kConfigEnvVar = "QNODE_CONFIG";

struct SequenceDefaults {
  std::uint64_t seed = 1;
  std::int64_t shots = 1000;            // entanglement shots per basis
  std::int64_t g2_cycles = 3'000'000;
  std::int64_t readout_shots = 10'000;
  std::int64_t shots_per_point = 200;   // rabi / ramsey
  std::int64_t optimizer_shots = 200;
  sequence::Transition transition = sequence::Transition::clock;
  unsigned threads = 1;
  bool operator==(const SequenceDefaults&) const = default;
};

struct AnalysisSettings {
  double g2_window_ns = 200.0;
  double readout_correction = 0.95;  // atom measurement fidelity used to correct F_low
  double decay_bin_ns = 1.0;
  bool operator==(const AnalysisSettings&) const = default;
};

// Sections [node] and [errors] both fill NodeConfig; [errors] holds the
// imperfection knobs.
struct ConfigFile {
  int format_version = kConfigFormatVersion;
  physics::NodeConfig node;
  SequenceDefaults sequence;
  AnalysisSettings analysis;
  bool operator==(const ConfigFile&) const = default;
};

// Throws ConfigError with the 1-based line and column of the first problem.
// Keys left out keep their defaults; unknown sections and keys are rejected.
ConfigFile parse_config(std::string_view text);

// Every field, one per line, in registry order.
std::string serialize_config(const ConfigFile& config);

// Default configuration with each field's unit and meaning as a comment.
std::string reference_config();

// Reads and parses a file; IoError when unreadable.
ConfigFile load_config(const std::filesystem::path& path);

// Value of QNODE_CONFIG, if set and non-empty.
std::optional<std::filesystem::path> config_path_from_env();

// Canonical JSON of the physical configuration (sections node and errors).
std::string config_to_json(const physics::NodeConfig& config);
physics::NodeConfig config_from_json(std::string_view json);

// 64-bit FNV-1a of config_to_json, 16 hex digits.
std::string config_hash(const physics::NodeConfig& config);

}  // namespace qnode::io

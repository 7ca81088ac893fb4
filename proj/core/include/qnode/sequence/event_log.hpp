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
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qnode/physics/node_config.hpp"
#include "qnode/physics/readout.hpp"
#include "qnode/quantum/jones.hpp"
#include "qnode/sequence/spec.hpp"

namespace qnode::sequence {

inline constexpr int kLogFormatVersion = 1;

enum class ClickOrigin { photon, dark };
enum class Trigger { none, photon, dark };
enum class PhotonOutcome { h, v };

struct ClickRecord {
  std::int64_t shot = 0;
  std::int64_t cycle = 0;
  int attempt = 1;
  int channel = 1;
  std::int64_t time_ns = 0;
  ClickOrigin origin = ClickOrigin::photon;
  bool operator==(const ClickRecord&) const = default;
};

struct ShotRecord {
  std::int64_t shot = 0;
  quantum::MeasurementBasis basis = quantum::MeasurementBasis::z;
  double alpha_deg = 0.0;
  double beta_deg = 0.0;
  std::optional<PhotonOutcome> photon;  // unset when no click triggered
  std::optional<bool> atom_up;          // true: up' (atom gone at readout)
  physics::ReadoutCounts counts;
  bool atom_survived = true;
  bool multi_photon = false;
  std::int64_t cycles = 0;
  Trigger trigger = Trigger::none;
  bool operator==(const ShotRecord&) const = default;
};

struct RunSummary {
  std::int64_t shots = 0;
  std::int64_t cycles = 0;
  std::int64_t gates = 0;
  std::int64_t detected_cycles = 0;  // cycles with at least one photon click
  std::int64_t atoms_loaded = 0;
  std::int64_t photon_clicks = 0;
  std::int64_t dark_clicks = 0;
  bool operator==(const RunSummary&) const = default;
};

using Record = std::variant<ClickRecord, ShotRecord, RunSummary>;

struct LogHeader {
  int format_version = kLogFormatVersion;
  std::uint64_t seed = 0;
  std::string config_hash;
  physics::NodeConfig config;
  SequenceSpec spec;
  std::optional<WaveplateAngles> resolved_angles;
  quantum::Mat2 fiber = quantum::Mat2::Identity();
  bool operator==(const LogHeader&) const = default;
};

struct EventLog {
  LogHeader header;
  std::vector<Record> records;

  std::vector<ShotRecord> shots() const;
  std::vector<ClickRecord> clicks() const;
  std::optional<RunSummary> summary() const;
};

// Checks the EventLog invariants: increasing shot ids, every recorded photon
// outcome backed by a click of the same shot, clicks inside the gate, and a
// closing run summary whose shot and click counts match the records.
// Returns an empty string when all hold, else a description of the first breach.
std::string check_invariants(const EventLog& log);

}  // namespace qnode::sequence

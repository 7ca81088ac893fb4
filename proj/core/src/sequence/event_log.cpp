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
#include "qnode/sequence/event_log.hpp"

#include <map>

namespace qnode::sequence {

std::vector<ShotRecord> EventLog::shots() const {
  std::vector<ShotRecord> out;
  for (const auto& r : records)
    if (const auto* s = std::get_if<ShotRecord>(&r)) out.push_back(*s);
  return out;
}

std::vector<ClickRecord> EventLog::clicks() const {
  std::vector<ClickRecord> out;
  for (const auto& r : records)
    if (const auto* c = std::get_if<ClickRecord>(&r)) out.push_back(*c);
  return out;
}

std::optional<RunSummary> EventLog::summary() const {
  for (auto it = records.rbegin(); it != records.rend(); ++it)
    if (const auto* s = std::get_if<RunSummary>(&*it)) return *s;
  return std::nullopt;
}

std::string check_invariants(const EventLog& log) {
  const double gate = log.header.config.gate_window_ns;
  std::int64_t last_shot = -1;
  // Channels clicked per shot id, for shots not yet summarised.
  std::map<std::int64_t, unsigned> channels;
  std::int64_t n_clicks = 0;
  std::int64_t n_shots = 0;
  for (std::size_t i = 0; i < log.records.size(); ++i) {
    const auto& r = log.records[i];
    if (const auto* sum = std::get_if<RunSummary>(&r)) {
      if (i + 1 != log.records.size()) return "run summary is not the last record";
      if (sum->shots != n_shots) return "summary shot count disagrees with the shot records";
      if (sum->photon_clicks + sum->dark_clicks != n_clicks)
        return "summary click count disagrees with the click records";
      return {};
    }
    if (const auto* c = std::get_if<ClickRecord>(&r)) {
      ++n_clicks;
      if (c->time_ns < 0 || static_cast<double>(c->time_ns) > gate + 0.5)
        return "click outside the gate in shot " + std::to_string(c->shot);
      if (c->channel != 1 && c->channel != 2) return "click on unknown channel";
      channels[c->shot] |= (c->channel == 1 ? 1u : 2u);
    } else if (const auto* s = std::get_if<ShotRecord>(&r)) {
      if (s->shot <= last_shot) return "shot ids not strictly increasing at " + std::to_string(s->shot);
      last_shot = s->shot;
      ++n_shots;
      if (s->photon) {
        const unsigned need = *s->photon == PhotonOutcome::h ? 1u : 2u;
        if (!(channels[s->shot] & need))
          return "photon outcome of shot " + std::to_string(s->shot) + " has no click";
      }
      channels.erase(s->shot);
    }
  }
  return "log has no run summary";
}

}  // namespace qnode::sequence

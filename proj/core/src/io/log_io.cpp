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
#include "qnode/io/log_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include <nlohmann/json.hpp>

#include "qnode/error.hpp"
#include "qnode/io/config_file.hpp"

namespace qnode::io {
namespace {

using nlohmann::json;
using namespace qnode::sequence;

json angles_to_json(const WaveplateAngles& a) { return {{"qwp_deg", a.qwp_deg}, {"hwp_deg", a.hwp_deg}}; }

WaveplateAngles angles_from_json(const json& j) {
  return {j.at("qwp_deg").get<double>(), j.at("hwp_deg").get<double>()};
}

// Row-major (re, im) pairs.
json matrix_to_json(const quantum::Mat2& m) {
  json a = json::array();
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      a.push_back(m(r, c).real());
      a.push_back(m(r, c).imag());
    }
  return a;
}

quantum::Mat2 matrix_from_json(const json& j) {
  if (!j.is_array() || j.size() != 8) throw InvalidArgument("matrix needs 8 numbers");
  quantum::Mat2 m;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      const std::size_t k = static_cast<std::size_t>(4 * r + 2 * c);
      m(r, c) = {j.at(k).get<double>(), j.at(k + 1).get<double>()};
    }
  return m;
}

json spec_to_json(const SequenceSpec& s) {
  json j = {{"kind", to_string(s.kind)},
            {"basis", to_string(s.basis)},
            {"grid", s.grid},
            {"transition", to_string(s.transition)},
            {"detuning_khz", s.detuning_khz},
            {"budget", s.budget},
            {"seed", s.seed},
            {"g2_source", to_string(s.g2_source)},
            {"poisson_mean_per_gate", s.poisson_mean_per_gate},
            {"sampling", to_string(s.sampling)},
            {"optimizer_shots", s.optimizer_shots}};
  if (s.angles) j["angles"] = angles_to_json(*s.angles);
  if (s.fiber) j["fiber"] = matrix_to_json(*s.fiber);
  return j;
}

SequenceSpec spec_from_json(const json& j) {
  SequenceSpec s;
  s.kind = experiment_kind_from(j.at("kind").get<std::string>());
  s.basis = basis_from(j.at("basis").get<std::string>());
  s.grid = j.at("grid").get<std::vector<double>>();
  s.transition = transition_from(j.at("transition").get<std::string>());
  s.detuning_khz = j.at("detuning_khz").get<double>();
  s.budget = j.at("budget").get<std::int64_t>();
  s.seed = j.at("seed").get<std::uint64_t>();
  s.g2_source = g2_source_from(j.at("g2_source").get<std::string>());
  s.poisson_mean_per_gate = j.at("poisson_mean_per_gate").get<double>();
  s.sampling = sampling_from(j.at("sampling").get<std::string>());
  s.optimizer_shots = j.at("optimizer_shots").get<std::int64_t>();
  if (j.contains("angles")) s.angles = angles_from_json(j.at("angles"));
  if (j.contains("fiber")) s.fiber = matrix_from_json(j.at("fiber"));
  return s;
}

const char* origin_name(ClickOrigin o) { return o == ClickOrigin::photon ? "photon" : "dark"; }

ClickOrigin origin_from(const std::string& s) {
  if (s == "photon") return ClickOrigin::photon;
  if (s == "dark") return ClickOrigin::dark;
  throw InvalidArgument("unknown click origin '" + s + "'");
}

const char* trigger_name(Trigger t) {
  switch (t) {
    case Trigger::photon: return "photon";
    case Trigger::dark: return "dark";
    case Trigger::none: break;
  }
  return "none";
}

Trigger trigger_from(const std::string& s) {
  if (s == "photon") return Trigger::photon;
  if (s == "dark") return Trigger::dark;
  if (s == "none") return Trigger::none;
  throw InvalidArgument("unknown trigger '" + s + "'");
}

json record_to_json(const ClickRecord& r) {
  return {{"kind", "click"},     {"shot", r.shot},       {"cycle", r.cycle}, {"attempt", r.attempt},
          {"channel", r.channel}, {"time_ns", r.time_ns}, {"origin", origin_name(r.origin)}};
}

json record_to_json(const ShotRecord& r) {
  json j = {{"kind", "shot"},
            {"shot", r.shot},
            {"basis", to_string(r.basis)},
            {"alpha_deg", r.alpha_deg},
            {"beta_deg", r.beta_deg},
            {"photon", nullptr},
            {"atom", nullptr},
            {"counts", {r.counts.spcm1, r.counts.spcm2}},
            {"survived", r.atom_survived},
            {"multi_photon", r.multi_photon},
            {"cycles", r.cycles},
            {"trigger", trigger_name(r.trigger)}};
  if (r.photon) j["photon"] = *r.photon == PhotonOutcome::h ? "H" : "V";
  if (r.atom_up) j["atom"] = *r.atom_up ? "up" : "down";
  return j;
}

json record_to_json(const RunSummary& r) {
  return {{"kind", "summary"},
          {"shots", r.shots},
          {"cycles", r.cycles},
          {"gates", r.gates},
          {"detected_cycles", r.detected_cycles},
          {"atoms_loaded", r.atoms_loaded},
          {"photon_clicks", r.photon_clicks},
          {"dark_clicks", r.dark_clicks}};
}

Record record_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "click") {
    ClickRecord r;
    r.shot = j.at("shot").get<std::int64_t>();
    r.cycle = j.at("cycle").get<std::int64_t>();
    r.attempt = j.at("attempt").get<int>();
    r.channel = j.at("channel").get<int>();
    r.time_ns = j.at("time_ns").get<std::int64_t>();
    r.origin = origin_from(j.at("origin").get<std::string>());
    if (r.channel != 1 && r.channel != 2) throw InvalidArgument("channel must be 1 or 2");
    return r;
  }
  if (kind == "shot") {
    ShotRecord r;
    r.shot = j.at("shot").get<std::int64_t>();
    r.basis = basis_from(j.at("basis").get<std::string>());
    r.alpha_deg = j.at("alpha_deg").get<double>();
    r.beta_deg = j.at("beta_deg").get<double>();
    const json& p = j.at("photon");
    if (!p.is_null()) {
      const auto s = p.get<std::string>();
      if (s != "H" && s != "V") throw InvalidArgument("photon must be H, V or null");
      r.photon = s == "H" ? PhotonOutcome::h : PhotonOutcome::v;
    }
    const json& a = j.at("atom");
    if (!a.is_null()) {
      const auto s = a.get<std::string>();
      if (s != "up" && s != "down") throw InvalidArgument("atom must be up, down or null");
      r.atom_up = s == "up";
    }
    const json& c = j.at("counts");
    if (!c.is_array() || c.size() != 2) throw InvalidArgument("counts needs two entries");
    r.counts.spcm1 = c.at(0).get<int>();
    r.counts.spcm2 = c.at(1).get<int>();
    r.atom_survived = j.at("survived").get<bool>();
    r.multi_photon = j.at("multi_photon").get<bool>();
    r.cycles = j.at("cycles").get<std::int64_t>();
    r.trigger = trigger_from(j.at("trigger").get<std::string>());
    return r;
  }
  if (kind == "summary") {
    RunSummary r;
    r.shots = j.at("shots").get<std::int64_t>();
    r.cycles = j.at("cycles").get<std::int64_t>();
    r.gates = j.at("gates").get<std::int64_t>();
    r.detected_cycles = j.at("detected_cycles").get<std::int64_t>();
    r.atoms_loaded = j.at("atoms_loaded").get<std::int64_t>();
    r.photon_clicks = j.at("photon_clicks").get<std::int64_t>();
    r.dark_clicks = j.at("dark_clicks").get<std::int64_t>();
    return r;
  }
  throw InvalidArgument("unknown record kind '" + kind + "'");
}

template <class F>
auto guarded(long long line, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw LogFormatError(line, e.what());
  } catch (const InvalidArgument& e) {
    throw LogFormatError(line, e.what());
  }
}

}  // namespace

std::string header_to_line(const LogHeader& h) {
  json j = {{"kind", "header"},
            {"format_version", h.format_version},
            {"seed", h.seed},
            {"config_hash", h.config_hash},
            {"config", json::parse(config_to_json(h.config))},
            {"spec", spec_to_json(h.spec)},
            {"resolved_angles", nullptr},
            {"fiber", matrix_to_json(h.fiber)}};
  if (h.resolved_angles) j["resolved_angles"] = angles_to_json(*h.resolved_angles);
  return j.dump();
}

std::string record_to_line(const Record& record) {
  return std::visit([](const auto& r) { return record_to_json(r).dump(); }, record);
}

LogHeader header_from_line(std::string_view line, long long line_number) {
  LogHeader h = guarded(line_number, [&] {
    const json j = json::parse(line);
    if (j.at("kind").get<std::string>() != "header") throw InvalidArgument("first line is not a header");
    LogHeader h;
    h.format_version = j.at("format_version").get<int>();
    if (h.format_version != kLogFormatVersion)
      throw InvalidArgument("unsupported log format_version " + std::to_string(h.format_version));
    h.seed = j.at("seed").get<std::uint64_t>();
    h.config_hash = j.at("config_hash").get<std::string>();
    h.config = config_from_json(j.at("config").dump());
    h.spec = spec_from_json(j.at("spec"));
    if (!j.at("resolved_angles").is_null()) h.resolved_angles = angles_from_json(j.at("resolved_angles"));
    h.fiber = matrix_from_json(j.at("fiber"));
    return h;
  });
  if (config_hash(h.config) != h.config_hash)
    throw LogFormatError(line_number, "config_hash does not match the embedded config");
  return h;
}

Record record_from_line(std::string_view line, long long line_number) {
  return guarded(line_number, [&] { return record_from_json(json::parse(line)); });
}

void write_log(std::ostream& out, const EventLog& log) {
  out << header_to_line(log.header) << '\n';
  for (const auto& r : log.records) out << record_to_line(r) << '\n';
  if (!out) throw IoError("failed to write log");
}

void write_log_file(const std::filesystem::path& path, const EventLog& log) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  write_log(out, log);
  out.close();
  if (!out) throw IoError("failed to write " + path.string());
}

LogReader::LogReader(std::istream& in) : in_(in) {
  while (std::getline(in_, buffer_)) {
    ++line_;
    if (buffer_.find_first_not_of(" \t\r") == std::string::npos) continue;
    header_ = header_from_line(buffer_, line_);
    return;
  }
  if (in_.bad()) throw IoError("error while reading log");
  throw LogFormatError(line_ + 1, "log is empty (no header)");
}

bool LogReader::next(Record& record) {
  while (std::getline(in_, buffer_)) {
    ++line_;
    if (buffer_.find_first_not_of(" \t\r") == std::string::npos) continue;
    record = record_from_line(buffer_, line_);
    return true;
  }
  if (in_.bad()) throw IoError("error while reading log");
  return false;
}

EventLog read_log(std::istream& in) {
  LogReader reader(in);
  EventLog log;
  log.header = reader.header();
  Record r;
  while (reader.next(r)) log.records.push_back(std::move(r));
  return log;
}

EventLog read_log_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read log file " + path.string());
  return read_log(in);
}

}  // namespace qnode::io

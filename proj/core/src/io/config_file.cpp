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
#include "qnode/io/config_file.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "qnode/error.hpp"

namespace qnode::io {
namespace {

using nlohmann::json;
using physics::MapErrorModel;
using sequence::Transition;

enum class Section { node, errors, sequence, analysis };

constexpr Section kSections[] = {Section::node, Section::errors, Section::sequence, Section::analysis};

const char* section_name(Section s) {
  switch (s) {
    case Section::node: return "node";
    case Section::errors: return "errors";
    case Section::sequence: return "sequence";
    case Section::analysis: return "analysis";
  }
  return "?";
}

template <class T>
struct Codec;

template <>
struct Codec<double> {
  static constexpr const char* type = "real number";
  static std::string format(double v) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
  }
  static std::optional<double> parse(std::string_view s) {
    double v = 0.0;
    auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
  }
  static json to_json(double v) { return v; }
  static double from_json(const json& j) {
    if (!j.is_number()) throw InvalidArgument("expected a number");
    return j.get<double>();
  }
};

template <class I>
struct IntCodec {
  static constexpr const char* type = "integer";
  static std::string format(I v) { return std::to_string(v); }
  static std::optional<I> parse(std::string_view s) {
    I v{};
    auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size()) return std::nullopt;
    return v;
  }
  static json to_json(I v) { return v; }
  static I from_json(const json& j) {
    if (!j.is_number_integer()) throw InvalidArgument("expected an integer");
    return j.get<I>();
  }
};

template <>
struct Codec<int> : IntCodec<int> {};
template <>
struct Codec<unsigned> : IntCodec<unsigned> {};
template <>
struct Codec<std::int64_t> : IntCodec<std::int64_t> {};
template <>
struct Codec<std::uint64_t> : IntCodec<std::uint64_t> {};

template <>
struct Codec<bool> {
  static constexpr const char* type = "true or false";
  static std::string format(bool v) { return v ? "true" : "false"; }
  static std::optional<bool> parse(std::string_view s) {
    if (s == "true") return true;
    if (s == "false") return false;
    return std::nullopt;
  }
  static json to_json(bool v) { return v; }
  static bool from_json(const json& j) {
    if (!j.is_boolean()) throw InvalidArgument("expected true or false");
    return j.get<bool>();
  }
};

template <>
struct Codec<MapErrorModel> {
  static constexpr const char* type = "incoherent or detuning";
  static std::string format(MapErrorModel v) {
    return v == MapErrorModel::incoherent ? "incoherent" : "detuning";
  }
  static std::optional<MapErrorModel> parse(std::string_view s) {
    if (s == "incoherent") return MapErrorModel::incoherent;
    if (s == "detuning") return MapErrorModel::detuning;
    return std::nullopt;
  }
  static json to_json(MapErrorModel v) { return format(v); }
  static MapErrorModel from_json(const json& j) {
    if (!j.is_string()) throw InvalidArgument("expected a string");
    auto v = parse(j.get<std::string>());
    if (!v) throw InvalidArgument("unknown map error model");
    return *v;
  }
};

template <>
struct Codec<Transition> {
  static constexpr const char* type = "clock, bare or magic";
  static std::string format(Transition v) { return sequence::to_string(v); }
  static std::optional<Transition> parse(std::string_view s) {
    try {
      return sequence::transition_from(std::string(s));
    } catch (const InvalidArgument&) {
      return std::nullopt;
    }
  }
  static json to_json(Transition v) { return format(v); }
  static Transition from_json(const json& j) { return sequence::transition_from(j.get<std::string>()); }
};

struct Field {
  Section section;
  std::string key;
  std::string doc;
  std::string type;
  std::function<std::string(const ConfigFile&)> get;
  std::function<bool(ConfigFile&, std::string_view)> set;
  std::function<json(const ConfigFile&)> to_json;
  std::function<void(ConfigFile&, const json&)> from_json;
};

template <class T, class Access>
Field field(Section s, const char* key, const char* doc, Access acc) {
  Field f;
  f.section = s;
  f.key = key;
  f.doc = doc;
  f.type = Codec<T>::type;
  f.get = [acc](const ConfigFile& c) { return Codec<T>::format(acc(const_cast<ConfigFile&>(c))); };
  f.set = [acc](ConfigFile& c, std::string_view v) {
    auto p = Codec<T>::parse(v);
    if (!p) return false;
    acc(c) = *p;
    return true;
  };
  f.to_json = [acc](const ConfigFile& c) { return Codec<T>::to_json(acc(const_cast<ConfigFile&>(c))); };
  f.from_json = [acc](ConfigFile& c, const json& j) { acc(c) = Codec<T>::from_json(j); };
  return f;
}

#define QNODE_FIELD(T, section, member, name, doc) \
  field<T>(Section::section, name, doc, [](ConfigFile& c) -> T& { return c.member; })
#define NODE(T, name, doc) QNODE_FIELD(T, node, node.name, #name, doc)
#define KNOB(T, name, doc) QNODE_FIELD(T, errors, node.name, #name, doc)

const std::vector<Field>& registry() {
  static const std::vector<Field> fields = {
      NODE(double, tau_excited_ns, "excited-state lifetime, ns"),
      NODE(double, pulse_fwhm_ns, "excitation pulse FWHM, ns"),
      NODE(double, pulse_center_ns, "excitation pulse centre after gate opening, ns"),
      NODE(double, gate_window_ns, "detection gate per attempt, ns"),
      NODE(double, trap_off_window_ns, "trap light off per attempt, ns"),
      NODE(int, attempts_per_cycle, "excitation attempts per cycle"),
      NODE(double, attempt_spacing_us, "delay between attempts, us"),
      NODE(double, eta_fiber, "collection into the single-mode fiber"),
      NODE(double, optics_loss, "loss between fiber and detectors"),
      NODE(double, spcm_qe, "detector quantum efficiency"),
      NODE(double, raman_bg_rate_hz, "Raman background per SPCM with trap light on, 1/s"),
      NODE(double, readout_exposure_ms, "fluorescence exposure, ms"),
      NODE(double, mu_atom_per_spcm, "mean counts per SPCM with an atom, background included"),
      NODE(double, mu_bg_per_spcm, "mean background counts per SPCM"),
      NODE(double, cycles_per_atom_mean, "mean excitation cycles before the atom is lost"),
      NODE(double, trap_lifetime_s, "trap lifetime, s"),
      NODE(double, cycle_duration_ms, "wall time per excitation cycle, ms"),
      NODE(double, loading_probability, "probability of loading an atom"),
      NODE(double, t2_bare_us, "T2* of the (up, up') qubit, us"),
      NODE(double, t2_magic_us, "T2* of the (down, up') qubit at the magic field, us"),
      NODE(double, t2_clock_us, "T2* of the clock qubit, us"),
      NODE(double, map_pulse_len_us, "microwave mapping pulse length, us"),
      NODE(double, branch_delay_us, "delay from detection to the mapping pulse, us"),
      NODE(double, two_photon_rabi_khz, "two-photon Rabi frequency of the mapped qubit, kHz"),
      NODE(double, pi_half_len_us, "two-photon pi/2 pulse length, us"),
      NODE(double, clock_rabi_khz, "clock transition Rabi frequency, kHz"),
      NODE(double, bare_rabi_khz, "(up, up') transition Rabi frequency, kHz"),
      NODE(double, bias_field_gauss, "bias field, G"),
      NODE(double, rotation_axis_deg, "azimuth of the two-photon rotation axis, deg (90 = y)"),
      NODE(double, fluor_readout_fidelity, "fluorescence readout fidelity used in the budget"),
      KNOB(double, pump_fidelity, "optical pumping into |f=1, m_f=0>"),
      KNOB(double, map_fidelity_m1, "mapping-pulse transfer up -> up'"),
      KNOB(MapErrorModel, map_error_model, "mapping error model: incoherent or detuning"),
      KNOB(double, map_detuning_sigma_khz, "per-shot detuning spread of the detuning model, kHz"),
      KNOB(double, blowaway_fidelity, "state-selective blow-away fidelity"),
      KNOB(double, two_photon_transfer_fidelity, "two-photon pi-pulse transfer"),
      KNOB(double, dark_rate_hz, "dark counts per SPCM, 1/s"),
      KNOB(bool, premap_dephasing, "dephasing of the (down, up) qubit before mapping"),
      KNOB(bool, readout_atom_loss, "atom loss during the readout exposure"),
      KNOB(double, multi_photon_rate, "fraction of detections flagged multi-photon"),
      KNOB(double, excitation_pol_admixture, "white-noise weight of the emitted pair"),
      KNOB(double, qwp_angle_error_deg, "quarter-wave plate setting error, deg"),
      KNOB(double, hwp_angle_error_deg, "half-wave plate setting error, deg"),
      QNODE_FIELD(std::uint64_t, sequence, sequence.seed, "seed", "master seed (--seed overrides)"),
      QNODE_FIELD(std::int64_t, sequence, sequence.shots, "shots", "entanglement shots per basis"),
      QNODE_FIELD(std::int64_t, sequence, sequence.g2_cycles, "g2_cycles", "excitation cycles of a g2 run"),
      QNODE_FIELD(std::int64_t, sequence, sequence.readout_shots, "readout_shots",
                  "readout histogram shots"),
      QNODE_FIELD(std::int64_t, sequence, sequence.shots_per_point, "shots_per_point",
                  "shots per rabi/ramsey point"),
      QNODE_FIELD(std::int64_t, sequence, sequence.optimizer_shots, "optimizer_shots",
                  "shots per point of the waveplate search"),
      QNODE_FIELD(Transition, sequence, sequence.transition, "transition",
                  "rabi/ramsey transition: clock, bare or magic"),
      QNODE_FIELD(unsigned, sequence, sequence.threads, "threads", "worker threads"),
      QNODE_FIELD(double, analysis, analysis.g2_window_ns, "g2_window_ns", "coincidence window, ns"),
      QNODE_FIELD(double, analysis, analysis.readout_correction, "readout_correction",
                  "atom measurement fidelity for the corrected fidelity"),
      QNODE_FIELD(double, analysis, analysis.decay_bin_ns, "decay_bin_ns", "arrival-time bin width, ns"),
  };
  return fields;
}

#undef KNOB
#undef NODE
#undef QNODE_FIELD

const Field* find_field(Section s, std::string_view key) {
  for (const auto& f : registry())
    if (f.section == s && f.key == key) return &f;
  return nullptr;
}

std::optional<Section> find_section(std::string_view name) {
  for (auto s : kSections)
    if (name == section_name(s)) return s;
  return std::nullopt;
}

bool is_space(char c) { return c == ' ' || c == '\t'; }

std::size_t skip_space(std::string_view s, std::size_t i) {
  while (i < s.size() && is_space(s[i])) ++i;
  return i;
}

std::string_view rtrim(std::string_view s) {
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

// Cuts an inline comment introduced by whitespace + '#' or ';'.
std::string_view strip_comment(std::string_view s) {
  for (std::size_t i = 1; i < s.size(); ++i)
    if ((s[i] == '#' || s[i] == ';') && is_space(s[i - 1])) return rtrim(s.substr(0, i));
  return rtrim(s);
}

void validate_sequence(const ConfigFile& c, const std::map<std::string, std::pair<int, int>>& where) {
  auto fail = [&](const std::string& key, const std::string& msg) {
    auto it = where.find(key);
    const auto pos = it == where.end() ? std::pair{1, 1} : it->second;
    throw ConfigError(pos.first, pos.second, key + " " + msg);
  };
  if (c.sequence.shots <= 0) fail("shots", "must be positive");
  if (c.sequence.g2_cycles <= 0) fail("g2_cycles", "must be positive");
  if (c.sequence.readout_shots <= 0) fail("readout_shots", "must be positive");
  if (c.sequence.shots_per_point <= 0) fail("shots_per_point", "must be positive");
  if (c.sequence.optimizer_shots <= 0) fail("optimizer_shots", "must be positive");
  if (c.sequence.threads == 0) fail("threads", "must be at least 1");
  if (!(c.analysis.g2_window_ns > 0.0)) fail("g2_window_ns", "must be positive");
  if (!(c.analysis.readout_correction > 0.5 && c.analysis.readout_correction <= 1.0))
    fail("readout_correction", "must lie in (0.5, 1]");
  if (!(c.analysis.decay_bin_ns > 0.0)) fail("decay_bin_ns", "must be positive");
  try {
    c.node.validate();
  } catch (const InvalidArgument& e) {
    const std::string msg = e.what();
    const std::string key = msg.substr(0, msg.find(' '));
    fail(key, msg.substr(key.size() + 1));
  }
}

}  // namespace

ConfigFile parse_config(std::string_view text) {
  ConfigFile cfg;
  std::optional<Section> current;
  std::set<std::pair<int, std::string>> seen;
  std::map<std::string, std::pair<int, int>> where;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const std::size_t first = skip_space(line, 0);
    if (first == line.size() || line[first] == '#' || line[first] == ';') {
      if (end == text.size()) break;
      continue;
    }
    const int col = static_cast<int>(first) + 1;
    if (line[first] == '[') {
      const std::size_t close = line.find(']', first);
      if (close == std::string_view::npos) throw ConfigError(line_no, col, "missing ']' in section header");
      const std::size_t name_at = skip_space(line, first + 1);
      const std::string_view name = rtrim(line.substr(name_at, close - name_at));
      const std::size_t rest = skip_space(line, close + 1);
      if (rest < line.size() && line[rest] != '#' && line[rest] != ';')
        throw ConfigError(line_no, static_cast<int>(close) + 2, "unexpected text after section header");
      current = find_section(name);
      if (!current)
        throw ConfigError(line_no, static_cast<int>(name_at) + 1,
                          "unknown section [" + std::string(name) + "]");
    } else {
      const std::size_t eq = line.find('=', first);
      if (eq == std::string_view::npos) throw ConfigError(line_no, col, "expected 'key = value'");
      const std::string key(rtrim(line.substr(first, eq - first)));
      if (key.empty()) throw ConfigError(line_no, col, "missing key before '='");
      const std::size_t value_at = skip_space(line, eq + 1);
      const std::string_view value = strip_comment(line.substr(value_at));
      const int value_col = static_cast<int>(value_at) + 1;
      if (value.empty()) throw ConfigError(line_no, value_col, "missing value for '" + key + "'");
      if (!current) {
        if (key != "format_version")
          throw ConfigError(line_no, col, "key '" + key + "' outside a section");
        const auto v = Codec<int>::parse(value);
        if (!v || *v != kConfigFormatVersion)
          throw ConfigError(line_no, value_col,
                            "unsupported format_version '" + std::string(value) + "' (expected " +
                                std::to_string(kConfigFormatVersion) + ")");
        continue;
      }
      const Field* f = find_field(*current, key);
      if (!f)
        throw ConfigError(line_no, col,
                          "unknown key '" + key + "' in [" + section_name(*current) + "]");
      if (!seen.insert({static_cast<int>(*current), key}).second)
        throw ConfigError(line_no, col, "duplicate key '" + key + "'");
      if (!f->set(cfg, value))
        throw ConfigError(line_no, value_col,
                          "invalid value '" + std::string(value) + "' for '" + key + "' (expected " +
                              f->type + ")");
      where[key] = {line_no, value_col};
    }
    if (end == text.size()) break;
  }
  validate_sequence(cfg, where);
  return cfg;
}

namespace {

std::string render(const ConfigFile& c, bool with_docs) {
  std::ostringstream out;
  if (with_docs) {
    out << "# qnode configuration reference. Every key is optional; the values\n"
           "# below are the defaults. Unknown sections or keys are rejected.\n"
           "# [node] holds the physical parameters, [errors] the imperfection\n"
           "# knobs, [sequence] run sizes and [analysis] estimator settings.\n";
  }
  out << "format_version = " << kConfigFormatVersion << "\n";
  for (auto s : kSections) {
    out << "\n[" << section_name(s) << "]\n";
    for (const auto& f : registry()) {
      if (f.section != s) continue;
      if (with_docs) out << "# " << f.doc << "\n";
      out << f.key << " = " << f.get(c) << "\n";
    }
  }
  return out.str();
}

}  // namespace

std::string serialize_config(const ConfigFile& config) { return render(config, false); }

std::string reference_config() { return render(ConfigFile{}, true); }

ConfigFile load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error while reading " + path.string());
  return parse_config(ss.str());
}

std::optional<std::filesystem::path> config_path_from_env() {
  const char* v = std::getenv(kConfigEnvVar);
  if (!v || !*v) return std::nullopt;
  return std::filesystem::path(v);
}

std::string config_to_json(const physics::NodeConfig& config) {
  ConfigFile c;
  c.node = config;
  json j = json::object();
  for (const auto& f : registry()) {
    if (f.section != Section::node && f.section != Section::errors) continue;
    j[section_name(f.section)][f.key] = f.to_json(c);
  }
  return j.dump();
}

physics::NodeConfig config_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("config snapshot is not JSON: ") + e.what());
  }
  if (!j.is_object()) throw InvalidArgument("config snapshot must be an object");
  ConfigFile c;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const auto s = find_section(it.key());
    if (!s || (*s != Section::node && *s != Section::errors) || !it.value().is_object())
      throw InvalidArgument("unexpected config snapshot section '" + it.key() + "'");
    for (auto kv = it.value().begin(); kv != it.value().end(); ++kv) {
      const Field* f = find_field(*s, kv.key());
      if (!f) throw InvalidArgument("unknown config snapshot key '" + kv.key() + "'");
      try {
        f->from_json(c, kv.value());
      } catch (const json::exception& e) {
        throw InvalidArgument("bad value for '" + kv.key() + "': " + e.what());
      } catch (const InvalidArgument& e) {
        throw InvalidArgument("bad value for '" + kv.key() + "': " + e.what());
      }
    }
  }
  c.node.validate();
  return c.node;
}

std::string config_hash(const physics::NodeConfig& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : config_to_json(config)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace qnode::io

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
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "qnode/error.hpp"
#include "qnode/io/config_file.hpp"
#include "qnode/io/log_io.hpp"
#include "qnode/io/report.hpp"
#include "qnode/io/table_io.hpp"
#include "qnode/sequence/engine.hpp"

namespace qnode::io {
namespace {

void expect_config_error(const std::string& text, int line, int col) {
  try {
    parse_config(text);
    FAIL() << "accepted:\n" << text;
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), line) << e.what();
    EXPECT_EQ(e.column(), col) << e.what();
  }
}

TEST(Config, EmptyTextGivesDefaults) { EXPECT_EQ(parse_config(""), ConfigFile{}); }

TEST(Config, ReferenceParsesToDefaults) {
  EXPECT_EQ(parse_config(reference_config()), ConfigFile{});
  EXPECT_NE(reference_config().find("eta_fiber"), std::string::npos);
}

TEST(Config, SerializeRoundTrip) {
  ConfigFile c;
  c.node.eta_fiber = 0.0712345678901234;
  c.node.map_error_model = physics::MapErrorModel::detuning;
  c.node.premap_dephasing = false;
  c.sequence.seed = 18446744073709551615ull;
  c.sequence.transition = sequence::Transition::bare;
  c.analysis.readout_correction = 0.97;
  EXPECT_EQ(parse_config(serialize_config(c)), c);
}

TEST(Config, ValuesAndComments) {
  const auto c = parse_config(
      "format_version = 1\n"
      "; full line comment\n"
      "[node]\n"
      "eta_fiber = 0.05   # inline\n"
      "  [ errors ]\n"
      "dark_rate_hz=100\r\n"
      "premap_dephasing = false\n"
      "[sequence]\n"
      "transition = magic ; note\n");
  EXPECT_DOUBLE_EQ(c.node.eta_fiber, 0.05);
  EXPECT_DOUBLE_EQ(c.node.dark_rate_hz, 100.0);
  EXPECT_FALSE(c.node.premap_dephasing);
  EXPECT_EQ(c.sequence.transition, sequence::Transition::magic);
}

TEST(Config, ErrorsCarryLineAndColumn) {
  expect_config_error("[node]\nbogus = 1\n", 2, 1);
  expect_config_error("[nodes]\n", 1, 2);
  expect_config_error("[node]\neta_fiber = abc\n", 2, 13);
  expect_config_error("[node]\neta_fiber = 0.1\neta_fiber = 0.2\n", 3, 1);
  expect_config_error("eta_fiber = 0.1\n", 1, 1);
  expect_config_error("[node]\neta_fiber =\n", 2, 12);
  expect_config_error("format_version = 2\n", 1, 18);
  expect_config_error("[node\n", 1, 1);
  expect_config_error("[node]\n  just text\n", 2, 3);
  expect_config_error("[node]\neta_fiber = nan\n", 2, 13);
  expect_config_error("[sequence]\nshots = 0\n", 2, 9);
  // Physical validation points at the offending key.
  expect_config_error("[node]\n\neta_fiber = 1.5\n", 3, 13);
}

TEST(Config, LoadReportsMissingFileAsIoError) {
  EXPECT_THROW(load_config("/nonexistent/qnode.ini"), IoError);
  const auto path = std::filesystem::temp_directory_path() / "qnode_io_test.ini";
  std::ofstream(path) << "[node]\nspcm_qe = 0.5\n";
  EXPECT_DOUBLE_EQ(load_config(path).node.spcm_qe, 0.5);
  std::filesystem::remove(path);
}

TEST(Config, EnvironmentVariable) {
  ::setenv(kConfigEnvVar, "/tmp/x.ini", 1);
  EXPECT_EQ(config_path_from_env(), std::filesystem::path("/tmp/x.ini"));
  ::unsetenv(kConfigEnvVar);
  EXPECT_FALSE(config_path_from_env());
}

TEST(Config, JsonSnapshotIsStrictAndRoundTrips) {
  physics::NodeConfig c;
  c.spcm_qe = 0.61;
  c.map_error_model = physics::MapErrorModel::detuning;
  const auto text = config_to_json(c);
  EXPECT_EQ(config_from_json(text), c);
  EXPECT_THROW(config_from_json("{\"node\":{\"bogus\":1}}"), InvalidArgument);
  EXPECT_THROW(config_from_json("[1]"), InvalidArgument);
  EXPECT_THROW(config_from_json("{\"node\":{\"spcm_qe\":\"x\"}}"), InvalidArgument);
}

TEST(Config, HashIsStableAndSensitive) {
  physics::NodeConfig c;
  const auto h = config_hash(c);
  EXPECT_EQ(h.size(), 16u);
  EXPECT_EQ(config_hash(c), h);
  c.dark_rate_hz += 1e-9;
  EXPECT_NE(config_hash(c), h);
}

sequence::EventLog small_log() {
  sequence::SequenceSpec s;
  s.kind = sequence::ExperimentKind::entanglement;
  s.budget = 60;
  s.angles = sequence::WaveplateAngles{12.5, 33.0};
  physics::NodeConfig c;
  c.dark_rate_hz = 5e4;  // some dark clicks in the log
  return sequence::run_entanglement(s, c);
}

TEST(Log, RoundTripIsExact) {
  const auto log = small_log();
  std::stringstream ss;
  write_log(ss, log);
  const auto back = read_log(ss);
  EXPECT_EQ(back.header, log.header);
  EXPECT_EQ(back.records, log.records);
  std::stringstream again;
  write_log(again, back);
  std::stringstream first;
  write_log(first, log);
  EXPECT_EQ(again.str(), first.str());
}

TEST(Log, EveryLineIsJson) {
  std::stringstream ss;
  write_log(ss, small_log());
  std::string line;
  int n = 0;
  while (std::getline(ss, line)) {
    const auto j = nlohmann::json::parse(line);
    EXPECT_TRUE(j.contains("kind"));
    ++n;
  }
  EXPECT_GT(n, 60);
}

TEST(Log, StreamingReaderMatchesBulkRead) {
  const auto log = small_log();
  std::stringstream ss;
  write_log(ss, log);
  LogReader reader(ss);
  EXPECT_EQ(reader.header(), log.header);
  sequence::Record r;
  std::size_t i = 0;
  while (reader.next(r)) {
    ASSERT_LT(i, log.records.size());
    EXPECT_EQ(r, log.records[i++]);
  }
  EXPECT_EQ(i, log.records.size());
}

void expect_log_error(const std::string& text, long long line) {
  std::stringstream ss(text);
  try {
    read_log(ss);
    FAIL() << "accepted";
  } catch (const LogFormatError& e) {
    EXPECT_EQ(e.line(), line) << e.what();
  }
}

TEST(Log, MalformedInputNamesTheLine) {
  std::stringstream ss;
  write_log(ss, small_log());
  const std::string good = ss.str();
  const std::string header = good.substr(0, good.find('\n') + 1);
  expect_log_error("", 1);
  expect_log_error("not json\n", 1);
  expect_log_error(header + "{\"kind\":\"click\"}\n", 2);
  expect_log_error(header + "\n{\"kind\":\"mystery\"}\n", 3);
  expect_log_error(header + "{\"kind\":\"shot\",\"shot\":\"x\"}\n", 2);
  std::string tampered = header;
  tampered.replace(tampered.find("\"dark_rate_hz\":"), 15, "\"dark_rate_hz\":1");
  expect_log_error(tampered, 1);
}

TEST(Log, FileErrorsAreIoErrors) {
  EXPECT_THROW(read_log_file("/nonexistent/log.jsonl"), IoError);
}

TEST(Table, RoundTrip) {
  Table t;
  t.columns = {"t_us", "population"};
  t.comments = {"transition clock"};
  t.add_row({0.0, 0.1});
  t.add_row({1.25, 0.123456789012345678});
  std::stringstream ss;
  write_table(ss, t);
  EXPECT_EQ(read_table(ss), t);
  EXPECT_EQ(t.column("population")[1], 0.123456789012345678);
  EXPECT_THROW(t.column("none"), InvalidArgument);
  EXPECT_THROW(t.add_row({1.0}), InvalidArgument);
}

TEST(Table, AcceptsCommonSeparators) {
  std::stringstream ss("# columns: a b c\n1,2,3\n4 5\t6\n\n");
  const auto t = read_table(ss);
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[1][2], 6.0);
}

void expect_table_error(const std::string& text, long long line) {
  std::stringstream ss(text);
  try {
    read_table(ss);
    FAIL() << "accepted";
  } catch (const TableFormatError& e) {
    EXPECT_EQ(e.line(), line) << e.what();
  }
}

TEST(Table, MalformedInputNamesTheLine) {
  expect_table_error("# columns: a b\n1 2\n3\n", 3);
  expect_table_error("# columns: a b\n1 x\n", 2);
  expect_table_error("1 2\n# columns: a b\n", 2);
  expect_table_error("# columns: a b\n1 2 3\n", 2);
}

TEST(Report, TextAndJsonForms) {
  Report r;
  r.add("fidelity", 0.93456, 3, "measured 0.93");
  r.add_count("shots", 1000);
  r.add_text("g2", "undefined");
  const auto text = r.to_text();
  EXPECT_EQ(text.rfind("# qnode report v1\n", 0), 0u);
  EXPECT_NE(text.find("fidelity = 0.935  # measured 0.93"), std::string::npos);
  const auto j = nlohmann::json::parse(r.to_json_line());
  EXPECT_TRUE(j["fidelity"].is_number_float());
  EXPECT_TRUE(j["shots"].is_number_integer());
  EXPECT_EQ(j["g2"], "undefined");
  EXPECT_EQ(r.to_json_line().find('\n'), std::string::npos);
  ASSERT_NE(r.find("shots"), nullptr);
  EXPECT_EQ(r.find("nope"), nullptr);
}

}  // namespace
}  // namespace qnode::io

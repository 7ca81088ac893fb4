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
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "qnode/cli/cli.hpp"
#include "qnode/io/config_file.hpp"
#include "qnode/io/table_io.hpp"
#include "qnode/physics/node_config.hpp"

namespace qnode::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Result {
  int code = 0;
  std::string out;
  std::string err;

  json summary() const {
    std::istringstream in(out);
    std::string line, last;
    while (std::getline(in, line))
      if (!line.empty()) last = line;
    return json::parse(last);
  }
};

Result qnode(std::vector<std::string> args) {
  std::ostringstream out, err;
  Result r;
  r.code = run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("qnode_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
    ::unsetenv(io::kConfigEnvVar);
  }
  void TearDown() override {
    fs::remove_all(dir_);
    ::unsetenv(io::kConfigEnvVar);
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(dir_ / name, std::ios::binary) << text;
    return path(name);
  }
  std::string ideal_config() const {
    io::ConfigFile c;
    c.node = physics::ideal_knobs(c.node);
    c.sequence.optimizer_shots = 100;
    return write("ideal.ini", io::serialize_config(c));
  }

  fs::path dir_;
};

TEST_F(Cli, UsageErrorsExitOneWithJsonSummary) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {}, {"bogus"}, {"simulate", "entanglement"}, {"analyze", "budget", "--nope"},
           {"--threads", "0", "config"}, {"simulate", "entanglement", "--qwp", "3", "--out", "x"}}) {
    const auto r = qnode(args);
    EXPECT_EQ(r.code, usage) << r.out;
    EXPECT_EQ(r.summary()["error"], "usage");
    EXPECT_EQ(r.summary()["exit_code"], 1);
  }
}

TEST_F(Cli, HelpExitsZero) {
  const auto r = qnode({"--help"});
  EXPECT_EQ(r.code, ok);
  EXPECT_NE(r.out.find("simulate"), std::string::npos);
}

TEST_F(Cli, BadConfigExitsTwoWithPosition) {
  const auto cfg = write("bad.ini", "[node]\neta_fiber = 0.05\nmystery = 1\n");
  const auto r = qnode({"--config", cfg, "config"});
  EXPECT_EQ(r.code, config_error);
  EXPECT_EQ(r.summary()["error"], "config");
  EXPECT_NE(r.summary()["message"].get<std::string>().find("3:1"), std::string::npos);
}

TEST_F(Cli, MissingFilesExitThree) {
  EXPECT_EQ(qnode({"--config", path("none.ini"), "config"}).code, io_error);
  EXPECT_EQ(qnode({"analyze", "g2", path("none.jsonl")}).code, io_error);
  EXPECT_EQ(qnode({"fit", "rabi", path("none.tsv")}).code, io_error);
  const auto r = qnode({"simulate", "readout", "--shots", "10", "--out", path("no/such/dir/t.tsv")});
  EXPECT_EQ(r.code, io_error);
  EXPECT_EQ(r.summary()["error"], "io");
}

TEST_F(Cli, MalformedInputsExitFour) {
  const auto log = write("bad.jsonl", "{\"kind\":\"header\"\n");
  auto r = qnode({"analyze", "g2", log});
  EXPECT_EQ(r.code, format_error);
  EXPECT_EQ(r.summary()["error"], "format");
  const auto table = write("bad.tsv", "# columns: t_us population\n1 0.5\n2 oops\n");
  r = qnode({"fit", "rabi", table});
  EXPECT_EQ(r.code, format_error);
  EXPECT_NE(r.summary()["message"].get<std::string>().find("line 3"), std::string::npos);
}

TEST_F(Cli, EstimatorFailureExitsFive) {
  const auto table = write("few.tsv", "# columns: t_us population\n0 0\n1 1\n2 0\n");
  const auto r = qnode({"fit", "rabi", table});
  EXPECT_EQ(r.code, estimator_failure);
  EXPECT_EQ(r.summary()["error"], "estimator");
}

TEST_F(Cli, ConfigFromEnvironmentAndSeedOverride) {
  const auto cfg = write("env.ini", "[node]\nspcm_qe = 0.5\n[sequence]\nseed = 42\n");
  ::setenv(io::kConfigEnvVar, cfg.c_str(), 1);
  auto r = qnode({"config"});
  ASSERT_EQ(r.code, ok) << r.err;
  EXPECT_NE(r.out.find("spcm_qe = 0.5"), std::string::npos);
  EXPECT_NE(r.out.find("seed = 42"), std::string::npos);
  r = qnode({"--seed", "7", "config"});
  EXPECT_NE(r.out.find("seed = 7"), std::string::npos);
  // An explicit --config wins over the environment.
  r = qnode({"--config", ideal_config(), "config"});
  EXPECT_EQ(r.out.find("spcm_qe = 0.5"), std::string::npos);
}

TEST_F(Cli, ReferenceConfigRoundTrips) {
  const auto r = qnode({"config", "--reference", "--out", path("ref.ini")});
  ASSERT_EQ(r.code, ok);
  EXPECT_EQ(io::load_config(path("ref.ini")), io::ConfigFile{});
  EXPECT_EQ(qnode({"--config", path("ref.ini"), "config"}).code, ok);
}

TEST_F(Cli, SimulationIsByteIdenticalOnRerun) {
  const std::vector<std::string> base{"--seed", "3", "simulate", "entanglement", "--shots", "80",
                                      "--qwp", "10", "--hwp", "20", "--out"};
  auto a = base;
  a.push_back(path("a.jsonl"));
  auto b = base;
  b.push_back(path("b.jsonl"));
  b.insert(b.begin(), {"--threads", "3"});
  const auto ra = qnode(a);
  ASSERT_EQ(ra.code, ok) << ra.err;
  ASSERT_EQ(qnode(b).code, ok);
  EXPECT_EQ(slurp(path("a.jsonl")), slurp(path("b.jsonl")));
  EXPECT_EQ(ra.summary()["seed"], 3);
  EXPECT_EQ(ra.summary()["shots"], 80);
  const auto header = json::parse(slurp(path("a.jsonl")).substr(0, slurp(path("a.jsonl")).find('\n')));
  EXPECT_EQ(header["seed"], 3);
}

TEST_F(Cli, IdealKnobsGiveNearUnitFidelity) {
  const auto cfg = ideal_config();
  for (const char* basis : {"z", "x"}) {
    const auto r = qnode({"--config", cfg, "simulate", "entanglement", "--basis", basis, "--shots", "300",
                          "--out", path(std::string(basis) + ".jsonl")});
    ASSERT_EQ(r.code, ok) << r.err;
  }
  const auto r = qnode({"analyze", "fidelity", path("z.jsonl"), path("x.jsonl")});
  ASSERT_EQ(r.code, ok) << r.err;
  EXPECT_GT(r.summary()["fidelity_lower_bound"].get<double>(), 0.98);
  // The bases must not be swapped.
  EXPECT_EQ(qnode({"analyze", "fidelity", path("x.jsonl"), path("z.jsonl")}).code, usage);
}

TEST_F(Cli, ReferenceBudget) {
  const auto r = qnode({"analyze", "budget"});
  ASSERT_EQ(r.code, ok);
  EXPECT_NEAR(r.summary()["infidelity"].get<double>(), 0.071, 1e-12);
  EXPECT_NEAR(r.summary()["infidelity_sigma"].get<double>(), 0.0702, 1e-4);
  const auto table = write("b.tsv", "# columns: infidelity uncertainty upper_bound\n0.05 0.07 0\n0.01 0 1\n");
  const auto t = qnode({"analyze", "budget", "--table", table});
  ASSERT_EQ(t.code, ok) << t.err;
  EXPECT_NEAR(t.summary()["infidelity"].get<double>(), 0.06, 1e-12);
}

TEST_F(Cli, G2PipelineAndHistogramFit) {
  auto r = qnode({"simulate", "g2", "--cycles", "200000", "--out", path("g2.jsonl"), "--histogram",
                  path("hist.tsv")});
  ASSERT_EQ(r.code, ok) << r.err;
  r = qnode({"analyze", "g2", path("g2.jsonl")});
  ASSERT_EQ(r.code, ok) << r.err;
  EXPECT_LT(r.summary()["g2"].get<double>(), 0.1);
  r = qnode({"fit", "decay", path("hist.tsv"), "--curve", path("curve.tsv")});
  ASSERT_EQ(r.code, ok) << r.err;
  const auto curve = io::read_table_file(path("curve.tsv"));
  EXPECT_EQ(curve.rows.size(), 500u);
}

TEST_F(Cli, RabiTableFitsConfiguredRate) {
  auto r = qnode({"simulate", "rabi", "--shots", "200", "--out", path("rabi.tsv")});
  ASSERT_EQ(r.code, ok) << r.err;
  r = qnode({"fit", "rabi", path("rabi.tsv"), "--residuals", path("res.tsv")});
  ASSERT_EQ(r.code, ok) << r.err;
  EXPECT_TRUE(r.summary()["converged"].get<bool>());
  EXPECT_EQ(io::read_table_file(path("res.tsv")).rows.size(), 80u);
}

TEST_F(Cli, IdealReportIsNearPerfect) {
  const auto r = qnode({"--config", ideal_config(), "report", "--out", path("report.txt")});
  ASSERT_EQ(r.code, ok) << r.err;
  const auto j = r.summary();
  EXPECT_GT(j["fidelity_lower_bound"].get<double>(), 0.98);
  EXPECT_NEAR(j["budget_infidelity"].get<double>(), 1 - physics::NodeConfig{}.fluor_readout_fidelity, 1e-9);
  EXPECT_EQ(slurp(path("report.txt")).rfind("# qnode report v1", 0), 0u);
  const auto again = qnode({"--config", ideal_config(), "report"});
  EXPECT_EQ(again.summary(), j);
}

}  // namespace
}  // namespace qnode::cli

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
#include <sys/resource.h>

#include <istream>
#include <random>
#include <streambuf>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "qnode/estimators/fits.hpp"
#include "qnode/estimators/g2.hpp"
#include "qnode/io/log_io.hpp"
#include "qnode/physics/emission.hpp"
#include "qnode/physics/readout.hpp"
#include "qnode/quantum/fidelity.hpp"
#include "qnode/sequence/engine.hpp"

namespace {

using namespace qnode;

void BM_ExcitationCycle(benchmark::State& state) {
  const physics::NodeConfig c;
  Rng rng(1);
  for (auto _ : state)
    benchmark::DoNotOptimize(physics::sample_excitation_cycle(physics::optical_pump(rng, c), c, rng));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ExcitationCycle);

void BM_EntanglementShots(benchmark::State& state) {
  sequence::SequenceSpec s;
  s.kind = sequence::ExperimentKind::entanglement;
  s.budget = state.range(0);
  s.angles = sequence::WaveplateAngles{20.0, 10.0};
  const physics::NodeConfig c;
  for (auto _ : state) benchmark::DoNotOptimize(sequence::run_entanglement(s, c));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EntanglementShots)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_G2Cycles(benchmark::State& state) {
  sequence::SequenceSpec s;
  s.kind = sequence::ExperimentKind::g2;
  s.budget = state.range(0);
  const physics::NodeConfig c;
  for (auto _ : state) benchmark::DoNotOptimize(sequence::run_g2(s, c));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_G2Cycles)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

// Serves a header followed by n click records, one line at a time, so the
// reader sees a long log that never exists in memory.
class SyntheticLog : public std::streambuf {
 public:
  SyntheticLog(std::string header, std::int64_t n) : n_(n) { load(std::move(header) + '\n'); }

 protected:
  int_type underflow() override {
    if (gptr() < egptr()) return traits_type::to_int_type(*gptr());
    if (i_ >= n_) return traits_type::eof();
    sequence::ClickRecord c;
    c.cycle = i_ / 2;
    c.attempt = 1 + static_cast<int>(c.cycle % 5);
    c.channel = 1 + static_cast<int>((i_ / 3) % 2);
    c.time_ns = 40 + i_ % 100;
    c.origin = i_ % 7 ? sequence::ClickOrigin::photon : sequence::ClickOrigin::dark;
    ++i_;
    load(io::record_to_line(c) + '\n');
    return traits_type::to_int_type(*gptr());
  }

 private:
  void load(std::string s) {
    line_ = std::move(s);
    setg(line_.data(), line_.data(), line_.data() + line_.size());
  }
  std::string line_;
  std::int64_t n_;
  std::int64_t i_ = 0;
};

void BM_StreamingG2(benchmark::State& state) {
  sequence::SequenceSpec s;
  s.kind = sequence::ExperimentKind::g2;
  s.budget = 1;
  const std::string header = io::header_to_line(sequence::run_g2(s, physics::NodeConfig{}).header);
  for (auto _ : state) {
    SyntheticLog buf(header, state.range(0));
    std::istream in(&buf);
    io::LogReader reader(in);
    estimators::G2Accumulator acc;
    sequence::Record r;
    while (reader.next(r)) acc.add(r);
    benchmark::DoNotOptimize(acc.counts());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
  rusage u{};
  getrusage(RUSAGE_SELF, &u);
  state.counters["max_rss_MiB"] = double(u.ru_maxrss) / 1024.0;
}
BENCHMARK(BM_StreamingG2)->Arg(100'000)->Arg(10'000'000)->Iterations(1)->Unit(benchmark::kSecond);

void BM_DecayFit(benchmark::State& state) {
  const physics::NodeConfig c;
  Rng rng(2);
  std::vector<double> t(100'000);
  for (double& x : t) x = std::round(physics::sample_emission_time(rng, c));
  const auto h = estimators::make_histogram(t, -0.5, 1.0, 300);
  for (auto _ : state) benchmark::DoNotOptimize(estimators::fit_decay_histogram(h));
}
BENCHMARK(BM_DecayFit)->Unit(benchmark::kMillisecond);

void BM_FidelityLowerBound(benchmark::State& state) {
  quantum::DiagonalTomogram z, x;
  z.p = {0.46, 0.03, 0.04, 0.47};
  z.sigma = {0.01, 0.01, 0.01, 0.01};
  x = z;
  for (auto _ : state) benchmark::DoNotOptimize(quantum::fidelity_lower_bound(z, x));
}
BENCHMARK(BM_FidelityLowerBound);

void BM_ReadoutModel(benchmark::State& state) {
  const physics::NodeConfig c;
  for (auto _ : state) benchmark::DoNotOptimize(physics::readout_model(c));
}
BENCHMARK(BM_ReadoutModel)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();

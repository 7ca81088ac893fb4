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
#include "qnode/sequence/scans.hpp"

#include <cmath>

#include "qnode/error.hpp"
#include "qnode/estimators/fits.hpp"
#include "qnode/sequence/engine.hpp"
#include "shot_model.hpp"

namespace qnode::sequence {

using physics::NodeConfig;

namespace {

ScanTable expected_scan(const std::vector<detail::Trajectory>& trajectories, const NodeConfig& c,
                        const quantum::Mat2& fiber, quantum::MeasurementBasis basis, double alpha_deg,
                        const std::vector<double>& grid) {
  ScanTable table;
  table.basis = basis;
  table.alpha_deg = alpha_deg;
  for (double beta : grid) {
    const auto m = detail::make_measurement(
        c, fiber, detail::with_setting_errors({alpha_deg, beta}, c), basis);
    std::int64_t valid = 0;
    auto sum = detail::expected_sum(trajectories, m, c, &valid);
    const double total = sum[0] + sum[1] + sum[2] + sum[3];
    if (total <= 0.0) throw EstimatorError("no valid shots at scan point");
    ScanRow row;
    row.beta_deg = beta;
    row.shots = valid;
    for (std::size_t k = 0; k < 4; ++k) row.p[k] = sum[k] / total;
    table.rows.push_back(row);
  }
  return table;
}

std::vector<double> search_grid() { return linear_grid(0.0, 85.0, 18); }

}  // namespace

ScanTable scan_waveplates(const SequenceSpec& spec, const NodeConfig& config, double alpha_deg) {
  spec.validate();
  config.validate();
  if (spec.grid.empty()) throw InvalidArgument("waveplate scan needs an HWP grid");
  const quantum::Mat2 fiber = resolve_fiber(spec);
  if (spec.sampling == Sampling::expected) {
    const auto traj = detail::sample_trajectories(config, spec.seed, spec.budget, spec.threads);
    return expected_scan(traj, config, fiber, spec.basis, alpha_deg, spec.grid);
  }

  ScanTable table;
  table.basis = spec.basis;
  table.alpha_deg = alpha_deg;
  for (double beta : spec.grid) {
    const WaveplateAngles commanded{alpha_deg, beta};
    const auto m = detail::make_measurement(config, fiber, detail::with_setting_errors(commanded, config),
                                            spec.basis);
    std::vector<std::array<std::int64_t, 4>> counts(static_cast<std::size_t>(spec.budget));
    detail::parallel_for(spec.budget, spec.threads, [&](std::int64_t i) {
      Rng rng = make_stream(spec.seed, StreamPurpose::shot, static_cast<std::uint64_t>(i));
      const auto t = detail::sample_trajectory(config, rng);
      const auto s = detail::sample_measurement(t, m, config, rng, i, commanded).summary;
      auto& c = counts[static_cast<std::size_t>(i)];
      if (!s.atom_survived || s.multi_photon || !s.photon || !s.atom_up) return;
      const int nu = *s.photon == PhotonOutcome::h ? 0 : 1;
      ++c[static_cast<std::size_t>(*s.atom_up ? nu : 2 + nu)];
    });
    ScanRow row;
    row.beta_deg = beta;
    std::array<std::int64_t, 4> n{};
    for (const auto& c : counts)
      for (std::size_t k = 0; k < 4; ++k) n[k] += c[k];
    row.shots = n[0] + n[1] + n[2] + n[3];
    if (row.shots == 0) throw EstimatorError("no valid shots at scan point");
    for (std::size_t k = 0; k < 4; ++k) row.p[k] = double(n[k]) / double(row.shots);
    table.rows.push_back(row);
  }
  return table;
}

estimators::FitResult fit_scan_parity(const ScanTable& table) {
  std::vector<double> beta, even;
  for (const auto& r : table.rows) {
    beta.push_back(r.beta_deg);
    even.push_back(r.even_parity());
  }
  return estimators::fit_parity(beta, even);
}

AngleSearch optimize_angles(const SequenceSpec& spec, const NodeConfig& config) {
  spec.validate();
  config.validate();
  NodeConfig c = config;
  c.qwp_angle_error_deg = 0.0;
  c.hwp_angle_error_deg = 0.0;
  const quantum::Mat2 fiber = resolve_fiber(spec);
  const std::uint64_t seed = stream_seed(spec.seed, StreamPurpose::optimizer, 0);
  const auto traj = detail::sample_trajectories(c, seed, spec.optimizer_shots, spec.threads);
  const auto grid = search_grid();

  AngleSearch best;
  bool have = false;
  auto consider = [&](double alpha) {
    const auto fit = fit_scan_parity(expected_scan(traj, c, fiber, spec.basis, alpha, grid));
    const double amplitude = fit.value("visibility") * fit.value("offset");
    if (!have || amplitude > best.amplitude + 1e-12) {
      have = true;
      best.amplitude = amplitude;
      best.best = {alpha, fit.value("phase_deg") / 4.0};
    }
  };
  for (int k = 0; k < 36; ++k) consider(5.0 * k);
  const double coarse = best.best.qwp_deg;
  for (int d = -5; d <= 5; ++d) {
    if (d == 0) continue;
    consider(std::fmod(coarse + d + 180.0, 180.0));
  }
  return best;
}

}  // namespace qnode::sequence

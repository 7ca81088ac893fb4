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
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "qnode/error.hpp"
#include "qnode/estimators/budget.hpp"
#include "qnode/estimators/fits.hpp"
#include "qnode/estimators/g2.hpp"
#include "qnode/estimators/least_squares.hpp"
#include "qnode/estimators/readout.hpp"
#include "qnode/estimators/tomography.hpp"
#include "qnode/physics/emission.hpp"
#include "qnode/quantum/fidelity.hpp"
#include "qnode/sequence/event_log.hpp"

namespace qnode::estimators {
namespace {

constexpr double kPi = std::numbers::pi;
using quantum::DiagonalTomogram;

TEST(LeastSquares, LinearBasisRecoversPolynomial) {
  std::vector<double> x, y;
  for (int i = 0; i < 20; ++i) {
    x.push_back(i * 0.3);
    y.push_back(2.0 - 0.5 * x.back() + 0.25 * x.back() * x.back());
  }
  const auto c = linear_least_squares(
      x, y, {}, {[](double) { return 1.0; }, [](double t) { return t; }, [](double t) { return t * t; }});
  EXPECT_NEAR(c[0], 2.0, 1e-10);
  EXPECT_NEAR(c[1], -0.5, 1e-10);
  EXPECT_NEAR(c[2], 0.25, 1e-10);
}

TEST(LeastSquares, LevenbergMarquardtFindsExactExponential) {
  std::vector<double> x, y;
  for (int i = 0; i < 40; ++i) {
    x.push_back(i * 0.25);
    y.push_back(3.0 * std::exp(-x.back() / 2.0) + 1.0);
  }
  const Model m = [](double t, std::span<const double> p) { return p[0] * std::exp(-t / p[1]) + p[2]; };
  const auto r = levenberg_marquardt(x, y, {}, m, {1.0, 5.0, 0.0}, {"a", "tau", "c"});
  ASSERT_TRUE(r.converged);
  EXPECT_GT(r.iterations, 0);
  EXPECT_NEAR(r.value("a"), 3.0, 1e-6);
  EXPECT_NEAR(r.value("tau"), 2.0, 1e-6);
  EXPECT_NEAR(r.value("c"), 1.0, 1e-6);
  EXPECT_EQ(r.dof, 37);
  EXPECT_LT(r.rss, 1e-12);
  EXPECT_THROW(r.value("missing"), InvalidArgument);
}

TEST(LeastSquares, ErrorsMatchLinearRegressionFormula) {
  // Straight line with known noise: sigma of the slope is s / sqrt(Sxx).
  std::mt19937_64 rng(3);
  std::normal_distribution<double> noise(0.0, 0.1);
  std::vector<double> x, y;
  for (int i = 0; i < 50; ++i) {
    x.push_back(i);
    y.push_back(0.2 * i + 1.0 + noise(rng));
  }
  const Model m = [](double t, std::span<const double> p) { return p[0] * t + p[1]; };
  const auto r = levenberg_marquardt(x, y, {}, m, {0.0, 0.0}, {"slope", "icpt"});
  double mx = 0, sxx = 0;
  for (double v : x) mx += v / 50;
  for (double v : x) sxx += (v - mx) * (v - mx);
  const double s = std::sqrt(r.rss / r.dof);
  EXPECT_NEAR(r.error("slope"), s / std::sqrt(sxx), 1e-6);
}

TEST(LeastSquares, BoundsAreRespected) {
  std::vector<double> x{0, 1, 2, 3, 4}, y{-1, -1, -1, -1, -1};
  const Model m = [](double, std::span<const double> p) { return p[0]; };
  const auto r = levenberg_marquardt(x, y, {}, m, {1.0}, {"c"}, {0.0}, {2.0});
  EXPECT_GE(r.value("c"), 0.0);
  EXPECT_NEAR(r.value("c"), 0.0, 1e-9);
}

TEST(DecayFit, RecoversLifetimeAndPulseWidth) {
  physics::NodeConfig c;
  Rng rng(21);
  std::vector<double> t;
  for (int i = 0; i < 100000; ++i) t.push_back(std::round(physics::sample_emission_time(rng, c)));
  const auto h = make_histogram(t, -0.5, 1.0, 250);
  const auto r = fit_decay_histogram(h);
  ASSERT_TRUE(r.converged);
  EXPECT_NEAR(r.value("tau"), 26.4, 4 * r.error("tau"));
  EXPECT_NEAR(r.value("fwhm"), 18.7, 4 * r.error("fwhm"));
  EXPECT_LT(r.error("tau"), 0.5);
}

TEST(DecayFit, NoiselessBinsAreExact) {
  const std::vector<double> p{40.0, 18.7, 26.4, 5000.0};
  Histogram h{-0.5, 2.0, {}};
  for (int i = 0; i < 120; ++i) h.counts.push_back(decay_bin_counts(h.start + i * 2.0, 2.0, p));
  const auto r = fit_decay_histogram(h);
  EXPECT_NEAR(r.value("tau"), 26.4, 1e-4);
  EXPECT_NEAR(r.value("fwhm"), 18.7, 1e-4);
  EXPECT_NEAR(r.value("t0"), 40.0, 1e-4);
}

TEST(DecayFit, TooFewBinsIsAnEstimatorError) {
  Histogram h{0.0, 1.0, std::vector<double>(20, 0.0)};
  h.counts[3] = 5;
  EXPECT_THROW(fit_decay_histogram(h), EstimatorError);
}

TEST(Periodogram, FindsSinusoidFrequency) {
  std::vector<double> x, y;
  for (int i = 0; i < 100; ++i) {
    x.push_back(i * 0.1);
    y.push_back(std::sin(2 * kPi * 1.37 * x.back() + 0.4));
  }
  EXPECT_NEAR(periodogram_peak(x, y, 0.1, 5.0, 5000), 1.37, 0.01);
}

TEST(RamseyFit, NoiselessDataRecoversParameters) {
  const std::vector<double> p{300.0, 2 * kPi * 0.01, 0.3, 0.45, 0.5};
  std::vector<double> t, y;
  for (int i = 0; i < 80; ++i) {
    t.push_back(i * 10.0);
    y.push_back(ramsey_model(t.back(), p));
  }
  const auto r = fit_ramsey(t, y);
  ASSERT_TRUE(r.converged);
  EXPECT_FALSE(r.lower_bound_only);
  EXPECT_NEAR(r.value("t2star"), 300.0, 1e-4);
  EXPECT_NEAR(r.value("omega"), p[1], 1e-8);
  EXPECT_NEAR(r.value("amplitude"), 0.45, 1e-6);
}

TEST(RamseyFit, ShortScanOnlyBoundsT2) {
  const std::vector<double> p{1e5, 2 * kPi * 0.05, 0.0, 0.5, 0.5};
  std::vector<double> t, y;
  for (int i = 0; i < 60; ++i) {
    t.push_back(i * 2.0);
    y.push_back(ramsey_model(t.back(), p));
  }
  const auto r = fit_ramsey(t, y);
  EXPECT_TRUE(r.lower_bound_only);
  EXPECT_FALSE(r.note.empty());
  EXPECT_GE(r.value("t2star"), 3.0 * 118.0 - 1e-9);
}

TEST(RabiFit, NoiselessDataRecoversRate) {
  const std::vector<double> p{0.118, 0.97, 0.01};
  std::vector<double> t, y;
  for (int i = 0; i < 80; ++i) {
    t.push_back(0.5 + i * 0.5);
    y.push_back(rabi_model(t.back(), p));
  }
  const auto r = fit_rabi(t, y);
  ASSERT_TRUE(r.converged);
  EXPECT_NEAR(r.value("rabi_rate"), 0.118, 1e-7);
  EXPECT_NEAR(r.value("contrast"), 0.97, 1e-6);
}

TEST(ParityFit, ExactSinusoid) {
  const std::vector<double> p{0.9, 30.0, 0.5};
  std::vector<double> b, y, b2, y2;
  for (int i = 0; i <= 18; ++i) {
    b.push_back(i * 5.0);
    y.push_back(parity_model(b.back(), p));
    b2.push_back(200.0 + i * 5.0);  // beyond one period
    y2.push_back(parity_model(b2.back(), p));
  }
  const auto r = fit_parity(b, y);
  EXPECT_NEAR(r.value("visibility"), 0.9, 1e-9);
  EXPECT_NEAR(r.value("phase_deg"), 30.0, 1e-7);
  EXPECT_NEAR(fit_parity(b2, y2).value("visibility"), 0.9, 1e-9);
}

TEST(ParityFit, BinomialNoiseRecoversVisibility) {
  // Parametric bootstrap: 200 shots per point.
  const std::vector<double> p{0.9, 0.0, 0.5};
  std::mt19937_64 rng(5);
  double worst = 0.0;
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<double> b, y;
    for (int i = 0; i <= 36; ++i) {
      b.push_back(i * 5.0);
      std::binomial_distribution<int> k(200, parity_model(b.back(), p));
      y.push_back(k(rng) / 200.0);
    }
    worst = std::max(worst, std::abs(fit_parity(b, y).value("visibility") - 0.9));
  }
  EXPECT_LT(worst, 0.02 * 2);
}

TEST(ParityFit, NeedsHalfAPeriod) {
  std::vector<double> b{0, 10, 20, 30}, y{1, 0.8, 0.4, 0.1};
  EXPECT_THROW(fit_parity(b, y), EstimatorError);
}

sequence::ClickRecord click(std::int64_t cycle, int attempt, int channel, std::int64_t t = 50) {
  sequence::ClickRecord c;
  c.cycle = cycle;
  c.attempt = attempt;
  c.channel = channel;
  c.time_ns = t;
  return c;
}

TEST(G2, FormulaAndUncertainty) {
  const auto e = g2_from_counts({1000000, 5000, 4000, 20});
  EXPECT_NEAR(e.value, 20.0 * 1e6 / (5000.0 * 4000.0), 1e-12);
  EXPECT_NEAR(e.uncertainty, e.value * std::sqrt(1 / 20.0 + 1 / 5000.0 + 1 / 4000.0), 1e-12);
  const auto zero = g2_from_counts({1000000, 5000, 4000, 0});
  EXPECT_EQ(zero.value, 0.0);
  EXPECT_NEAR(zero.uncertainty, 1e6 / (5000.0 * 4000.0), 1e-15);
  EXPECT_THROW(g2_from_counts({100, 0, 4, 0}), EstimatorError);
  EXPECT_THROW(g2_from_counts({0, 4, 4, 0}), EstimatorError);
}

TEST(G2, AccumulatorCountsGatesNotClicks) {
  G2Accumulator acc(200.0);
  acc.add(click(0, 1, 1));
  acc.add(click(0, 1, 1, 80));  // same gate, same channel
  acc.add(click(0, 2, 2));
  acc.add(click(1, 1, 1));
  acc.add(click(1, 1, 2));      // coincidence
  acc.add(click(2, 1, 2, 250)); // outside the window
  acc.set_gates(50);
  const auto c = acc.counts();
  EXPECT_EQ(c.singles1, 2);
  EXPECT_EQ(c.singles2, 2);
  EXPECT_EQ(c.coincidences, 1);
  EXPECT_EQ(c.gates, 50);
  EXPECT_NEAR(g2_from_counts(c).value, 50.0 / 4.0, 1e-12);
}

TEST(G2, OutOfOrderClicksAreRejected) {
  G2Accumulator acc;
  acc.add(click(3, 1, 1));
  EXPECT_THROW(acc.add(click(2, 1, 1)), EstimatorError);
  EXPECT_THROW(G2Accumulator(0.0), InvalidArgument);
}

TEST(G2, IndependentPoissonChannelsGiveOne) {
  // Coherent light splits into independent Poisson streams.
  std::mt19937_64 rng(9);
  std::poisson_distribution<int> n1(0.1), n2(0.1);
  G2Accumulator acc;
  const int gates = 400000;
  for (int g = 0; g < gates; ++g) {
    if (n1(rng) > 0) acc.add(click(g, 1, 1));
    if (n2(rng) > 0) acc.add(click(g, 1, 2));
  }
  acc.set_gates(gates);
  const auto e = g2_from_counts(acc.counts());
  EXPECT_NEAR(e.value, 1.0, 4 * e.uncertainty);
}

DiagonalTomogram tomo(std::array<double, 4> p) {
  DiagonalTomogram t;
  t.p = p;
  t.sigma = {0.01, 0.01, 0.01, 0.01};
  return t;
}

TEST(Readout, ForwardThenInverseIsIdentity) {
  const auto t = tomo({0.46, 0.03, 0.04, 0.47});
  for (double f : {0.6, 0.9, 0.95, 1.0}) {
    const auto back = correct_for_readout(forward_confusion(t, f), f);
    for (int k = 0; k < 4; ++k) EXPECT_NEAR(back.p[k], t.p[k], 1e-12);
  }
  const auto same = correct_for_readout(t, 1.0);
  for (int k = 0; k < 4; ++k) EXPECT_DOUBLE_EQ(same.p[k], t.p[k]);
  EXPECT_THROW(correct_for_readout(t, 0.5), InvalidArgument);
}

TEST(Readout, UncorrelatedStaysUncorrelated) {
  const auto t = correct_for_readout(tomo({0.25, 0.25, 0.25, 0.25}), 0.9);
  for (double p : t.p) EXPECT_NEAR(p, 0.25, 1e-12);
}

TEST(Readout, ScalarCorrectionInvertsOutcomeFlipChannel) {
  // Oracle: a rank-two Bell-diagonal state whose admixture is the image of
  // |psi+> under an atom outcome flip. The flip channel then maps the target
  // fidelity F to 1/2 + (2f - 1)(F - 1/2), computed here with plain matrices.
  using C = std::complex<double>;
  Eigen::Vector4cd psi(0, 1, 1, 0);
  psi /= std::sqrt(2.0);
  // Y on the atom (first factor), identity on the photon.
  Eigen::Matrix4cd yi = Eigen::Matrix4cd::Zero();
  yi.block<2, 2>(0, 2) = C(0, -1) * Eigen::Matrix2cd::Identity();
  yi.block<2, 2>(2, 0) = C(0, 1) * Eigen::Matrix2cd::Identity();
  const double f_true = 0.5 + 0.43 / 0.9;
  const Eigen::Vector4cd flipped = yi * psi;
  Eigen::Matrix4cd rho = f_true * psi * psi.adjoint() + (1 - f_true) * flipped * flipped.adjoint();
  const double f_meas = 0.95;
  rho = f_meas * rho + (1 - f_meas) * yi * rho * yi.adjoint();
  const double raw = (psi.adjoint() * rho * psi)(0, 0).real();
  EXPECT_NEAR(raw, 0.93, 1e-12);
  const auto corrected = correct_for_readout(quantum::Estimate{raw, 0.05}, f_meas);
  EXPECT_NEAR(corrected.value, f_true, 1e-12);
  EXPECT_NEAR(corrected.value, 0.9778, 1e-4);
  EXPECT_NEAR(corrected.uncertainty, 0.05 / 0.9, 1e-12);
  EXPECT_DOUBLE_EQ(correct_for_readout(quantum::Estimate{0.93, 0.05}, 1.0).value, 0.93);
}

TEST(Readout, ThresholdMatchesDirectPoissonSearch) {
  // Brute force over the Poisson pmf, summed term by term.
  auto pmf_below = [](double mu, int k) {
    double term = std::exp(-mu), sum = 0.0;
    for (int j = 0; j < k; ++j) {
      sum += term;
      term *= mu / (j + 1);
    }
    return sum;
  };
  for (auto [atom, bg] : {std::pair{200.0, 80.0}, {50.0, 5.0}, {20.0, 10.0}}) {
    int best_k = 0;
    double best = 2.0;
    for (int k = 1; k < 400; ++k) {
      const double err = pmf_below(atom, k) + (1.0 - pmf_below(bg, k));
      if (err < best - 1e-15) {
        best = err;
        best_k = k;
      }
    }
    const auto th = readout_threshold(atom, bg);
    EXPECT_EQ(th.threshold, best_k) << atom << " " << bg;
    EXPECT_NEAR(th.p_miss + th.p_false, best, 1e-12);
    EXPECT_NEAR(th.fidelity, 1 - best / 2, 1e-12);
  }
  EXPECT_EQ(readout_threshold(200.0, 80.0).threshold, 131);
  EXPECT_THROW(readout_threshold(10.0, 0.0), InvalidArgument);
}

TEST(Readout, MeasuredFidelityFromCounts) {
  const std::vector<int> present{150, 160, 120, 170, 140}, absent{80, 90, 135, 70};
  const auto m = measure_readout_fidelity(present, absent, 131);
  EXPECT_NEAR(m.p_miss, 0.2, 1e-15);
  EXPECT_NEAR(m.p_false, 0.25, 1e-15);
  EXPECT_NEAR(m.fidelity.value, 0.8, 1e-15);
  EXPECT_NEAR(m.fidelity.uncertainty, std::sqrt(0.2 * 0.8 / 5), 1e-15);
  EXPECT_NEAR(m.balanced.value, 1 - 0.225, 1e-15);
  EXPECT_THROW(measure_readout_fidelity({}, absent, 131), EstimatorError);
}

TEST(Readout, VisibilityPenalty) {
  EXPECT_NEAR(visibility_penalty(Angle::degrees(2.0)), std::cos(4.0 * kPi / 180.0), 1e-15);
  EXPECT_DOUBLE_EQ(visibility_penalty(Angle()), 1.0);
}

TEST(Budget, ReferenceTotals) {
  const auto e = compose_error_budget(reference_budget());
  EXPECT_NEAR(e.value, 0.071, 1e-12);
  EXPECT_NEAR(e.uncertainty, std::hypot(0.07, 0.005), 1e-12);
  EXPECT_NEAR(e.uncertainty, 0.0702, 1e-4);
  // Consistent with the measured infidelity 1 - 0.93.
  EXPECT_LT(std::abs(e.value - 0.07), e.uncertainty);
}

TEST(Budget, TrivialCompositions) {
  EXPECT_EQ(compose_error_budget({}).value, 0.0);
  const auto one = compose_error_budget({{{"x", 0.05, 0.07, false}}});
  EXPECT_DOUBLE_EQ(one.value, 0.05);
  EXPECT_DOUBLE_EQ(one.uncertainty, 0.07);
  EXPECT_THROW(compose_error_budget({{{"x", -0.1, 0.0, false}}}), InvalidArgument);
}

TEST(Budget, ConfigBudgetVanishesForIdealKnobs) {
  physics::NodeConfig c = physics::ideal_knobs({});
  c.fluor_readout_fidelity = 1.0;
  EXPECT_NEAR(compose_error_budget(budget_from_config(c)).value, 0.0, 1e-12);
  const auto def = budget_from_config({});
  EXPECT_NEAR(def.entries.at(0).infidelity, 1 - 0.96 * 0.992 * 0.996, 1e-12);
  EXPECT_NEAR(def.entries.at(4).infidelity, 1 - std::cos(4.0 * kPi / 180.0), 1e-12);
}

}  // namespace
}  // namespace qnode::estimators

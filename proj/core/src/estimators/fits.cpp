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
#include "qnode/estimators/fits.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "qnode/error.hpp"
#include "qnode/physics/emission.hpp"
#include "qnode/units.hpp"

namespace qnode::estimators {
namespace {

constexpr double kPi = std::numbers::pi;

double span_of(std::span<const double> x) { return x.back() - x.front(); }

void require_sorted(std::span<const double> x, std::span<const double> y, std::size_t min_points) {
  if (x.size() != y.size()) throw InvalidArgument("x and y differ in length");
  if (x.size() < min_points)
    throw EstimatorError("need at least " + std::to_string(min_points) + " points");
  for (std::size_t i = 1; i < x.size(); ++i)
    if (!(x[i] > x[i - 1])) throw InvalidArgument("abscissae must be strictly increasing");
}

double wrap_phase(double phi) {
  phi = std::remainder(phi, 2.0 * kPi);
  return phi <= -kPi ? phi + 2.0 * kPi : phi;
}

double median_step(std::span<const double> x) {
  std::vector<double> d;
  for (std::size_t i = 1; i < x.size(); ++i) d.push_back(x[i] - x[i - 1]);
  std::nth_element(d.begin(), d.begin() + d.size() / 2, d.end());
  return d[d.size() / 2];
}

bool better(const FitResult& a, const FitResult& b) {
  if (a.converged != b.converged) return a.converged;
  return a.rss < b.rss;
}

}  // namespace

double Histogram::total() const { return std::accumulate(counts.begin(), counts.end(), 0.0); }

double decay_density(double t, std::span<const double> p) {
  return p[3] * physics::emg_pdf(t, p[0], p[1] / kFwhmPerSigma, p[2]);
}

double decay_bin_counts(double left, double width, std::span<const double> p) {
  const double sigma = p[1] / kFwhmPerSigma;
  return p[3] * (physics::emg_cdf(left + width, p[0], sigma, p[2]) - physics::emg_cdf(left, p[0], sigma, p[2]));
}

double ramsey_model(double t, std::span<const double> p) {
  return p[3] * std::exp(-std::pow(t / p[0], 2)) * std::cos(p[1] * t + p[2]) + p[4];
}

double rabi_model(double t, std::span<const double> p) {
  const double s = std::sin(kPi * p[0] * t);
  return p[2] + p[1] * s * s;
}

double parity_model(double beta_deg, std::span<const double> p) {
  const double rad = kPi / 180.0;
  return p[2] * (1.0 + p[0] * std::cos(4.0 * beta_deg * rad - p[1] * rad));
}

Histogram make_histogram(std::span<const double> samples, double start, double width, int bins) {
  if (!(width > 0.0) || bins <= 0) throw InvalidArgument("histogram needs positive width and bins");
  Histogram h{start, width, std::vector<double>(static_cast<std::size_t>(bins), 0.0)};
  for (double s : samples) {
    const double k = std::floor((s - start) / width);
    if (k >= 0.0 && k < bins) h.counts[static_cast<std::size_t>(k)] += 1.0;
  }
  return h;
}

FitResult fit_decay_histogram(const Histogram& h) {
  const auto nonempty = std::count_if(h.counts.begin(), h.counts.end(), [](double c) { return c > 0; });
  if (nonempty < 10) throw EstimatorError("decay fit needs at least 10 nonempty bins");

  std::vector<double> left(h.counts.size());
  for (std::size_t i = 0; i < left.size(); ++i) left[i] = h.start + static_cast<double>(i) * h.width;
  const double w = h.width;
  const Model model = [w](double x, std::span<const double> p) { return decay_bin_counts(x, w, p); };

  // Moments seed the starts: mean = t0 + tau, var = sigma^2 + tau^2.
  double n = 0.0, mean = 0.0, m2 = 0.0;
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    n += h.counts[i];
    mean += h.counts[i] * h.center(i);
  }
  mean /= n;
  for (std::size_t i = 0; i < h.counts.size(); ++i) m2 += h.counts[i] * std::pow(h.center(i) - mean, 2);
  const double sd = std::sqrt(m2 / n);

  std::vector<double> weights(h.counts.size());
  for (std::size_t i = 0; i < weights.size(); ++i) weights[i] = 1.0 / std::max(h.counts[i], 1.0);

  const std::vector<std::string> names{"t0", "fwhm", "tau", "amplitude"};
  const std::vector<double> lower{h.start - 10.0 * sd, 1e-3 * w, 1e-3 * w, 0.0};
  const std::vector<double> upper{h.start + static_cast<double>(h.counts.size()) * w, 10.0 * sd + w,
                                  10.0 * sd + w, 10.0 * n};

  FitResult best;
  bool have = false;
  for (double frac : {0.3, 0.6, 0.9}) {
    const double tau = frac * sd;
    const double sigma = std::sqrt(std::max(sd * sd - tau * tau, w * w));
    std::vector<double> p0{mean - tau, sigma * kFwhmPerSigma, tau, n};
    FitResult r = levenberg_marquardt(left, h.counts, weights, model, p0, names, lower, upper);
    if (!have || better(r, best)) {
      best = std::move(r);
      have = true;
    }
  }
  // Counting weights from the fitted curve remove the low-count bias of the
  // data-derived weights.
  for (int round = 0; round < 2; ++round) {
    for (std::size_t i = 0; i < weights.size(); ++i)
      weights[i] = 1.0 / std::max(model(left[i], best.values), 1e-3);
    FitResult r = levenberg_marquardt(left, h.counts, weights, model, best.values, names, lower, upper);
    if (r.converged || !best.converged) best = std::move(r);
  }
  return best;
}

double periodogram_peak(std::span<const double> x, std::span<const double> y, double f_min,
                        double f_max, int points) {
  if (x.size() != y.size() || x.size() < 3) throw InvalidArgument("periodogram needs matching data");
  if (!(f_max > f_min) || !(f_min >= 0.0) || points < 2)
    throw InvalidArgument("periodogram needs 0 <= f_min < f_max");
  const double mean = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(y.size());
  double best_f = f_min;
  double best_p = -1.0;
  for (int k = 0; k < points; ++k) {
    const double f = f_min + (f_max - f_min) * k / (points - 1);
    if (f <= 0.0) continue;
    const double om = 2.0 * kPi * f;
    double s2 = 0.0, c2 = 0.0;
    for (double t : x) {
      s2 += std::sin(2.0 * om * t);
      c2 += std::cos(2.0 * om * t);
    }
    const double shift = std::atan2(s2, c2) / (2.0 * om);
    double yc = 0.0, ys = 0.0, cc = 0.0, ss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double c = std::cos(om * (x[i] - shift));
      const double s = std::sin(om * (x[i] - shift));
      yc += (y[i] - mean) * c;
      ys += (y[i] - mean) * s;
      cc += c * c;
      ss += s * s;
    }
    const double power = (cc > 0 ? yc * yc / cc : 0.0) + (ss > 0 ? ys * ys / ss : 0.0);
    if (power > best_p) {
      best_p = power;
      best_f = f;
    }
  }
  return best_f;
}

FitResult fit_ramsey(std::span<const double> t, std::span<const double> y,
                     std::span<const double> weights) {
  require_sorted(t, y, 8);
  const double span = span_of(t);
  const double f_nyq = 0.5 / median_step(t);
  const double f0 = periodogram_peak(t, y, 0.5 / span, f_nyq, 4000);

  const Model model = ramsey_model;
  const std::vector<std::string> names{"t2star", "omega", "phi", "amplitude", "offset"};
  const std::vector<double> lower{1e-3 * span, 0.0, -10.0 * kPi, 0.0, -1e300};
  const std::vector<double> upper{1e3 * span, 4.0 * kPi * f_nyq, 10.0 * kPi, 1e300, 1e300};

  FitResult best;
  bool have = false;
  for (double df : {-0.5, 0.0, 0.5}) {
    const double om = 2.0 * kPi * std::max(f0 + df / span, 0.1 / span);
    for (double t2_frac : {0.3, 1.0, 3.0}) {
      const double t2 = t2_frac * span;
      // For fixed (T2*, omega) the model is linear in the remaining terms.
      const auto c = linear_least_squares(
          t, y, weights,
          {[=](double x) { return std::exp(-std::pow(x / t2, 2)) * std::cos(om * x); },
           [=](double x) { return std::exp(-std::pow(x / t2, 2)) * std::sin(om * x); },
           [](double) { return 1.0; }});
      const double amp = std::hypot(c[0], c[1]);
      const double phi = std::atan2(-c[1], c[0]);
      FitResult r =
          levenberg_marquardt(t, y, weights, model, {t2, om, phi, amp, c[2]}, names, lower, upper);
      if (!have || better(r, best)) {
        best = std::move(r);
        have = true;
      }
    }
  }
  best.values[2] = wrap_phase(best.values[2]);
  if (best.values[0] > 3.0 * span) {
    best.lower_bound_only = true;
    best.note = "scan much shorter than the decay; t2star is a lower bound";
    best.values[0] = 3.0 * span;
  }
  return best;
}

FitResult fit_rabi(std::span<const double> t, std::span<const double> y,
                   std::span<const double> weights) {
  require_sorted(t, y, 8);
  const double span = span_of(t);
  const double f_nyq = 0.5 / median_step(t);
  const double f_pop = periodogram_peak(t, y, 0.5 / span, f_nyq, 4000);

  const Model model = rabi_model;
  const std::vector<std::string> names{"rabi_rate", "contrast", "baseline"};
  FitResult best;
  bool have = false;
  for (double df : {-0.25, 0.0, 0.25}) {
    const double f = std::max(f_pop + df / span, 0.1 / span);
    const auto c = linear_least_squares(
        t, y, weights,
        {[=](double x) { return std::pow(std::sin(kPi * f * x), 2); }, [](double) { return 1.0; }});
    FitResult r = levenberg_marquardt(t, y, weights, model, {f, c[0], c[1]}, names,
                                      {0.0, -1e300, -1e300}, {4.0 * f_nyq, 1e300, 1e300});
    if (!have || better(r, best)) {
      best = std::move(r);
      have = true;
    }
  }
  return best;
}

FitResult fit_parity(std::span<const double> beta_deg, std::span<const double> parity,
                     std::span<const double> weights) {
  require_sorted(beta_deg, parity, 4);
  if (span_of(beta_deg) < 45.0 - 1e-9)
    throw EstimatorError("parity scan must cover half a period of 4 beta (45 deg)");
  const double rad = kPi / 180.0;
  const auto c = linear_least_squares(
      beta_deg, parity, weights,
      {[=](double b) { return std::cos(4.0 * b * rad); }, [=](double b) { return std::sin(4.0 * b * rad); },
       [](double) { return 1.0; }});
  const double offset = c[2];
  if (!(offset > 0.0)) throw EstimatorError("parity offset must be positive");
  const double vis = std::hypot(c[0], c[1]) / offset;
  const double phase = std::atan2(c[1], c[0]) / rad;

  const Model model = parity_model;
  FitResult r = levenberg_marquardt(beta_deg, parity, weights, model, {vis, phase, offset},
                                    {"visibility", "phase_deg", "offset"}, {0.0, -1e300, 0.0}, {});
  double ph = std::fmod(r.values[1], 360.0);
  if (ph < 0.0) ph += 360.0;
  r.values[1] = ph;
  return r;
}

}  // namespace qnode::estimators

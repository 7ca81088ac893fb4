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

#include <span>
#include <vector>

#include "qnode/estimators/least_squares.hpp"

namespace qnode::estimators {

struct Histogram {
  double start = 0.0;
  double width = 1.0;
  std::vector<double> counts;

  double center(std::size_t i) const { return start + (static_cast<double>(i) + 0.5) * width; }
  double total() const;
};

Histogram make_histogram(std::span<const double> samples, double start, double width, int bins);

// Binned exponentially modified Gaussian with Poisson weights.
// Parameters: t0, fwhm, tau, amplitude (expected counts in the full distribution).
FitResult fit_decay_histogram(const Histogram& h);

// A exp(-(t/T2*)^2) cos(omega t + phi) + offset.
// Parameters: t2star, omega, phi, amplitude, offset. When the scan is much
// shorter than the decay, t2star is reported as a lower bound.
FitResult fit_ramsey(std::span<const double> t, std::span<const double> y,
                     std::span<const double> weights = {});

// baseline + contrast * sin^2(pi * rabi_rate * t). Parameters: rabi_rate, contrast, baseline.
FitResult fit_rabi(std::span<const double> t, std::span<const double> y,
                   std::span<const double> weights = {});

// Even-parity fraction vs half-wave-plate angle (degrees):
// offset * (1 + visibility * cos(4 beta - phase)). Parameters: visibility, phase_deg, offset.
FitResult fit_parity(std::span<const double> beta_deg, std::span<const double> parity,
                     std::span<const double> weights = {});

// Model curves in the parameter order of the fits above. decay_density is in
// counts per unit time; decay_bin_counts integrates it over one bin.
double decay_density(double t, std::span<const double> p);
double decay_bin_counts(double left, double width, std::span<const double> p);
double ramsey_model(double t, std::span<const double> p);
double rabi_model(double t, std::span<const double> p);
double parity_model(double beta_deg, std::span<const double> p);

// Frequency (cycles per x unit) maximising the Lomb-Scargle power on [f_min, f_max].
double periodogram_peak(std::span<const double> x, std::span<const double> y, double f_min,
                        double f_max, int points = 2000);

}  // namespace qnode::estimators

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

#include <complex>
#include <span>

#include <Eigen/Dense>

#include "qnode/rng.hpp"
#include "qnode/units.hpp"

namespace qnode::quantum {

using Complex = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Vec2 = Eigen::Vector2cd;

// Photon polarization amplitudes are always expressed in the linear (H, V)
// coordinates. Circular states follow the fixed convention
//   |sigma+> = (|H> - i|V>)/sqrt(2),   |sigma-> = (|H> + i|V>)/sqrt(2).
Vec2 pol_h();
Vec2 pol_v();
Vec2 pol_sigma_plus();
Vec2 pol_sigma_minus();

// Columns are |sigma+>, |sigma-> in (H, V) coordinates.
Mat2 circular_to_linear();

enum class PolLabel { sigma_plus, sigma_minus, h, v };

struct PhotonPol {
  PolLabel label;
  Vec2 amplitudes;  // (H, V) coordinates, unit norm

  static PhotonPol of(PolLabel label);
  bool is_normalized(double tol = 1e-12) const;
};

enum class OpKind { unitary, projector };

// 2x2 operator on the photon polarization: waveplates, fiber, PBS projectors.
class PolarizationOp {
 public:
  static PolarizationOp unitary(const Mat2& m);
  static PolarizationOp projector(const Mat2& m);
  static PolarizationOp identity();

  const Mat2& matrix() const { return m_; }
  OpKind kind() const { return kind_; }

  // True when the matrix satisfies the invariant of its kind.
  bool is_valid(double tol = 1e-12) const;

  PolarizationOp then(const PolarizationOp& next) const;  // next * this

 private:
  PolarizationOp(const Mat2& m, OpKind k) : m_(m), kind_(k) {}
  Mat2 m_;
  OpKind kind_;
};

Mat2 rotation(Angle theta);

// HWP(t) = [[cos 2t, sin 2t], [sin 2t, -cos 2t]]
PolarizationOp jones_hwp(Angle theta);
// QWP(t) = R(t) diag(1, i) R(-t)
PolarizationOp jones_qwp(Angle theta);

// Projector onto |nu><nu| for nu in {H, V}.
PolarizationOp pbs_projector(PolLabel nu);

// Haar-distributed element of U(2).
PolarizationOp haar_random_unitary(Rng& rng);

// Product of a chain applied left to right: chain.back() * ... * chain.front().
Mat2 chain_product(std::span<const PolarizationOp> chain);

bool equal_up_to_phase(const Mat2& a, const Mat2& b, double tol = 1e-12);

}  // namespace qnode::quantum

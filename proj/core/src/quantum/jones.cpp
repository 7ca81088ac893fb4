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
#include "qnode/quantum/jones.hpp"

#include <cmath>
#include <numbers>

#include "qnode/error.hpp"

namespace qnode::quantum {

namespace {
const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;
const Complex kI(0.0, 1.0);
}  // namespace

Vec2 pol_h() { return Vec2(1.0, 0.0); }
Vec2 pol_v() { return Vec2(0.0, 1.0); }
Vec2 pol_sigma_plus() { return Vec2(kInvSqrt2, -kI * kInvSqrt2); }
Vec2 pol_sigma_minus() { return Vec2(kInvSqrt2, kI * kInvSqrt2); }

Mat2 circular_to_linear() {
  Mat2 c;
  c.col(0) = pol_sigma_plus();
  c.col(1) = pol_sigma_minus();
  return c;
}

PhotonPol PhotonPol::of(PolLabel label) {
  switch (label) {
    case PolLabel::sigma_plus: return {label, pol_sigma_plus()};
    case PolLabel::sigma_minus: return {label, pol_sigma_minus()};
    case PolLabel::h: return {label, pol_h()};
    case PolLabel::v: return {label, pol_v()};
  }
  throw InvalidArgument("unknown polarization label");
}

bool PhotonPol::is_normalized(double tol) const {
  return std::abs(amplitudes.squaredNorm() - 1.0) <= tol;
}

PolarizationOp PolarizationOp::unitary(const Mat2& m) {
  PolarizationOp op(m, OpKind::unitary);
  if (!op.is_valid(1e-10)) throw InvalidArgument("polarization operator is not unitary");
  return op;
}

PolarizationOp PolarizationOp::projector(const Mat2& m) {
  PolarizationOp op(m, OpKind::projector);
  if (!op.is_valid(1e-10)) throw InvalidArgument("polarization operator is not a projector");
  return op;
}

PolarizationOp PolarizationOp::identity() { return PolarizationOp(Mat2::Identity(), OpKind::unitary); }

bool PolarizationOp::is_valid(double tol) const {
  if (kind_ == OpKind::unitary) {
    return (m_.adjoint() * m_ - Mat2::Identity()).cwiseAbs().maxCoeff() <= tol;
  }
  return (m_ * m_ - m_).cwiseAbs().maxCoeff() <= tol &&
         (m_.adjoint() - m_).cwiseAbs().maxCoeff() <= tol;
}

PolarizationOp PolarizationOp::then(const PolarizationOp& next) const {
  const OpKind k =
      (kind_ == OpKind::unitary && next.kind_ == OpKind::unitary) ? OpKind::unitary
                                                                  : OpKind::projector;
  return PolarizationOp(next.m_ * m_, k);
}

Mat2 rotation(Angle theta) {
  const double c = std::cos(theta.rad());
  const double s = std::sin(theta.rad());
  Mat2 r;
  r << c, -s, s, c;
  return r;
}

PolarizationOp jones_hwp(Angle theta) {
  const double c = std::cos(2.0 * theta.rad());
  const double s = std::sin(2.0 * theta.rad());
  Mat2 m;
  m << c, s, s, -c;
  return PolarizationOp::unitary(m);
}

PolarizationOp jones_qwp(Angle theta) {
  Mat2 d = Mat2::Zero();
  d(0, 0) = 1.0;
  d(1, 1) = kI;
  return PolarizationOp::unitary(rotation(theta) * d * rotation(-theta));
}

PolarizationOp pbs_projector(PolLabel nu) {
  Vec2 v;
  switch (nu) {
    case PolLabel::h: v = pol_h(); break;
    case PolLabel::v: v = pol_v(); break;
    default: throw InvalidArgument("PBS projects on H or V only");
  }
  return PolarizationOp::projector(v * v.adjoint());
}

PolarizationOp haar_random_unitary(Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Mat2 g;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(r, c) = Complex(re, im);
    }
  }
  Eigen::HouseholderQR<Mat2> qr(g);
  Mat2 q = qr.householderQ();
  const Mat2 r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phase freedom of QR so that the distribution is exactly Haar.
  for (int k = 0; k < 2; ++k) {
    const Complex d = r(k, k);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(k) *= d / mag;
  }
  return PolarizationOp::unitary(q);
}

Mat2 chain_product(std::span<const PolarizationOp> chain) {
  Mat2 w = Mat2::Identity();
  for (const auto& op : chain) w = op.matrix() * w;
  return w;
}

bool equal_up_to_phase(const Mat2& a, const Mat2& b, double tol) {
  // Align the global phase on the largest entry of b.
  Eigen::Index r = 0, c = 0;
  b.cwiseAbs().maxCoeff(&r, &c);
  if (std::abs(a(r, c)) < 1e-300) return (a - b).cwiseAbs().maxCoeff() <= tol;
  const Complex phase = b(r, c) / a(r, c);
  if (std::abs(std::abs(phase) - 1.0) > tol) return false;
  return (a * phase - b).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace qnode::quantum

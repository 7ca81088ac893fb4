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
#include "qnode/quantum/joint_state.hpp"

#include <cmath>

#include "qnode/error.hpp"

namespace qnode::quantum {

JointState::JointState(const Mat4& rho, BasisTag tag) : rho_(rho), tag_(tag) {
  if (!satisfies_invariants(rho_)) {
    throw InvalidArgument("joint state is not a valid density matrix");
  }
  // Hermiticity holds to rounding; make it exact.
  rho_ = 0.5 * (rho_ + rho_.adjoint()).eval();
}

bool JointState::satisfies_invariants(const Mat4& rho, double tol, double eig_tol) {
  if (!rho.allFinite()) return false;
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
  if (std::abs(rho.trace() - Complex(1.0, 0.0)) > tol) return false;
  const Mat4 h = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat4> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -eig_tol;
}

double JointState::purity() const { return (rho_ * rho_).trace().real(); }

double JointState::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Mat4> es(rho_, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

Mat2 JointState::atom_reduced() const {
  Mat2 out = Mat2::Zero();
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int p = 0; p < 2; ++p) out(a, b) += rho_(joint_index(a, p), joint_index(b, p));
  return out;
}

Mat2 JointState::photon_reduced() const {
  Mat2 out = Mat2::Zero();
  for (int p = 0; p < 2; ++p)
    for (int q = 0; q < 2; ++q)
      for (int a = 0; a < 2; ++a) out(p, q) += rho_(joint_index(a, p), joint_index(a, q));
  return out;
}

JointState JointState::with_photon_unitary(const Mat2& u) const {
  Mat4 big = Mat4::Zero();
  big.block<2, 2>(0, 0) = u;
  big.block<2, 2>(2, 2) = u;
  return JointState(big * rho_ * big.adjoint(), tag_);
}

JointState JointState::in_linear_coordinates() const {
  if (tag_.photon == PhotonBasis::linear) return *this;
  JointState out = with_photon_unitary(circular_to_linear());
  out.tag_.photon = PhotonBasis::linear;
  return out;
}

JointState JointState::relabeled_mapped() const {
  JointState out = *this;
  out.tag_.atom = AtomBasis::mapped;
  return out;
}

JointState bell_psi_plus() {
  Eigen::Vector4cd psi = Eigen::Vector4cd::Zero();
  psi(joint_index(kAtomDown, 0)) = 1.0 / std::sqrt(2.0);  // |down, sigma+>
  psi(joint_index(kAtomUp, 1)) = 1.0 / std::sqrt(2.0);    // |up, sigma->
  return JointState(psi * psi.adjoint(), BasisTag{AtomBasis::pre_map, PhotonBasis::circular});
}

JointState maximally_mixed(BasisTag tag) { return JointState(Mat4::Identity() * 0.25, tag); }

JointState werner_state(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("Werner weight must lie in [0, 1]");
  return with_white_noise(bell_psi_plus(), 1.0 - p);
}

JointState with_white_noise(const JointState& state, double w) {
  if (!(w >= 0.0 && w <= 1.0)) throw InvalidArgument("noise weight must lie in [0, 1]");
  return JointState((1.0 - w) * state.rho() + w * 0.25 * Mat4::Identity(), state.tag());
}

double coherence_factor(double t, double t2star) {
  if (t < 0.0) throw InvalidArgument("dephasing time must be non-negative");
  if (!(t2star > 0.0)) throw InvalidArgument("T2* must be positive");
  const double x = t / t2star;
  return std::exp(-x * x);
}

JointState dephase_atom(const JointState& rho, double t, double t2star) {
  const double k = coherence_factor(t, t2star);
  Mat4 out = rho.rho();
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      if ((r / 2) != (c / 2)) out(r, c) *= k;
  return JointState(out, rho.tag());
}

PhotonMeasurement measure_photon(const JointState& rho, std::span<const PolarizationOp> chain) {
  for (const auto& op : chain) {
    if (op.kind() != OpKind::unitary || !op.is_valid(1e-10)) {
      throw InvalidArgument("measurement chain elements must be unitary");
    }
  }
  const JointState lin = rho.in_linear_coordinates();
  const Mat2 w = chain_product(chain);
  const Mat4& r = lin.rho();

  PhotonMeasurement out;
  for (int nu = 0; nu < 2; ++nu) {
    // Row of the chain product selecting PBS port nu: <nu| W.
    const Eigen::RowVector2cd bra = w.row(nu);
    Mat2 atom = Mat2::Zero();
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        Complex s = 0.0;
        for (int p = 0; p < 2; ++p)
          for (int q = 0; q < 2; ++q)
            s += bra(p) * r(joint_index(a, p), joint_index(b, q)) * std::conj(bra(q));
        atom(a, b) = s;
      }
    const double prob = std::max(0.0, atom.trace().real());
    Mat2 cond = prob > 0.0 ? Mat2(atom / prob) : Mat2(Mat2::Zero());
    if (nu == 0) {
      out.p_h = prob;
      out.atom_given_h = cond;
    } else {
      out.p_v = prob;
      out.atom_given_v = cond;
    }
  }
  return out;
}

}  // namespace qnode::quantum

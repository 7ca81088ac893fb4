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

#include <Eigen/Dense>

#include "qnode/quantum/jones.hpp"

namespace qnode::quantum {

using Mat4 = Eigen::Matrix4cd;

// Which atomic pair occupies the qubit slot: (down, up) before the microwave
// mapping pulse, (down, up') after it.
enum class AtomBasis { pre_map, mapped };

// circular: photon index 0 = sigma+, 1 = sigma-.  linear: 0 = H, 1 = V.
enum class PhotonBasis { circular, linear };

struct BasisTag {
  AtomBasis atom = AtomBasis::pre_map;
  PhotonBasis photon = PhotonBasis::circular;
  bool operator==(const BasisTag&) const = default;
};

inline constexpr int kAtomDown = 0;
inline constexpr int kAtomUp = 1;  // up (pre-map) or up' (mapped)

constexpr int joint_index(int atom, int photon) { return 2 * atom + photon; }

// Atom-qubit (x) photon-polarization density matrix, ordered basis
// |atom, photon> with index 2*atom + photon.
class JointState {
 public:
  // Throws InvalidArgument unless rho is Hermitian, unit-trace and PSD.
  JointState(const Mat4& rho, BasisTag tag);

  const Mat4& rho() const { return rho_; }
  BasisTag tag() const { return tag_; }

  Complex element(int atom_r, int photon_r, int atom_c, int photon_c) const {
    return rho_(joint_index(atom_r, photon_r), joint_index(atom_c, photon_c));
  }

  double purity() const;
  double min_eigenvalue() const;
  Mat2 atom_reduced() const;    // partial trace over the photon
  Mat2 photon_reduced() const;  // partial trace over the atom

  // Re-expresses a circular-tagged state in linear (H, V) coordinates using the
  // fixed circular convention. Linear-tagged states are returned unchanged.
  JointState in_linear_coordinates() const;

  // Relabels up -> up' (the ideal mapping pulse).
  JointState relabeled_mapped() const;

  // Applies I (x) U to the photon.
  JointState with_photon_unitary(const Mat2& u) const;

  static bool satisfies_invariants(const Mat4& rho, double tol = 1e-12, double eig_tol = 1e-10);

 private:
  Mat4 rho_;
  BasisTag tag_;
};

// (|down, sigma+> + |up, sigma->)/sqrt(2)
JointState bell_psi_plus();

JointState maximally_mixed(BasisTag tag = {});

// p |psi+><psi+| + (1 - p) I/4
JointState werner_state(double p);

// Mixes white noise into a state: (1 - w) rho + w I/4.
JointState with_white_noise(const JointState& state, double w);

// Gaussian Ramsey envelope exp(-(t/T2*)^2).
double coherence_factor(double t, double t2star);

// Multiplies the atom-coherence blocks by exp(-(t/T2*)^2); populations untouched.
JointState dephase_atom(const JointState& rho, double t, double t2star);

struct PhotonMeasurement {
  double p_h = 0.0;
  double p_v = 0.0;
  Mat2 atom_given_h = Mat2::Zero();  // normalized, zero when p_h == 0
  Mat2 atom_given_v = Mat2::Zero();
};

// Sends the photon through chain (fiber, QWP, HWP, ...) and projects on H/V at
// a PBS. Rejects non-unitary chain elements.
PhotonMeasurement measure_photon(const JointState& rho, std::span<const PolarizationOp> chain);

}  // namespace qnode::quantum

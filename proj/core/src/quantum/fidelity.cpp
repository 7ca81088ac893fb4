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
#include "qnode/quantum/fidelity.hpp"

#include <cmath>
#include <numeric>

#include "qnode/error.hpp"

namespace qnode::quantum {

void DiagonalTomogram::validate() const {
  double sum = 0.0;
  double var = 0.0;
  for (int i = 0; i < 4; ++i) {
    if (!(p[i] >= 0.0) || p[i] > 1.0 || !std::isfinite(p[i])) {
      throw InvalidArgument("tomogram population outside [0, 1]");
    }
    if (!(sigma[i] >= 0.0)) throw InvalidArgument("tomogram uncertainty must be non-negative");
    sum += p[i];
    var += sigma[i] * sigma[i];
  }
  if (std::abs(sum - 1.0) > std::sqrt(var) + 1e-9) {
    throw InvalidArgument("tomogram populations do not sum to 1");
  }
}

JointState analyzer_frame(const JointState& rho) {
  Mat4 r = rho.rho();
  if (rho.tag().photon == PhotonBasis::circular) {
    // sigma- (index 1) -> H (index 0), sigma+ (index 0) -> V (index 1).
    Eigen::PermutationMatrix<4> perm;
    perm.indices() << 1, 0, 3, 2;
    r = perm * r * perm.transpose();
  }
  return JointState(r, BasisTag{AtomBasis::mapped, PhotonBasis::linear});
}

double fidelity_full(const JointState& rho) {
  const JointState a = analyzer_frame(rho);
  constexpr int kUpH = joint_index(kAtomUp, 0);
  constexpr int kDownV = joint_index(kAtomDown, 1);
  const Mat4& r = a.rho();
  return 0.5 * (r(kUpH, kUpH).real() + r(kDownV, kDownV).real()) + r(kUpH, kDownV).real();
}

Estimate fidelity_lower_bound(const DiagonalTomogram& z, const DiagonalTomogram& x) {
  z.validate();
  x.validate();
  using E = DiagonalTomogram;
  const double a = z[E::up_v];
  const double b = z[E::down_h];
  const double root = std::sqrt(a * b);
  const double f = 0.5 * (z[E::up_h] + z[E::down_v] - 2.0 * root + x[E::up_h] + x[E::down_v] -
                          x[E::up_v] - x[E::down_h]);

  // Linear terms contribute sigma/2 each.
  double var = 0.0;
  for (int i : {E::up_h, E::down_v}) var += 0.25 * z.sigma[i] * z.sigma[i];
  for (int i = 0; i < 4; ++i) var += 0.25 * x.sigma[i] * x.sigma[i];

  // The square-root term: d/da sqrt(ab) = sqrt(b/a)/2. Where the derivative is
  // singular (a population at zero) use the one-sigma finite step instead.
  const double sa = z.sigma[E::up_v];
  const double sb = z.sigma[E::down_h];
  if (a > 0.0 && b > 0.0) {
    const double da = 0.5 * std::sqrt(b / a) * sa;
    const double db = 0.5 * std::sqrt(a / b) * sb;
    var += da * da + db * db;
  } else {
    const double step = std::sqrt((a + sa) * (b + sb)) - root;
    var += step * step;
  }
  return {f, std::sqrt(var)};
}

DiagonalTomogram exact_diagonals(const JointState& rho, MeasurementBasis basis) {
  const JointState a = analyzer_frame(rho);
  Mat4 r = a.rho();
  if (basis == MeasurementBasis::x) {
    // Hadamard on both parties maps |+> -> index 0. Relabel so that the atom's
    // |+> outcome carries the up' label and the photon's |+> carries H.
    Mat2 h;
    h << 1.0, 1.0, 1.0, -1.0;
    h /= std::sqrt(2.0);
    Mat2 flip;
    flip << 0.0, 1.0, 1.0, 0.0;
    const Mat2 atom_op = flip * h;  // |+> -> index 1 (up'), |-> -> index 0 (down)
    const Mat2 photon_op = h;       // |+> -> index 0 (H), |-> -> index 1 (V)
    Mat4 u;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) u.block<2, 2>(2 * a, 2 * b) = atom_op(a, b) * photon_op;
    r = u * r * u.adjoint();
  }
  DiagonalTomogram t;
  t.p[DiagonalTomogram::up_h] = r(joint_index(kAtomUp, 0), joint_index(kAtomUp, 0)).real();
  t.p[DiagonalTomogram::up_v] = r(joint_index(kAtomUp, 1), joint_index(kAtomUp, 1)).real();
  t.p[DiagonalTomogram::down_h] = r(joint_index(kAtomDown, 0), joint_index(kAtomDown, 0)).real();
  t.p[DiagonalTomogram::down_v] = r(joint_index(kAtomDown, 1), joint_index(kAtomDown, 1)).real();
  for (double& v : t.p) v = std::max(0.0, v);
  return t;
}

}  // namespace qnode::quantum

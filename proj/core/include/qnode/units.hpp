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

#include <numbers>

namespace qnode {

// Plane angle. Stored in radians; files and the CLI speak degrees.
class Angle {
 public:
  constexpr Angle() = default;

  static constexpr Angle radians(double r) { return Angle(r); }
  static constexpr Angle degrees(double d) { return Angle(d * std::numbers::pi / 180.0); }

  constexpr double rad() const { return rad_; }
  constexpr double deg() const { return rad_ * 180.0 / std::numbers::pi; }

  constexpr Angle operator+(Angle o) const { return Angle(rad_ + o.rad_); }
  constexpr Angle operator-(Angle o) const { return Angle(rad_ - o.rad_); }
  constexpr Angle operator-() const { return Angle(-rad_); }
  constexpr Angle operator*(double k) const { return Angle(rad_ * k); }
  constexpr bool operator==(const Angle&) const = default;

 private:
  constexpr explicit Angle(double r) : rad_(r) {}
  double rad_ = 0.0;
};

// Gaussian FWHM = kFwhmPerSigma * sigma.
inline constexpr double kFwhmPerSigma = 2.3548200450309493;

}  // namespace qnode

// Copyright 2026 The innerfn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstdint>

namespace innerfn {

using Complex = std::complex<double>;

// A point of C^2. Used both for points of the domain boundary and for their
// images on the unit sphere.
struct ComplexPoint2 {
  Complex z1;
  Complex z2;

  bool finite() const;
  friend bool operator==(const ComplexPoint2&, const ComplexPoint2&) = default;
};

// Hermitian product <u, v> = u1 conj(v1) + u2 conj(v2).
Complex inner(const ComplexPoint2& u, const ComplexPoint2& v);

// Nonisotropic distance sqrt(1 - |<u, v>|^2) between points of the sphere.
// Clamped into [0, 1] against rounding.
double ball_distance(const ComplexPoint2& u, const ComplexPoint2& v);

inline constexpr double kDefaultBoundaryTolerance = 1e-9;
inline constexpr double kRamificationGuard = 1e-6;

// The covering f(z1, z2) = (z1, z2^q) of the unit ball by
// M_q = {|z1|^2 + |z2|^(2q) < 1}. It has q sheets, ramified along {z2 = 0}.
class CoveringMap {
 public:
  explicit CoveringMap(int q, double boundary_tolerance = kDefaultBoundaryTolerance);

  int exponent() const { return q_; }
  int sheet_count() const { return q_; }
  double boundary_tolerance() const { return tolerance_; }

  ComplexPoint2 apply(const ComplexPoint2& p) const;

  // Preimage of `s` on the given sheet. For q > 1 throws RamificationError
  // when |s.z2| < kRamificationGuard. DomainError on a bad sheet or an
  // off-sphere s.
  ComplexPoint2 lift(const ComplexPoint2& s, int sheet) const;

  // |z1|^2 + |z2|^(2q) - 1
  double boundary_defect(const ComplexPoint2& p) const;
  bool on_boundary(const ComplexPoint2& p) const;
  // Throws BoundaryError unless on_boundary(p).
  void require_boundary(const ComplexPoint2& p) const;

  // d_M(z, w) = d(f(z), f(w)).
  double boundary_distance(const ComplexPoint2& z, const ComplexPoint2& w) const;
  bool in_boundary_ball(const ComplexPoint2& center, double radius,
                        const ComplexPoint2& query) const;

  // Points of the ramification locus Z = {z2 = 0} (within `width` of it).
  bool near_ramification(const ComplexPoint2& p, double width) const;

 private:
  int q_;
  double tolerance_;
};

bool on_sphere(const ComplexPoint2& s, double tolerance);

}  // namespace innerfn

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

#include "innerfn/covering_domain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "innerfn/errors.hpp"

namespace innerfn {

bool ComplexPoint2::finite() const {
  return std::isfinite(z1.real()) && std::isfinite(z1.imag()) &&
         std::isfinite(z2.real()) && std::isfinite(z2.imag());
}

Complex inner(const ComplexPoint2& u, const ComplexPoint2& v) {
  return u.z1 * std::conj(v.z1) + u.z2 * std::conj(v.z2);
}

double ball_distance(const ComplexPoint2& u, const ComplexPoint2& v) {
  const double overlap = std::norm(inner(u, v));
  return std::sqrt(std::clamp(1.0 - overlap, 0.0, 1.0));
}

bool on_sphere(const ComplexPoint2& s, double tolerance) {
  return s.finite() && std::abs(std::norm(s.z1) + std::norm(s.z2) - 1.0) < tolerance;
}

CoveringMap::CoveringMap(int q, double boundary_tolerance)
    : q_(q), tolerance_(boundary_tolerance) {
  if (q < 1) throw DomainError("covering exponent q must be >= 1, got " + std::to_string(q));
  if (!(boundary_tolerance > 0.0)) throw DomainError("boundary tolerance must be positive");
}

ComplexPoint2 CoveringMap::apply(const ComplexPoint2& p) const {
  Complex w = 1.0;
  for (int i = 0; i < q_; ++i) w *= p.z2;
  return {p.z1, w};
}

ComplexPoint2 CoveringMap::lift(const ComplexPoint2& s, int sheet) const {
  if (sheet < 0 || sheet >= q_) {
    throw DomainError("sheet index " + std::to_string(sheet) + " outside [0, " +
                      std::to_string(q_) + ")");
  }
  if (!on_sphere(s, tolerance_)) throw DomainError("lift: point is not on the unit sphere");
  const double modulus = std::abs(s.z2);
  if (q_ > 1 && modulus < kRamificationGuard) {
    throw RamificationError("lift: |z2| below ramification guard");
  }
  if (q_ == 1) return s;
  const double root = std::pow(modulus, 1.0 / q_);
  const double angle = (std::arg(s.z2) + 2.0 * std::numbers::pi * sheet) / q_;
  return {s.z1, std::polar(root, angle)};
}

double CoveringMap::boundary_defect(const ComplexPoint2& p) const {
  return std::norm(p.z1) + std::pow(std::norm(p.z2), q_) - 1.0;
}

bool CoveringMap::on_boundary(const ComplexPoint2& p) const {
  return p.finite() && std::abs(boundary_defect(p)) < tolerance_;
}

void CoveringMap::require_boundary(const ComplexPoint2& p) const {
  if (!on_boundary(p)) throw BoundaryError("point is not on the domain boundary");
}

double CoveringMap::boundary_distance(const ComplexPoint2& z, const ComplexPoint2& w) const {
  require_boundary(z);
  require_boundary(w);
  return ball_distance(apply(z), apply(w));
}

bool CoveringMap::in_boundary_ball(const ComplexPoint2& center, double radius,
                                   const ComplexPoint2& query) const {
  return boundary_distance(center, query) < radius;
}

bool CoveringMap::near_ramification(const ComplexPoint2& p, double width) const {
  return std::abs(p.z2) < width;
}

}  // namespace innerfn

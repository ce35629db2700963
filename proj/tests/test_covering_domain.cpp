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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "innerfn/covering_domain.hpp"
#include "innerfn/errors.hpp"
#include "test_support.hpp"

using namespace innerfn;
using innerfn::testing::max_abs_diff;
using innerfn::testing::random_sphere_point;

namespace {

const double pi = std::numbers::pi;

}  // namespace

TEST(CoveringMap, RejectsNonPositiveExponent) {
  EXPECT_THROW(CoveringMap(0), DomainError);
  EXPECT_THROW(CoveringMap(-2), DomainError);
  EXPECT_EQ(CoveringMap(3).sheet_count(), 3);
}

TEST(CoveringMap, ApplyExamples) {
  const CoveringMap q2(2), q3(3);
  EXPECT_EQ(q2.apply({0.0, 1.0}), (ComplexPoint2{0.0, 1.0}));
  EXPECT_EQ(q2.apply({1.0, 0.0}), (ComplexPoint2{1.0, 0.0}));
  const ComplexPoint2 image = q3.apply({0.0, std::polar(1.0, pi / 3)});
  EXPECT_LT(max_abs_diff(image, {0.0, -1.0}), 1e-15);
}

TEST(CoveringMap, LiftExamples) {
  const CoveringMap q2(2);
  EXPECT_LT(max_abs_diff(q2.lift({0.0, 1.0}, 0), {0.0, 1.0}), 1e-15);
  EXPECT_LT(max_abs_diff(q2.lift({0.0, 1.0}, 1), {0.0, -1.0}), 1e-15);
  EXPECT_THROW(q2.lift({1.0, 0.0}, 0), RamificationError);
  EXPECT_THROW(q2.lift({1.0, 0.0}, 1), RamificationError);
  EXPECT_THROW(q2.lift({0.0, 1.0}, 2), DomainError);
  EXPECT_THROW(q2.lift({0.0, 2.0}, 0), DomainError);
  // One sheet: nothing to ramify.
  EXPECT_EQ(CoveringMap(1).lift({1.0, 0.0}, 0), (ComplexPoint2{1.0, 0.0}));
}

TEST(CoveringMap, LiftGuardIsTheRamificationRadius) {
  const CoveringMap q3(3);
  const double inside = 0.5e-6, outside = 2e-6;
  const auto at = [](double t) { return ComplexPoint2{std::sqrt(1 - t * t), t}; };
  EXPECT_THROW(q3.lift(at(inside), 0), RamificationError);
  EXPECT_NO_THROW(q3.lift(at(outside), 0));
}

TEST(CoveringMap, RoundTripOnEverySheet) {
  std::mt19937_64 g(11);
  for (int q : {1, 2, 3, 5}) {
    const CoveringMap map(q);
    int checked = 0;
    while (checked < 1000) {
      const ComplexPoint2 s = random_sphere_point(g);
      if (std::abs(s.z2) <= 1e-6) continue;
      ++checked;
      for (int j = 0; j < q; ++j) {
        const ComplexPoint2 z = map.lift(s, j);
        EXPECT_TRUE(map.on_boundary(z));
        ASSERT_LT(max_abs_diff(map.apply(z), s), 1e-10) << "q=" << q << " sheet " << j;
      }
    }
  }
}

TEST(CoveringMap, SheetsAreDistinct) {
  std::mt19937_64 g(12);
  const CoveringMap map(4);
  for (int t = 0; t < 100; ++t) {
    const ComplexPoint2 s = random_sphere_point(g);
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) EXPECT_GT(max_abs_diff(map.lift(s, i), map.lift(s, j)), 1e-6);
  }
}

TEST(CoveringMap, ImagesOfBoundaryLieOnSphere) {
  std::mt19937_64 g(13);
  const CoveringMap map(3);
  for (int t = 0; t < 1000; ++t) {
    const ComplexPoint2 z = map.lift(random_sphere_point(g), t % 3);
    const ComplexPoint2 s = map.apply(z);
    EXPECT_NEAR(std::norm(s.z1) + std::norm(s.z2), 1.0, 1e-12);
  }
}

TEST(BoundaryDistance, Examples) {
  const CoveringMap q1(1);
  const ComplexPoint2 e1{1.0, 0.0}, e2{0.0, 1.0};
  const ComplexPoint2 mid{1 / std::sqrt(2.0), 1 / std::sqrt(2.0)};
  EXPECT_EQ(q1.boundary_distance(e1, e1), 0.0);
  EXPECT_DOUBLE_EQ(q1.boundary_distance(e1, e2), 1.0);
  EXPECT_NEAR(q1.boundary_distance(e1, mid), std::sqrt(0.5), 1e-15);
  EXPECT_THROW(q1.boundary_distance(e1, {0.5, 0.5}), BoundaryError);
}

TEST(BoundaryDistance, PullbackOfTheBallMetric) {
  std::mt19937_64 g(14);
  for (int q : {1, 2, 3}) {
    const CoveringMap map(q);
    for (int t = 0; t < 1000; ++t) {
      const ComplexPoint2 z = map.lift(random_sphere_point(g), t % q);
      const ComplexPoint2 w = map.lift(random_sphere_point(g), (t / 3) % q);
      const ComplexPoint2 fz{z.z1, std::pow(z.z2, q)}, fw{w.z1, std::pow(w.z2, q)};
      const Complex ip = fz.z1 * std::conj(fw.z1) + fz.z2 * std::conj(fw.z2);
      const double direct = std::sqrt(std::max(0.0, 1.0 - std::norm(ip)));
      EXPECT_NEAR(map.boundary_distance(z, w), direct, 1e-12);
      EXPECT_DOUBLE_EQ(map.boundary_distance(z, w), map.boundary_distance(w, z));
    }
  }
}

TEST(BoundaryDistance, SheetsOfOnePointAreAtDistanceZero) {
  const CoveringMap map(3);
  const ComplexPoint2 s{0.6, 0.8};
  EXPECT_NEAR(map.boundary_distance(map.lift(s, 0), map.lift(s, 2)), 0.0, 1e-7);
}

TEST(BoundaryDistance, QuasiTriangleConstantAtMostFour) {
  std::mt19937_64 g(15);
  for (int q : {1, 2, 3}) {
    const CoveringMap map(q);
    double c1 = 0.0;
    for (int t = 0; t < 10000; ++t) {
      const auto pick = [&] { return map.lift(random_sphere_point(g), t % q); };
      const ComplexPoint2 z = pick(), w = pick(), u = pick();
      const double rhs = map.boundary_distance(z, u) + map.boundary_distance(u, w);
      if (rhs > 0) c1 = std::max(c1, map.boundary_distance(z, w) / rhs);
    }
    EXPECT_LE(c1, 4.0) << "q=" << q;
  }
}

TEST(BoundaryBall, Membership) {
  const CoveringMap q1(1);
  const ComplexPoint2 e1{1.0, 0.0}, e2{0.0, 1.0};
  EXPECT_TRUE(q1.in_boundary_ball(e1, 0.1, e1));
  EXPECT_FALSE(q1.in_boundary_ball(e1, 0.5, e2));
  EXPECT_TRUE(q1.in_boundary_ball(e1, 1.5, e2));
}

TEST(Ramification, TubeMassShrinksWithWidth) {
  // |z2| < w on dM_2 means |eta2|^2 < w^4, and |eta2|^2 is uniform on [0, 1].
  const CoveringMap map(2);
  std::mt19937_64 g(16);
  std::vector<ComplexPoint2> pts;
  for (int t = 0; t < 20000; ++t) pts.push_back(map.lift(random_sphere_point(g), t % 2));
  double previous = 1.0;
  for (double width : {0.8, 0.6, 0.45, 0.3}) {
    double hits = 0;
    for (const auto& p : pts) hits += map.near_ramification(p, width);
    const double fraction = hits / pts.size();
    const double oracle = std::pow(width, 4);
    EXPECT_NEAR(fraction, oracle, 3 * std::sqrt(oracle * (1 - oracle) / pts.size()) + 1e-12);
    EXPECT_LT(fraction, previous);
    previous = fraction;
  }
  EXPECT_LT(previous, 0.01);
}

TEST(ComplexPoint2, Finite) {
  EXPECT_TRUE((ComplexPoint2{1.0, 0.0}).finite());
  EXPECT_FALSE((ComplexPoint2{std::nan(""), 0.0}).finite());
  EXPECT_FALSE((ComplexPoint2{0.0, Complex(0.0, INFINITY)}).finite());
}

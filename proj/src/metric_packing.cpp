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

#include "innerfn/metric_packing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "innerfn/errors.hpp"

namespace innerfn {

PackingResult greedy_packing(const BoundarySampleSet& candidates, double r,
                             const CoveringMap& map) {
  if (candidates.count() == 0) throw EmptyInputError("greedy_packing: no candidates");
  if (!(r > 0.0)) throw DomainError("greedy_packing: radius must be positive");
  PackingResult out;
  out.r = r;
  out.candidate_count = candidates.count();
  out.seed = candidates.seed;
  out.q = map.exponent();
  for (const auto& p : candidates.points) {
    const ComplexPoint2 image = map.apply(p);
    bool separated = true;
    for (const auto& c : out.images) {
      if (ball_distance(image, c) < r) {
        separated = false;
        break;
      }
    }
    if (separated) {
      out.centers.push_back(p);
      out.images.push_back(image);
    }
  }
  return out;
}

CoverReport verify_cover(const PackingResult& result, const BoundarySampleSet& candidates,
                         const CoveringMap& map) {
  CoverReport out;
  for (const auto& p : candidates.points) {
    const ComplexPoint2 image = map.apply(p);
    double nearest = std::numeric_limits<double>::infinity();
    for (const auto& c : result.images) {
      nearest = std::min(nearest, ball_distance(image, c));
      if (nearest == 0.0) break;
    }
    out.worst_distance = std::max(out.worst_distance, nearest);
  }
  out.covered = out.worst_distance < 2.0 * result.r;
  return out;
}

double min_pairwise_distance(const PackingResult& result) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < result.images.size(); ++i) {
    for (std::size_t j = i + 1; j < result.images.size(); ++j) {
      best = std::min(best, ball_distance(result.images[i], result.images[j]));
    }
  }
  return best;
}

std::vector<std::size_t> shell_histogram(std::span<const ComplexPoint2> center_images,
                                         const ComplexPoint2& zeta_image, double r) {
  if (!(r > 0.0)) throw DomainError("shell_histogram: radius must be positive");
  for (std::size_t i = 0; i < center_images.size(); ++i) {
    for (std::size_t j = i + 1; j < center_images.size(); ++j) {
      if (ball_distance(center_images[i], center_images[j]) < r - kSeparationTolerance) {
        throw SeparationError("shell_histogram: centers are not r-separated");
      }
    }
  }
  const auto shells = static_cast<std::size_t>(std::floor(1.0 / r)) + 2;
  std::vector<std::size_t> counts(shells, 0);
  for (const auto& c : center_images) {
    const double d = ball_distance(zeta_image, c);
    const auto m = std::min(static_cast<std::size_t>(std::floor(d / r)), shells - 1);
    ++counts[m];
  }
  return counts;
}

std::vector<std::size_t> shell_histogram(const PackingResult& result, const ComplexPoint2& zeta,
                                         const CoveringMap& map) {
  map.require_boundary(zeta);
  return shell_histogram(result.images, map.apply(zeta), result.r);
}

bool kernel_decay_holds(std::span<const ComplexPoint2> center_images,
                        const ComplexPoint2& zeta_image, double r) {
  for (const auto& c : center_images) {
    const double m = std::floor(ball_distance(zeta_image, c) / r);
    // d^2 = 1 - |<.,.>|^2 exactly, so allow rounding in the comparison.
    if (std::norm(inner(zeta_image, c)) > 1.0 - m * m * r * r + 1e-12) return false;
  }
  return true;
}

DoublingReport measure_doubling(const BoundarySampleSet& cloud, const CoveringMap& map,
                                std::uint64_t seed, std::size_t triples, std::size_t balls) {
  if (cloud.count() == 0) throw EmptyInputError("measure_doubling: empty cloud");
  const std::vector<ComplexPoint2> images = cloud.images(map);
  std::mt19937_64 engine(seed);
  std::uniform_int_distribution<std::size_t> pick(0, images.size() - 1);

  DoublingReport out;
  out.c4 = cloud.total_mass();
  out.triples = triples;
  out.balls = balls;

  for (std::size_t t = 0; t < triples; ++t) {
    const auto& z = images[pick(engine)];
    const auto& w = images[pick(engine)];
    const auto& u = images[pick(engine)];
    const double lhs = ball_distance(z, w);
    const double rhs = ball_distance(z, u) + ball_distance(u, w);
    if (rhs > 0.0) out.c1 = std::max(out.c1, lhs / rhs);
  }

  std::vector<std::size_t> ball_centers(balls);
  for (auto& b : ball_centers) b = pick(engine);
  std::size_t worst_small = 0;
  for (double r : {0.1, 0.2, 0.3, 0.4, 0.5}) {
    std::size_t small = 0, large = 0;
    for (std::size_t b : ball_centers) {
      for (const auto& x : images) {
        const double d = ball_distance(images[b], x);
        if (d < r) ++small;
        if (d < 2.0 * r) ++large;
      }
    }
    if (small == 0) continue;
    const double ratio = static_cast<double>(large) / static_cast<double>(small);
    if (ratio > out.c2) {
      out.c2 = ratio;
      worst_small = small;
    }
  }
  if (worst_small > 0) out.c2_slack = 3.0 / std::sqrt(static_cast<double>(worst_small));

  // Engulfing diagnostic under the intersecting-balls reading.
  std::uniform_real_distribution<double> unit(0.05, 0.5);
  for (std::size_t b = 0; b < balls; ++b) {
    const auto& omega = images[pick(engine)];
    const auto& zeta = images[pick(engine)];
    const double s = unit(engine);
    const double r = s * unit(engine) / 0.5;
    bool meets = false;
    double reach = 0.0;
    for (const auto& x : images) {
      const double dw = ball_distance(omega, x);
      if (dw >= r) continue;
      const double dz = ball_distance(zeta, x);
      if (dz < s) meets = true;
      reach = std::max(reach, dz);
    }
    if (meets) out.c3 = std::max(out.c3, reach / s);
  }
  return out;
}

nlohmann::json to_json(const PackingResult& result) {
  nlohmann::json centers = nlohmann::json::array();
  for (const auto& c : result.centers) {
    centers.push_back({c.z1.real(), c.z1.imag(), c.z2.real(), c.z2.imag()});
  }
  return {{"r", result.r},
          {"K", result.size()},
          {"q", result.q},
          {"seed", result.seed},
          {"candidate_count", result.candidate_count},
          {"centers", centers}};
}

nlohmann::json to_json(const DoublingReport& report) {
  return {{"c1_quasi_triangle", report.c1},     {"c2_doubling", report.c2},
          {"c2_slack", report.c2_slack},         {"c3_engulfing_diagnostic", report.c3},
          {"c4_total_mass", report.c4},          {"triples", report.triples},
          {"balls", report.balls}};
}

}  // namespace innerfn

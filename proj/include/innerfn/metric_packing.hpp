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

#include <cstdint>
#include <json.hpp>
#include <span>
#include <vector>

#include "innerfn/covering_domain.hpp"
#include "innerfn/sphere_measure.hpp"

namespace innerfn {

inline constexpr double kSeparationTolerance = 1e-9;

// Greedy r-separated subset of a candidate cloud on dM, maximal relative to
// that cloud. `images` caches f(centers).
struct PackingResult {
  std::vector<ComplexPoint2> centers;
  std::vector<ComplexPoint2> images;
  double r = 0.0;
  std::size_t candidate_count = 0;
  std::uint64_t seed = 0;
  int q = 1;

  std::size_t size() const { return centers.size(); }
};

// Accepts candidates in order when their d_M distance to every accepted
// center is >= r. Throws EmptyInputError on an empty cloud, DomainError
// unless r > 0.
PackingResult greedy_packing(const BoundarySampleSet& candidates, double r,
                             const CoveringMap& map);

struct CoverReport {
  bool covered = false;
  double worst_distance = 0.0;  // max over candidates of distance to nearest center
};
CoverReport verify_cover(const PackingResult& result, const BoundarySampleSet& candidates,
                         const CoveringMap& map);

// Smallest pairwise center distance (infinity for K < 2).
double min_pairwise_distance(const PackingResult& result);

// #H_m = #{centers : m r <= d_M(zeta, center) < (m+1) r}, for m = 0..floor(1/r)+1.
// Throws SeparationError if the centers are not r-separated.
std::vector<std::size_t> shell_histogram(std::span<const ComplexPoint2> center_images,
                                         const ComplexPoint2& zeta_image, double r);
std::vector<std::size_t> shell_histogram(const PackingResult& result, const ComplexPoint2& zeta,
                                         const CoveringMap& map);

// True when every center in shell m has |<f(zeta), f(center)>|^2 <= 1 - m^2 r^2.
bool kernel_decay_holds(std::span<const ComplexPoint2> center_images,
                        const ComplexPoint2& zeta_image, double r);

// Measured constants of the boundary geometry.
//   c1: max d(z,w) / (d(z,u) + d(u,w)) over sampled triples
//   c2: max sigma_M(E(w,2r)) / sigma_M(E(w,r)) over sampled balls, 2r <= 1
//   c3: diagnostic engulfing constant for intersecting balls, r <= s
//   c4: sigma_M(dM)
struct DoublingReport {
  double c1 = 0.0;
  double c2 = 0.0;
  double c2_slack = 0.0;  // statistical slack allowed above 4
  double c3 = 0.0;
  double c4 = 0.0;
  std::size_t triples = 0;
  std::size_t balls = 0;
};
DoublingReport measure_doubling(const BoundarySampleSet& cloud, const CoveringMap& map,
                                std::uint64_t seed, std::size_t triples = 10000,
                                std::size_t balls = 64);

nlohmann::json to_json(const PackingResult& result);
nlohmann::json to_json(const DoublingReport& report);

}  // namespace innerfn

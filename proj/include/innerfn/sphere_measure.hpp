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

#include <boost/multiprecision/cpp_int.hpp>
#include <compare>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <vector>

#include "innerfn/covering_domain.hpp"

namespace innerfn {

using Rational = boost::multiprecision::cpp_rational;

struct MultiIndex {
  int a1 = 0;
  int a2 = 0;

  int total() const { return a1 + a2; }
  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;
  friend MultiIndex operator+(MultiIndex x, MultiIndex y) { return {x.a1 + y.a1, x.a2 + y.a2}; }
  friend MultiIndex operator-(MultiIndex x, MultiIndex y) { return {x.a1 - y.a1, x.a2 - y.a2}; }
};

// z^a = z1^a1 z2^a2.
Complex monomial(const ComplexPoint2& z, MultiIndex a);

// Exact sphere integrals. Big-integer factorials, so there is no overflow
// ceiling on the degree.
//   int_S z^a conj(z)^a dsigma = a! / (1 + |a|)!
Rational monomial_integral(MultiIndex a);
//   int_S z^a conj(z)^b dsigma, zero unless a == b
Rational mixed_monomial_integral(MultiIndex a, MultiIndex b);
//   int_dM f^a conj(f)^b dsigma_M = N * mixed_monomial_integral(a, b)
Rational pulled_back_monomial_integral(const CoveringMap& map, MultiIndex a, MultiIndex b);

// Double-precision a!/(1+|a|)! = 1 / ((|a|+1) * C(|a|, a1)), for hot loops.
double monomial_integral_value(MultiIndex a);

// sigma(E(eta, delta)) = delta^2. Throws DomainError outside (0, 1].
double cap_measure(double delta);

// Rotation-invariant samples on the unit sphere S of C^2: normalized
// isotropic Gaussians in R^4. Deterministic given the seed.
std::vector<ComplexPoint2> sample_sphere(std::uint64_t seed, std::size_t count);

// Empirical representation of a positive measure on the domain boundary.
// With `weights` empty every point carries the uniform weight mass / count;
// the default sampler sets mass = N = sigma_M(dM).
struct BoundarySampleSet {
  std::vector<ComplexPoint2> points;
  double mass = 0.0;            // total mass of the uniform case
  std::vector<double> weights;  // optional per-point override
  std::uint64_t seed = 0;
  int q = 1;
  std::size_t resample_count = 0;

  std::size_t count() const { return points.size(); }
  bool uniform() const { return weights.empty(); }
  double weight() const { return mass / static_cast<double>(points.size()); }
  double weight_at(std::size_t i) const { return weights.empty() ? weight() : weights[i]; }
  double total_mass() const;
  // Images f(point) on the unit sphere.
  std::vector<ComplexPoint2> images(const CoveringMap& map) const;
};

// Each point is lift(s, j) with s uniform on S and j uniform among sheets.
// Draws within the ramification guard are redrawn from the same stream and
// counted in resample_count.
BoundarySampleSet sample_boundary(const CoveringMap& map, std::uint64_t seed, std::size_t count);

// Same support, new per-point weights (e.g. to model psi^2 dsigma_M).
BoundarySampleSet reweighted(const BoundarySampleSet& base, std::vector<double> weights);

struct IntegralEstimate {
  Complex value;
  double std_error = 0.0;
  std::size_t sample_count = 0;

  bool within(Complex target, double n_sigma) const {
    return std::abs(value - target) <= n_sigma * std_error;
  }
};

inline constexpr std::size_t kReductionChunk = 4096;

// Sum_i w_i G(p_i) with the delete-one jackknife standard error (for a
// weighted sum of i.i.d. terms this is sqrt(n) * sd(w_i G(p_i))). Summation
// runs over fixed-size chunks in index order, so the result depends only on
// the inputs. Uniform sets sum G first and scale by mass / n, so a constant
// integrates to c * mass without accumulated rounding. Throws NonFiniteError if any evaluation is NaN or infinite.
IntegralEstimate integrate_boundary(const std::function<Complex(const ComplexPoint2&)>& g,
                                    const BoundarySampleSet& samples);
// Same reduction over values already evaluated at the sample points.
IntegralEstimate integrate_values(std::span<const Complex> values,
                                  const BoundarySampleSet& samples);
IntegralEstimate integrate_values(std::span<const double> values,
                                  const BoundarySampleSet& samples);

// Flat export: rows (re z1, im z1, re z2, im z2, weight) plus a JSON sidecar
// `<path>.json` carrying seed, count and q.
enum class SampleFormat { kCsv, kBinary };
void write_samples(const BoundarySampleSet& samples, const std::filesystem::path& path,
                   SampleFormat format);
BoundarySampleSet read_samples(const std::filesystem::path& path, SampleFormat format);

}  // namespace innerfn

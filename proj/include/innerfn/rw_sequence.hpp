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

#include <Eigen/Dense>
#include <cstdint>
#include <json.hpp>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "innerfn/covering_domain.hpp"
#include "innerfn/f_polynomial.hpp"
#include "innerfn/metric_packing.hpp"
#include "innerfn/sphere_measure.hpp"

namespace innerfn {

using Unitary2 = Eigen::Matrix2cd;

// sum_{m>=0} (m+2)^2 exp(-m^2/2), stopping once the next term drops below
// `tail_cutoff`.
double shell_sigma_constant(double tail_cutoff = 1e-12);

struct SignVector {
  std::vector<int> signs;  // entries in {-1, +1}
  std::size_t trial_index = 0;
};

// Haar-distributed 2x2 unitary: Gram-Schmidt on a complex Gaussian matrix,
// column phases fixed by the diagonal of R.
Unitary2 haar_unitary(std::mt19937_64& engine);
ComplexPoint2 apply_unitary(const Unitary2& u, const ComplexPoint2& p);

// Q(z) = sum_j s_j <f(z), eta_j>^k with eta_j = f(omega_j), expanded as
// sum_i C(k,i) conj(eta_j1)^i conj(eta_j2)^(k-i) f^(i,k-i).
FPolynomial build_Q(std::span<const ComplexPoint2> center_images, const SignVector& signs, int k);
FPolynomial build_Q(const PackingResult& packing, const SignVector& signs, int k,
                    const CoveringMap& map);

struct RWCertificate {
  int k = 0;
  double r = 0.0;
  std::size_t K = 0;
  SignVector signs;
  double sigma = 0.0;
  IntegralEstimate l2_mass;      // exact int |Q|^2 dsigma_M (std_error 0)
  double mean_l2 = 0.0;          // K N / (1 + k), the sign average
  double sup_bound_check = 0.0;  // max sampled |W|; a lower estimate of the true sup
  std::size_t sup_probe_count = 0;
  std::size_t trials = 0;
  std::optional<IntegralEstimate> measure_mass;  // int |W|^2 dmu
  std::optional<double> measure_ratio;           // measure_mass / mu(dM)
  std::optional<double> average_measure_ratio;   // mean of the ratio over rotation trials
  std::optional<Unitary2> rotation;
  std::size_t rotation_trial = 0;

  double l2_mass_W() const { return l2_mass.value.real() / (sigma * sigma); }
  bool meets_mean_floor() const { return l2_mass.value.real() >= mean_l2 * (1.0 - 1e-12); }
};

// Exact int |Q_s|^2 dsigma_M for sign vector s.
double exact_l2_mass(std::span<const ComplexPoint2> center_images, const SignVector& signs, int k,
                     const CoveringMap& map);

// Trial 0 is the all-plus vector, trials 1..`trials` are seeded random
// signs. Keeps the largest exact L2 mass (ties to the lower trial index) and
// records the sampled sup of |Q| / Sigma over `probes`.
RWCertificate search_signs(const PackingResult& packing, int k, const CoveringMap& map,
                           std::uint64_t seed, std::size_t trials,
                           const BoundarySampleSet& probes);

FPolynomial normalize_to_W(const RWCertificate& certificate, const FPolynomial& q);

// The W polynomial of a certificate, rotated centers included.
FPolynomial build_W(const PackingResult& packing, const RWCertificate& certificate,
                    const CoveringMap& map);

// Chooses among the identity and `rotation_trials` Haar unitaries U the one
// maximizing int |W_U|^2 dmu, where W_U is rebuilt from centers U f(omega_j).
RWCertificate adapt_to_measure(const PackingResult& packing, const RWCertificate& base,
                               const BoundarySampleSet& mu, const CoveringMap& map,
                               std::uint64_t seed, std::size_t rotation_trials);
// Same, over an explicit candidate list.
RWCertificate adapt_to_measure(const PackingResult& packing, const RWCertificate& base,
                               const BoundarySampleSet& mu, const CoveringMap& map,
                               std::span<const Unitary2> candidates);

nlohmann::json to_json(const RWCertificate& certificate);

}  // namespace innerfn

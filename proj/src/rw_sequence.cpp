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

#include "innerfn/rw_sequence.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "innerfn/errors.hpp"

namespace innerfn {

namespace {

// C(k, i) conj(eta1)^i conj(eta2)^(k-i), i = 0..k.
std::vector<Complex> kernel_power_coefficients(const ComplexPoint2& eta, int k) {
  const Complex w1 = std::conj(eta.z1);
  const Complex w2 = std::conj(eta.z2);
  std::vector<Complex> out(static_cast<std::size_t>(k) + 1);
  if (k <= 1000) {
    std::vector<Complex> p1(out.size()), p2(out.size());
    p1[0] = p2[0] = 1.0;
    for (int i = 1; i <= k; ++i) {
      p1[i] = p1[i - 1] * w1;
      p2[i] = p2[i - 1] * w2;
    }
    double binom = 1.0;
    for (int i = 0; i <= k; ++i) {
      out[i] = binom * p1[i] * p2[k - i];
      binom = binom * (k - i) / (i + 1);
    }
    return out;
  }
  // Log-space for degrees where C(k, i) overflows.
  const double l1 = std::log(std::abs(w1)), l2 = std::log(std::abs(w2));
  const double t1 = std::arg(w1), t2 = std::arg(w2);
  for (int i = 0; i <= k; ++i) {
    const double log_binom = std::lgamma(k + 1.0) - std::lgamma(i + 1.0) - std::lgamma(k - i + 1.0);
    const double log_mag = log_binom + (i > 0 ? i * l1 : 0.0) + (k - i > 0 ? (k - i) * l2 : 0.0);
    out[i] = std::polar(std::exp(log_mag), i * t1 + (k - i) * t2);
  }
  return out;
}

std::vector<std::vector<Complex>> all_coefficients(std::span<const ComplexPoint2> images, int k) {
  std::vector<std::vector<Complex>> out;
  out.reserve(images.size());
  for (const auto& eta : images) out.push_back(kernel_power_coefficients(eta, k));
  return out;
}

std::vector<Complex> combine(const std::vector<std::vector<Complex>>& coeffs,
                             const SignVector& signs, int k) {
  std::vector<Complex> c(static_cast<std::size_t>(k) + 1, Complex(0.0));
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    const double s = signs.signs[j];
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += s * coeffs[j][i];
  }
  return c;
}

double l2_of_coefficients(const std::vector<Complex>& c, int k, const CoveringMap& map) {
  double total = 0.0;
  for (int i = 0; i <= k; ++i) total += std::norm(c[i]) * monomial_integral_value({i, k - i});
  return map.sheet_count() * total;
}

FPolynomial polynomial_of_coefficients(const std::vector<Complex>& c, int k) {
  FPolynomial p;
  for (int i = 0; i <= k; ++i) p.add_term({i, k - i}, {0, 0}, c[i]);
  return p;
}

void check_signs(const SignVector& signs, std::size_t K) {
  if (signs.signs.size() != K) {
    throw DomainError("sign vector length " + std::to_string(signs.signs.size()) +
                      " does not match " + std::to_string(K) + " centers");
  }
  for (int s : signs.signs) {
    if (s != 1 && s != -1) throw DomainError("signs must be +1 or -1");
  }
}

std::vector<ComplexPoint2> rotated(std::span<const ComplexPoint2> images, const Unitary2& u) {
  std::vector<ComplexPoint2> out;
  out.reserve(images.size());
  for (const auto& eta : images) out.push_back(apply_unitary(u, eta));
  return out;
}

double sampled_sup(const FPolynomial& w, const BoundarySampleSet& probes, const CoveringMap& map) {
  double sup = 0.0;
  for (const Complex& v : evaluate_images(w, probes.images(map))) sup = std::max(sup, std::abs(v));
  return sup;
}

}  // namespace

double shell_sigma_constant(double tail_cutoff) {
  double total = 0.0;
  for (int m = 0;; ++m) {
    const double term = (m + 2.0) * (m + 2.0) * std::exp(-0.5 * m * m);
    total += term;
    const double next = (m + 3.0) * (m + 3.0) * std::exp(-0.5 * (m + 1.0) * (m + 1.0));
    if (next < tail_cutoff) break;
  }
  return total;
}

Unitary2 haar_unitary(std::mt19937_64& engine) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::Matrix2cd z;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) z(i, j) = Complex(gauss(engine), gauss(engine)) / std::sqrt(2.0);
  }
  Eigen::HouseholderQR<Eigen::Matrix2cd> qr(z);
  Eigen::Matrix2cd q = qr.householderQ();
  const Eigen::Matrix2cd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < 2; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(j) *= d / mag;
  }
  return q;
}

ComplexPoint2 apply_unitary(const Unitary2& u, const ComplexPoint2& p) {
  return {u(0, 0) * p.z1 + u(0, 1) * p.z2, u(1, 0) * p.z1 + u(1, 1) * p.z2};
}

FPolynomial build_Q(std::span<const ComplexPoint2> center_images, const SignVector& signs, int k) {
  if (k < 1) throw DegreeError("build_Q: degree must be >= 1");
  check_signs(signs, center_images.size());
  return polynomial_of_coefficients(combine(all_coefficients(center_images, k), signs, k), k);
}

FPolynomial build_Q(const PackingResult& packing, const SignVector& signs, int k,
                    const CoveringMap& /*map*/) {
  return build_Q(packing.images, signs, k);
}

double exact_l2_mass(std::span<const ComplexPoint2> center_images, const SignVector& signs, int k,
                     const CoveringMap& map) {
  if (k < 1) throw DegreeError("exact_l2_mass: degree must be >= 1");
  check_signs(signs, center_images.size());
  return l2_of_coefficients(combine(all_coefficients(center_images, k), signs, k), k, map);
}

RWCertificate search_signs(const PackingResult& packing, int k, const CoveringMap& map,
                           std::uint64_t seed, std::size_t trials,
                           const BoundarySampleSet& probes) {
  if (k < 1) throw DegreeError("search_signs: degree must be >= 1");
  if (packing.size() == 0) throw EmptyInputError("search_signs: empty packing");
  const std::size_t K = packing.size();
  const auto coeffs = all_coefficients(packing.images, k);

  std::mt19937_64 engine(seed);
  SignVector best{std::vector<int>(K, 1), 0};
  double best_value = l2_of_coefficients(combine(coeffs, best, k), k, map);
  SignVector trial{std::vector<int>(K, 1), 0};
  for (std::size_t t = 1; t <= trials; ++t) {
    std::uint64_t bits = 0;
    for (std::size_t j = 0; j < K; ++j) {
      if (j % 64 == 0) bits = engine();
      trial.signs[j] = (bits >> (j % 64)) & 1U ? 1 : -1;
    }
    trial.trial_index = t;
    const double value = l2_of_coefficients(combine(coeffs, trial, k), k, map);
    if (value > best_value) {
      best_value = value;
      best = trial;
    }
  }

  RWCertificate cert;
  cert.k = k;
  cert.r = packing.r;
  cert.K = K;
  cert.signs = best;
  cert.sigma = shell_sigma_constant();
  cert.l2_mass = {Complex(best_value, 0.0), 0.0, 0};
  cert.mean_l2 = static_cast<double>(K) * map.sheet_count() / (1.0 + k);
  cert.trials = trials + 1;
  const FPolynomial w = normalize_to_W(cert, polynomial_of_coefficients(combine(coeffs, best, k), k));
  cert.sup_bound_check = sampled_sup(w, probes, map);
  cert.sup_probe_count = probes.count();
  return cert;
}

FPolynomial normalize_to_W(const RWCertificate& certificate, const FPolynomial& q) {
  if (!(certificate.sigma > 0.0)) throw DomainError("normalize_to_W: Sigma must be positive");
  return q * Complex(1.0 / certificate.sigma, 0.0);
}

FPolynomial build_W(const PackingResult& packing, const RWCertificate& certificate,
                    const CoveringMap& /*map*/) {
  const std::vector<ComplexPoint2> images =
      certificate.rotation ? rotated(packing.images, *certificate.rotation) : packing.images;
  return normalize_to_W(certificate, build_Q(images, certificate.signs, certificate.k));
}

RWCertificate adapt_to_measure(const PackingResult& packing, const RWCertificate& base,
                               const BoundarySampleSet& mu, const CoveringMap& map,
                               std::uint64_t seed, std::size_t rotation_trials) {
  std::mt19937_64 engine(seed);
  std::vector<Unitary2> candidates;
  candidates.reserve(rotation_trials + 1);
  candidates.push_back(Unitary2::Identity());
  for (std::size_t t = 0; t < rotation_trials; ++t) candidates.push_back(haar_unitary(engine));
  return adapt_to_measure(packing, base, mu, map, candidates);
}

RWCertificate adapt_to_measure(const PackingResult& packing, const RWCertificate& base,
                               const BoundarySampleSet& mu, const CoveringMap& map,
                               std::span<const Unitary2> candidates) {
  if (candidates.empty()) throw EmptyInputError("adapt_to_measure: no candidate rotations");
  const double mass = mu.total_mass();
  if (!(mass > 0.0)) throw DomainError("adapt_to_measure: measure has no mass");
  const std::vector<ComplexPoint2> mu_images = mu.images(map);

  RWCertificate out = base;
  double best_ratio = -1.0;
  double ratio_sum = 0.0;
  for (std::size_t t = 0; t < candidates.size(); ++t) {
    RWCertificate trial = base;
    trial.rotation = candidates[t];
    const FPolynomial w = build_W(packing, trial, map);
    std::vector<double> modulus_sq;
    modulus_sq.reserve(mu_images.size());
    for (const Complex& v : evaluate_images(w, mu_images)) modulus_sq.push_back(std::norm(v));
    const IntegralEstimate est = integrate_values(std::span<const double>(modulus_sq), mu);
    const double ratio = est.value.real() / mass;
    ratio_sum += ratio;
    if (ratio > best_ratio) {
      best_ratio = ratio;
      // The rotated W has its own sup; recheck it on the measure's points.
      out.sup_bound_check = std::sqrt(*std::max_element(modulus_sq.begin(), modulus_sq.end()));
      out.sup_probe_count = mu_images.size();
      out.rotation = candidates[t];
      out.rotation_trial = t;
      out.measure_mass = est;
      out.measure_ratio = ratio;
    }
  }
  out.average_measure_ratio = ratio_sum / static_cast<double>(candidates.size());
  Unitary2 u = *out.rotation;
  const std::vector<ComplexPoint2> turned = rotated(packing.images, u);
  out.l2_mass = {Complex(exact_l2_mass(turned, out.signs, out.k, map), 0.0), 0.0, 0};
  return out;
}

nlohmann::json to_json(const RWCertificate& c) {
  nlohmann::json j = {{"k", c.k},
                      {"r", c.r},
                      {"K", c.K},
                      {"signs", c.signs.signs},
                      {"sign_trial_index", c.signs.trial_index},
                      {"sign_trials", c.trials},
                      {"Sigma", c.sigma},
                      {"l2_mass_Q", c.l2_mass.value.real()},
                      {"l2_mass_W", c.l2_mass_W()},
                      {"mean_l2_mass_Q", c.mean_l2},
                      {"meets_mean_floor", c.meets_mean_floor()},
                      {"c_measured", c.l2_mass_W()},
                      {"sup_W_sampled", c.sup_bound_check},
                      {"sup_W_sampled_note", "maximum over probe points; underestimates the true sup"},
                      {"sup_probe_count", c.sup_probe_count}};
  if (c.measure_mass) {
    j["measure_mass"] = {{"value", c.measure_mass->value.real()},
                         {"std_error", c.measure_mass->std_error},
                         {"sample_count", c.measure_mass->sample_count}};
    j["measure_ratio"] = *c.measure_ratio;
    j["average_measure_ratio"] = *c.average_measure_ratio;
  }
  if (c.rotation) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < 2; ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (int k = 0; k < 2; ++k) row.push_back({(*c.rotation)(i, k).real(), (*c.rotation)(i, k).imag()});
      rows.push_back(row);
    }
    j["rotation"] = rows;
    j["rotation_trial"] = c.rotation_trial;
  }
  return j;
}

}  // namespace innerfn

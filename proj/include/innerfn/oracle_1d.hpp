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
#include <json.hpp>
#include <vector>

namespace innerfn::oracle {

using Complex = std::complex<double>;

// B(z) = e^{i theta} z^k prod_i (|a_i| / a_i) (a_i - z) / (1 - conj(a_i) z).
// A zero at the origin belongs in `order_at_zero`, not in `zeros`.
struct BlaschkeSpec {
  std::vector<Complex> zeros;
  int order_at_zero = 0;
  double theta = 0.0;
};

struct SingularAtom {
  double angle = 0.0;
  double mass = 0.0;
};

// G(z) = exp(-sum_j m_j (zeta_j + z) / (zeta_j - z)), zeta_j = e^{i angle_j}.
struct SingularSpec {
  std::vector<SingularAtom> atoms;
};

// Validates |a_i| in (0, 1), k >= 0, masses > 0; throws DomainError.
void validate(const BlaschkeSpec& spec);
void validate(const SingularSpec& spec);

// Throws PoleError at z = 1 / conj(a_i), DomainError for |z| > 1.
Complex blaschke_eval(const BlaschkeSpec& spec, Complex z);
// Requires |z| < 1.
Complex singular_eval(const SingularSpec& spec, Complex z);

BlaschkeSpec concatenate(const BlaschkeSpec& x, const BlaschkeSpec& y);

nlohmann::json to_json(const BlaschkeSpec& spec);
nlohmann::json to_json(const SingularSpec& spec);
BlaschkeSpec blaschke_from_json(const nlohmann::json& j);
SingularSpec singular_from_json(const nlohmann::json& j);

}  // namespace innerfn::oracle

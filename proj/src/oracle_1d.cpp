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

#include "innerfn/oracle_1d.hpp"

#include <cmath>

#include "innerfn/errors.hpp"

namespace innerfn::oracle {

void validate(const BlaschkeSpec& spec) {
  if (spec.order_at_zero < 0) throw DomainError("Blaschke order at zero must be >= 0");
  for (const Complex& a : spec.zeros) {
    const double m = std::abs(a);
    if (!(m > 0.0 && m < 1.0)) throw DomainError("Blaschke zeros must satisfy 0 < |a| < 1");
  }
}

void validate(const SingularSpec& spec) {
  for (const auto& atom : spec.atoms) {
    if (!(atom.mass > 0.0)) throw DomainError("singular atom masses must be positive");
  }
}

Complex blaschke_eval(const BlaschkeSpec& spec, Complex z) {
  validate(spec);
  for (const Complex& a : spec.zeros) {
    if (std::abs(1.0 - std::conj(a) * z) < 1e-15) {
      throw PoleError("blaschke_eval: evaluation at a reflected zero");
    }
  }
  if (std::abs(z) > 1.0 + 1e-12) throw DomainError("blaschke_eval: |z| must be <= 1");
  Complex out = std::polar(1.0, spec.theta);
  for (int i = 0; i < spec.order_at_zero; ++i) out *= z;
  for (const Complex& a : spec.zeros) {
    out *= (std::abs(a) / a) * (a - z) / (1.0 - std::conj(a) * z);
  }
  return out;
}

Complex singular_eval(const SingularSpec& spec, Complex z) {
  validate(spec);
  if (!(std::abs(z) < 1.0)) throw DomainError("singular_eval: |z| must be < 1");
  Complex exponent = 0.0;
  for (const auto& atom : spec.atoms) {
    const Complex zeta = std::polar(1.0, atom.angle);
    exponent -= atom.mass * (zeta + z) / (zeta - z);
  }
  return std::exp(exponent);
}

BlaschkeSpec concatenate(const BlaschkeSpec& x, const BlaschkeSpec& y) {
  BlaschkeSpec out = x;
  out.zeros.insert(out.zeros.end(), y.zeros.begin(), y.zeros.end());
  out.order_at_zero += y.order_at_zero;
  out.theta += y.theta;
  return out;
}

nlohmann::json to_json(const BlaschkeSpec& spec) {
  nlohmann::json zeros = nlohmann::json::array();
  for (const Complex& a : spec.zeros) zeros.push_back({a.real(), a.imag()});
  return {{"zeros", zeros}, {"order_at_zero", spec.order_at_zero}, {"theta", spec.theta}};
}

nlohmann::json to_json(const SingularSpec& spec) {
  nlohmann::json atoms = nlohmann::json::array();
  for (const auto& atom : spec.atoms) atoms.push_back({{"angle", atom.angle}, {"mass", atom.mass}});
  return {{"atoms", atoms}};
}

BlaschkeSpec blaschke_from_json(const nlohmann::json& j) {
  BlaschkeSpec spec;
  for (const auto& z : j.at("zeros")) spec.zeros.emplace_back(z.at(0).get<double>(), z.at(1).get<double>());
  spec.order_at_zero = j.value("order_at_zero", 0);
  spec.theta = j.value("theta", 0.0);
  validate(spec);
  return spec;
}

SingularSpec singular_from_json(const nlohmann::json& j) {
  SingularSpec spec;
  for (const auto& a : j.at("atoms")) spec.atoms.push_back({a.at("angle").get<double>(), a.at("mass").get<double>()});
  validate(spec);
  return spec;
}

}  // namespace innerfn::oracle

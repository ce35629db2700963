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

#include <cstddef>
#include <json.hpp>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "innerfn/covering_domain.hpp"
#include "innerfn/sphere_measure.hpp"

namespace innerfn {

// Exponents of one mixed monomial f^a conj(f)^b.
struct Term {
  MultiIndex a;  // holomorphic
  MultiIndex b;  // antiholomorphic

  int symbol_degree() const { return a.total() + b.total(); }
  friend auto operator<=>(const Term&, const Term&) = default;
};

inline constexpr std::size_t kDefaultTermCap = 100000;

// Finite combination sum c_{a,b} f^a conj(f)^b of mixed monomials in the
// components of the covering map. Canonical: no stored zero coefficients,
// terms ordered by exponents, so equality and iteration are deterministic.
class FPolynomial {
 public:
  using TermMap = std::map<Term, Complex>;

  FPolynomial() = default;

  static FPolynomial constant(Complex c);
  static FPolynomial monomial(MultiIndex a, MultiIndex b = {}, Complex c = 1.0);
  static FPolynomial f1() { return monomial({1, 0}); }
  static FPolynomial f2() { return monomial({0, 1}); }

  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  Complex coefficient(const Term& t) const;

  void add_term(MultiIndex a, MultiIndex b, Complex c);

  FPolynomial& operator+=(const FPolynomial& other);
  FPolynomial& operator-=(const FPolynomial& other);
  FPolynomial& operator*=(Complex s);
  friend FPolynomial operator+(FPolynomial x, const FPolynomial& y) { return x += y; }
  friend FPolynomial operator-(FPolynomial x, const FPolynomial& y) { return x -= y; }
  friend FPolynomial operator*(FPolynomial x, Complex s) { return x *= s; }
  friend FPolynomial operator*(Complex s, FPolynomial x) { return x *= s; }
  friend bool operator==(const FPolynomial&, const FPolynomial&) = default;

  bool holomorphic_only() const;
  // Total degrees |a| of the holomorphic terms (the degree support of an
  // (E, f)-polynomial).
  std::set<int> holomorphic_degrees() const;
  int max_symbol_degree() const;
  // Drop coefficients with |c| <= tol.
  FPolynomial pruned(double tol) const;

 private:
  TermMap terms_;
};

// degree = k when every term is holomorphic of total degree k; nullopt for
// inhomogeneous input and for the zero polynomial.
struct HomogeneityCertificate {
  std::optional<int> degree;
};
HomogeneityCertificate homogeneity(const FPolynomial& p);

FPolynomial multiply(const FPolynomial& p, const FPolynomial& q,
                     std::size_t term_cap = kDefaultTermCap);
FPolynomial conjugate(const FPolynomial& p);

// Value at a boundary point (throws BoundaryError off dM).
Complex evaluate(const FPolynomial& p, const ComplexPoint2& point, const CoveringMap& map);
// Value given the image eta = f(point) directly.
Complex evaluate_image(const FPolynomial& p, const ComplexPoint2& image);
std::vector<Complex> evaluate_images(const FPolynomial& p, std::span<const ComplexPoint2> images);

// int_dM p conj(q) dsigma_M by monomial orthogonality; exact up to
// double rounding of the coefficients.
Complex inner_product(const FPolynomial& p, const FPolynomial& q, const CoveringMap& map);
double norm_squared(const FPolynomial& p, const CoveringMap& map);

// Orthogonal projection onto holomorphic polynomials in f. The mixed monomial
// f^a conj(f)^b goes to
//   (a!/(1+|a|)!) ((1+|a-b|)!/(a-b)!) f^(a-b)   if a >= b componentwise,
// and to 0 otherwise.
FPolynomial szego_project(const FPolynomial& p, const CoveringMap& map);
// Coefficient above, computed as a product of |b| ratios.
double szego_ratio(MultiIndex a, MultiIndex b);

// Degree k + |alpha| - |beta| of the projection of (degree-k homogeneous) *
// f^alpha conj(f)^beta; negative means the projection vanishes.
int cauchy_transform_degree(int k, MultiIndex alpha, MultiIndex beta);

nlohmann::json to_json(const FPolynomial& p);
FPolynomial polynomial_from_json(const nlohmann::json& j);

}  // namespace innerfn

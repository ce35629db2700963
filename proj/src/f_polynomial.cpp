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

#include "innerfn/f_polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "innerfn/errors.hpp"

namespace innerfn {

namespace {

struct Powers {
  std::vector<Complex> z1, z2, w1, w2;  // w = conj(z)

  void fill(const ComplexPoint2& p, int m1, int m2, int n1, int n2) {
    auto table = [](std::vector<Complex>& t, Complex base, int top) {
      t.resize(static_cast<std::size_t>(top) + 1);
      t[0] = 1.0;
      for (int i = 1; i <= top; ++i) t[i] = t[i - 1] * base;
    };
    table(z1, p.z1, m1);
    table(z2, p.z2, m2);
    table(w1, std::conj(p.z1), n1);
    table(w2, std::conj(p.z2), n2);
  }
};

}  // namespace

FPolynomial FPolynomial::constant(Complex c) { return monomial({0, 0}, {0, 0}, c); }

FPolynomial FPolynomial::monomial(MultiIndex a, MultiIndex b, Complex c) {
  FPolynomial p;
  p.add_term(a, b, c);
  return p;
}

Complex FPolynomial::coefficient(const Term& t) const {
  auto it = terms_.find(t);
  return it == terms_.end() ? Complex(0.0) : it->second;
}

void FPolynomial::add_term(MultiIndex a, MultiIndex b, Complex c) {
  if (a.a1 < 0 || a.a2 < 0 || b.a1 < 0 || b.a2 < 0) {
    throw DomainError("polynomial exponents must be nonnegative");
  }
  if (c == Complex(0.0)) return;
  auto [it, inserted] = terms_.try_emplace(Term{a, b}, c);
  if (!inserted) {
    it->second += c;
    if (it->second == Complex(0.0)) terms_.erase(it);
  }
}

FPolynomial& FPolynomial::operator+=(const FPolynomial& other) {
  for (const auto& [t, c] : other.terms_) add_term(t.a, t.b, c);
  return *this;
}

FPolynomial& FPolynomial::operator-=(const FPolynomial& other) {
  for (const auto& [t, c] : other.terms_) add_term(t.a, t.b, -c);
  return *this;
}

FPolynomial& FPolynomial::operator*=(Complex s) {
  if (s == Complex(0.0)) {
    terms_.clear();
    return *this;
  }
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= s;
    if (it->second == Complex(0.0)) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
  return *this;
}

bool FPolynomial::holomorphic_only() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const auto& kv) { return kv.first.b.total() == 0; });
}

std::set<int> FPolynomial::holomorphic_degrees() const {
  std::set<int> out;
  for (const auto& [t, c] : terms_) {
    if (t.b.total() == 0) out.insert(t.a.total());
  }
  return out;
}

int FPolynomial::max_symbol_degree() const {
  int top = 0;
  for (const auto& [t, c] : terms_) top = std::max(top, t.symbol_degree());
  return top;
}

FPolynomial FPolynomial::pruned(double tol) const {
  FPolynomial out;
  for (const auto& [t, c] : terms_) {
    if (std::abs(c) > tol) out.terms_.emplace(t, c);
  }
  return out;
}

HomogeneityCertificate homogeneity(const FPolynomial& p) {
  if (p.is_zero()) return {};
  const int k = p.terms().begin()->first.a.total();
  for (const auto& [t, c] : p.terms()) {
    if (t.b.total() != 0 || t.a.total() != k) return {};
  }
  return {k};
}

FPolynomial multiply(const FPolynomial& p, const FPolynomial& q, std::size_t term_cap) {
  FPolynomial out;
  for (const auto& [tp, cp] : p.terms()) {
    for (const auto& [tq, cq] : q.terms()) {
      out.add_term(tp.a + tq.a, tp.b + tq.b, cp * cq);
      if (out.size() > term_cap) {
        throw TermBudgetError("product exceeds term cap of " + std::to_string(term_cap));
      }
    }
  }
  return out;
}

FPolynomial conjugate(const FPolynomial& p) {
  FPolynomial out;
  for (const auto& [t, c] : p.terms()) out.add_term(t.b, t.a, std::conj(c));
  return out;
}

Complex evaluate(const FPolynomial& p, const ComplexPoint2& point, const CoveringMap& map) {
  map.require_boundary(point);
  return evaluate_image(p, map.apply(point));
}

Complex evaluate_image(const FPolynomial& p, const ComplexPoint2& image) {
  return evaluate_images(p, std::span<const ComplexPoint2>(&image, 1)).front();
}

std::vector<Complex> evaluate_images(const FPolynomial& p, std::span<const ComplexPoint2> images) {
  struct Flat {
    int a1, a2, b1, b2;
    Complex c;
  };
  std::vector<Flat> flat;
  flat.reserve(p.size());
  int m1 = 0, m2 = 0, n1 = 0, n2 = 0;
  for (const auto& [t, c] : p.terms()) {
    flat.push_back({t.a.a1, t.a.a2, t.b.a1, t.b.a2, c});
    m1 = std::max(m1, t.a.a1);
    m2 = std::max(m2, t.a.a2);
    n1 = std::max(n1, t.b.a1);
    n2 = std::max(n2, t.b.a2);
  }
  std::vector<Complex> out(images.size(), Complex(0.0));
  Powers pw;
  for (std::size_t i = 0; i < images.size(); ++i) {
    pw.fill(images[i], m1, m2, n1, n2);
    Complex sum = 0.0;
    for (const Flat& f : flat) sum += f.c * (pw.z1[f.a1] * pw.z2[f.a2]) * (pw.w1[f.b1] * pw.w2[f.b2]);
    out[i] = sum;
  }
  return out;
}

Complex inner_product(const FPolynomial& p, const FPolynomial& q, const CoveringMap& map) {
  // f^a conj(f)^b * conj(f^a' conj(f)^b') = f^(a+b') conj(f)^(b+a') integrates
  // to zero unless a - b == a' - b'; bucket q by that charge.
  std::map<std::pair<int, int>, std::vector<std::pair<Term, Complex>>> buckets;
  for (const auto& [t, c] : q.terms()) {
    buckets[{t.a.a1 - t.b.a1, t.a.a2 - t.b.a2}].emplace_back(t, c);
  }
  Complex total = 0.0;
  for (const auto& [tp, cp] : p.terms()) {
    auto it = buckets.find({tp.a.a1 - tp.b.a1, tp.a.a2 - tp.b.a2});
    if (it == buckets.end()) continue;
    for (const auto& [tq, cq] : it->second) {
      total += cp * std::conj(cq) * monomial_integral_value(tp.a + tq.b);
    }
  }
  return static_cast<double>(map.sheet_count()) * total;
}

double norm_squared(const FPolynomial& p, const CoveringMap& map) {
  return inner_product(p, p, map).real();
}

double szego_ratio(MultiIndex a, MultiIndex b) {
  const MultiIndex g = a - b;
  // Numerator factors: (g1+1)..a1 and (g2+1)..a2. Denominator factors:
  // (|g|+2)..(|a|+1). Both lists have |b| entries.
  std::vector<double> num;
  num.reserve(static_cast<std::size_t>(b.total()));
  for (int j = g.a1 + 1; j <= a.a1; ++j) num.push_back(j);
  for (int j = g.a2 + 1; j <= a.a2; ++j) num.push_back(j);
  double ratio = 1.0;
  int den = g.total() + 2;
  for (double n : num) ratio *= n / den++;
  return ratio;
}

FPolynomial szego_project(const FPolynomial& p, const CoveringMap& /*map*/) {
  FPolynomial out;
  for (const auto& [t, c] : p.terms()) {
    if (t.a.a1 < t.b.a1 || t.a.a2 < t.b.a2) continue;
    out.add_term(t.a - t.b, {0, 0}, c * szego_ratio(t.a, t.b));
  }
  return out;
}

int cauchy_transform_degree(int k, MultiIndex alpha, MultiIndex beta) {
  if (k < 0) throw DegreeError("cauchy_transform_degree: k must be >= 0");
  return k + alpha.total() - beta.total();
}

nlohmann::json to_json(const FPolynomial& p) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [t, c] : p.terms()) {
    out.push_back({{"a", {t.a.a1, t.a.a2}},
                   {"b", {t.b.a1, t.b.a2}},
                   {"re", c.real()},
                   {"im", c.imag()}});
  }
  return out;
}

FPolynomial polynomial_from_json(const nlohmann::json& j) {
  FPolynomial p;
  for (const auto& term : j) {
    const auto& a = term.at("a");
    const auto& b = term.at("b");
    p.add_term({a.at(0).get<int>(), a.at(1).get<int>()}, {b.at(0).get<int>(), b.at(1).get<int>()},
               Complex(term.at("re").get<double>(), term.at("im").get<double>()));
  }
  return p;
}

}  // namespace innerfn

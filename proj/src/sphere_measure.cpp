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

#include "innerfn/sphere_measure.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <random>
#include <sstream>
#include <string>

#include "innerfn/errors.hpp"

namespace innerfn {

namespace {

boost::multiprecision::cpp_int factorial(int n) {
  boost::multiprecision::cpp_int out = 1;
  for (int i = 2; i <= n; ++i) out *= i;
  return out;
}

template <class T, class Value>
IntegralEstimate reduce(std::span<const T> values, const BoundarySampleSet& samples,
                        Value&& raw_value_at) {
  const std::size_t n = values.size();
  // Uniform sets reduce the unweighted values and scale once at the end.
  const bool uniform = samples.uniform();
  const double scale = uniform ? samples.mass / static_cast<double>(n) : 1.0;
  auto value_at = [&](std::size_t i) {
    return uniform ? raw_value_at(i) : samples.weights[i] * raw_value_at(i);
  };
  if (n != samples.count()) throw DomainError("integrate: value count does not match samples");
  IntegralEstimate out;
  out.sample_count = n;
  if (n == 0) return out;

  Complex total = 0.0;
  for (std::size_t start = 0; start < n; start += kReductionChunk) {
    const std::size_t stop = std::min(n, start + kReductionChunk);
    Complex partial = 0.0;
    for (std::size_t i = start; i < stop; ++i) partial += value_at(i);
    total += partial;
  }
  out.value = uniform ? total * samples.mass / static_cast<double>(n) : total;
  if (n < 2) return out;

  const Complex mean = total / static_cast<double>(n);
  double spread = 0.0;
  for (std::size_t start = 0; start < n; start += kReductionChunk) {
    const std::size_t stop = std::min(n, start + kReductionChunk);
    double partial = 0.0;
    for (std::size_t i = start; i < stop; ++i) partial += std::norm(value_at(i) - mean);
    spread += partial;
  }
  const double variance = spread / static_cast<double>(n - 1);
  out.std_error = scale * std::sqrt(static_cast<double>(n) * variance);
  return out;
}

void check_finite(Complex v) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    throw NonFiniteError("integrand is not finite at a sample point");
  }
}

}  // namespace

Complex monomial(const ComplexPoint2& z, MultiIndex a) {
  Complex out = 1.0;
  for (int i = 0; i < a.a1; ++i) out *= z.z1;
  for (int i = 0; i < a.a2; ++i) out *= z.z2;
  return out;
}

Rational monomial_integral(MultiIndex a) {
  if (a.a1 < 0 || a.a2 < 0) throw DomainError("multi-index components must be nonnegative");
  return Rational(factorial(a.a1) * factorial(a.a2), factorial(1 + a.total()));
}

Rational mixed_monomial_integral(MultiIndex a, MultiIndex b) {
  if (a != b) return Rational(0);
  return monomial_integral(a);
}

Rational pulled_back_monomial_integral(const CoveringMap& map, MultiIndex a, MultiIndex b) {
  return map.sheet_count() * mixed_monomial_integral(a, b);
}

double monomial_integral_value(MultiIndex a) {
  const int n = a.total();
  const int k = std::min(a.a1, a.a2);
  if (n > 1000) {
    return std::exp(std::lgamma(a.a1 + 1.0) + std::lgamma(a.a2 + 1.0) - std::lgamma(n + 2.0));
  }
  double binom = 1.0;
  for (int i = 1; i <= k; ++i) binom = binom * (n - k + i) / i;
  return 1.0 / ((n + 1) * binom);
}

double cap_measure(double delta) {
  if (!(delta > 0.0 && delta <= 1.0)) throw DomainError("cap radius must lie in (0, 1]");
  return delta * delta;
}

std::vector<ComplexPoint2> sample_sphere(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 engine(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<ComplexPoint2> out;
  out.reserve(count);
  while (out.size() < count) {
    const double x0 = gauss(engine), x1 = gauss(engine), x2 = gauss(engine), x3 = gauss(engine);
    const double norm = std::sqrt(x0 * x0 + x1 * x1 + x2 * x2 + x3 * x3);
    if (norm == 0.0) continue;
    out.push_back({Complex(x0 / norm, x1 / norm), Complex(x2 / norm, x3 / norm)});
  }
  return out;
}

double BoundarySampleSet::total_mass() const {
  if (weights.empty()) return mass;
  double total = 0.0;
  for (double w : weights) total += w;
  return total;
}

std::vector<ComplexPoint2> BoundarySampleSet::images(const CoveringMap& map) const {
  std::vector<ComplexPoint2> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(map.apply(p));
  return out;
}

BoundarySampleSet sample_boundary(const CoveringMap& map, std::uint64_t seed, std::size_t count) {
  if (count == 0) throw DomainError("sample count must be >= 1");
  const int sheets = map.sheet_count();
  std::mt19937_64 engine(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_int_distribution<int> sheet_dist(0, sheets - 1);

  BoundarySampleSet out;
  out.seed = seed;
  out.q = map.exponent();
  out.mass = static_cast<double>(sheets);
  out.points.reserve(count);
  while (out.points.size() < count) {
    const double x0 = gauss(engine), x1 = gauss(engine), x2 = gauss(engine), x3 = gauss(engine);
    const int sheet = sheet_dist(engine);
    const double norm = std::sqrt(x0 * x0 + x1 * x1 + x2 * x2 + x3 * x3);
    const ComplexPoint2 s{Complex(x0 / norm, x1 / norm), Complex(x2 / norm, x3 / norm)};
    if (norm == 0.0 || (sheets > 1 && std::abs(s.z2) < kRamificationGuard)) {
      ++out.resample_count;
      continue;
    }
    out.points.push_back(map.lift(s, sheet));
  }
  return out;
}

BoundarySampleSet reweighted(const BoundarySampleSet& base, std::vector<double> weights) {
  if (weights.size() != base.count()) throw DomainError("reweighted: weight count mismatch");
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw DomainError("reweighted: weights must be >= 0");
  }
  BoundarySampleSet out = base;
  out.weights = std::move(weights);
  return out;
}

IntegralEstimate integrate_boundary(const std::function<Complex(const ComplexPoint2&)>& g,
                                    const BoundarySampleSet& samples) {
  std::vector<Complex> values;
  values.reserve(samples.count());
  for (const auto& p : samples.points) {
    const Complex v = g(p);
    check_finite(v);
    values.push_back(v);
  }
  return integrate_values(std::span<const Complex>(values), samples);
}

IntegralEstimate integrate_values(std::span<const Complex> values,
                                  const BoundarySampleSet& samples) {
  for (const Complex& v : values) check_finite(v);
  return reduce(values, samples, [&](std::size_t i) { return values[i]; });
}

IntegralEstimate integrate_values(std::span<const double> values,
                                  const BoundarySampleSet& samples) {
  for (double v : values) check_finite(v);
  return reduce(values, samples, [&](std::size_t i) { return Complex(values[i], 0.0); });
}

void write_samples(const BoundarySampleSet& samples, const std::filesystem::path& path,
                   SampleFormat format) {
  if (format == SampleFormat::kCsv) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path.string());
    out << std::setprecision(17);
    out << "re_z1,im_z1,re_z2,im_z2,weight\n";
    for (std::size_t i = 0; i < samples.count(); ++i) {
      const auto& p = samples.points[i];
      out << p.z1.real() << ',' << p.z1.imag() << ',' << p.z2.real() << ',' << p.z2.imag()
          << ',' << samples.weight_at(i) << '\n';
    }
  } else {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string());
    for (std::size_t i = 0; i < samples.count(); ++i) {
      const auto& p = samples.points[i];
      const double row[5] = {p.z1.real(), p.z1.imag(), p.z2.real(), p.z2.imag(),
                             samples.weight_at(i)};
      out.write(reinterpret_cast<const char*>(row), sizeof(row));
    }
  }
  nlohmann::json sidecar = {{"seed", samples.seed},
                            {"count", samples.count()},
                            {"q", samples.q},
                            {"resample_count", samples.resample_count},
                            {"mass", samples.total_mass()},
                            {"format", format == SampleFormat::kCsv ? "csv" : "binary"}};
  std::ofstream meta(path.string() + ".json");
  if (!meta) throw IoError("cannot open sidecar for " + path.string());
  meta << sidecar.dump(2) << '\n';
}

BoundarySampleSet read_samples(const std::filesystem::path& path, SampleFormat format) {
  std::ifstream meta(path.string() + ".json");
  if (!meta) throw IoError("missing sidecar " + path.string() + ".json");
  const nlohmann::json sidecar = nlohmann::json::parse(meta);

  BoundarySampleSet out;
  out.seed = sidecar.at("seed").get<std::uint64_t>();
  out.q = sidecar.at("q").get<int>();
  out.resample_count = sidecar.value("resample_count", std::size_t{0});
  const auto count = sidecar.at("count").get<std::size_t>();

  std::vector<double> weights;
  auto push = [&](const double* row) {
    out.points.push_back({Complex(row[0], row[1]), Complex(row[2], row[3])});
    weights.push_back(row[4]);
  };
  if (format == SampleFormat::kCsv) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::stringstream fields(line);
      std::string cell;
      double row[5];
      for (double& x : row) {
        if (!std::getline(fields, cell, ',')) throw IoError("short CSV row in " + path.string());
        x = std::stod(cell);
      }
      push(row);
    }
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    double row[5];
    while (in.read(reinterpret_cast<char*>(row), sizeof(row))) push(row);
  }
  if (out.points.size() != count) throw IoError("sample count disagrees with sidecar");

  const bool uniform = std::all_of(weights.begin(), weights.end(),
                                   [&](double w) { return w == weights.front(); });
  if (uniform && !weights.empty()) {
    out.mass = sidecar.value("mass", weights.front() * static_cast<double>(weights.size()));
  } else {
    out.weights = std::move(weights);
  }
  return out;
}

}  // namespace innerfn

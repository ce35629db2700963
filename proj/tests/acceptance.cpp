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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "innerfn/f_polynomial.hpp"
#include "innerfn/inner_builder.hpp"
#include "innerfn/metric_packing.hpp"
#include "innerfn/oracle_1d.hpp"
#include "innerfn/pipeline.hpp"
#include "innerfn/rw_sequence.hpp"
#include "innerfn/seeding.hpp"
#include "innerfn/sphere_measure.hpp"

using namespace innerfn;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (ok || detail.str().find(what) != std::string::npos) {
      pass = pass && ok;
      return;
    }
    if (!pass) detail << "; ";
    pass = false;
    detail << what;
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Complex random_complex(std::mt19937_64& g) {
  std::normal_distribution<double> n(0.0, 1.0);
  return {n(g), n(g)};
}

ComplexPoint2 random_sphere_point(std::mt19937_64& g) {
  const Complex a = random_complex(g), b = random_complex(g);
  const double s = std::sqrt(std::norm(a) + std::norm(b));
  return {a / s, b / s};
}

double binomial(int n, int k) { return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)); }

// <f, eta>^k expanded by the binomial theorem.
FPolynomial kernel_power(const ComplexPoint2& eta, int k) {
  FPolynomial out;
  for (int i = 0; i <= k; ++i) {
    out.add_term({i, k - i}, {0, 0},
                 binomial(k, i) * std::pow(std::conj(eta.z1), i) * std::pow(std::conj(eta.z2), k - i));
  }
  return out;
}

std::vector<MultiIndex> indices_up_to(int degree) {
  std::vector<MultiIndex> out;
  for (int n = 0; n <= degree; ++n)
    for (int a1 = 0; a1 <= n; ++a1) out.push_back({a1, n - a1});
  return out;
}

PackingResult truncated(PackingResult p, std::size_t K) {
  p.centers.resize(std::min(K, p.centers.size()));
  p.images.resize(p.centers.size());
  return p;
}

Verdict monomial_identities() {
  const auto t0 = std::chrono::steady_clock::now();
  Verdict v;
  std::size_t checks = 0;
  double worst = 0.0;
  for (int q : {1, 2, 3}) {
    const CoveringMap map(q);
    const BoundarySampleSet samples = sample_boundary(map, 1000 + q, 200000);
    const std::vector<ComplexPoint2> images = samples.images(map);
    for (MultiIndex a : indices_up_to(4)) {
      for (MultiIndex b : indices_up_to(4)) {
        std::vector<Complex> values(images.size());
        for (std::size_t i = 0; i < images.size(); ++i) {
          values[i] = monomial(images[i], a) * std::conj(monomial(images[i], b));
        }
        const IntegralEstimate e = integrate_values(std::span<const Complex>(values), samples);
        const double target = pulled_back_monomial_integral(map, a, b).convert_to<double>();
        const double err = std::abs(e.value - target);
        const double tol = 3 * e.std_error + 1e-12 * std::max(1.0, std::abs(target));
        worst = std::max(worst, err / tol);
        ++checks;
        if (err > tol) {
          std::ostringstream s;
          s << "q=" << q << " a=(" << a.a1 << "," << a.a2 << ") b=(" << b.a1 << "," << b.a2 << ")";
          v.require(false, s.str());
        }
      }
    }
  }
  const double elapsed = seconds_since(t0);
  v.require(elapsed < 60.0, "runtime over 60 s");
  v.detail << (v.pass ? "" : "; ") << checks << " monomial pairs, worst |err|/tol " << worst << ", " << elapsed << " s";
  return v;
}

Verdict cap_law() {
  Verdict v;
  const std::vector<ComplexPoint2> points = sample_sphere(2024, 200000);
  std::mt19937_64 g(7);
  const ComplexPoint2 center = random_sphere_point(g);
  double worst = 0.0;
  for (int i = 1; i <= 9; ++i) {
    const double delta = 0.1 * i;
    std::size_t hits = 0;
    for (const auto& p : points) hits += ball_distance(p, center) < delta;
    const double n = static_cast<double>(points.size());
    const double freq = hits / n;
    const double p = cap_measure(delta);
    const double se = std::sqrt(p * (1 - p) / n);
    worst = std::max(worst, std::abs(freq - p) / se);
    v.require(std::abs(p - delta * delta) < 1e-15, "cap_measure formula");
    v.require(std::abs(freq - p) <= 3 * se, "delta=" + std::to_string(delta));
  }
  v.detail << (v.pass ? "" : "; ") << "9 radii, worst z " << worst;
  return v;
}

Verdict kernel_power_identity() {
  Verdict v;
  const CoveringMap map(2);
  const BoundarySampleSet omegas = sample_boundary(map, 33, 20);
  double worst = 0.0;
  for (const auto& omega : omegas.points) {
    const ComplexPoint2 eta = map.apply(omega);
    for (int k = 1; k <= 10; ++k) {
      const double err = std::abs(norm_squared(kernel_power(eta, k), map) - 2.0 / (1 + k));
      worst = std::max(worst, err);
    }
  }
  v.require(worst <= 1e-10, "kernel power off");
  v.detail << (v.pass ? "" : "; ") << "200 cases, max error " << worst;
  return v;
}

Verdict sign_average_law() {
  Verdict v;
  double worst = 0.0;
  std::size_t cases = 0;
  for (int q : {1, 2, 3}) {
    const CoveringMap map(q);
    const BoundarySampleSet candidates = sample_boundary(map, 40 + q, 20000);
    const BoundarySampleSet probes = sample_boundary(map, 50 + q, 2000);
    for (int k : {1, 2, 4, 8}) {
      const PackingResult full = greedy_packing(candidates, 1.0 / std::sqrt(k), map);
      for (std::size_t K : {1, 3, 6, 10}) {
        const PackingResult packing = truncated(full, K);
        const std::size_t n = packing.size();
        double total = 0.0;
        for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
          SignVector s;
          for (std::size_t j = 0; j < n; ++j) s.signs.push_back((mask >> j) & 1 ? -1 : 1);
          total += exact_l2_mass(packing.images, s, k, map);
        }
        const double mean = total / static_cast<double>(std::size_t{1} << n);
        const double law = static_cast<double>(n) * q / (1.0 + k);
        worst = std::max(worst, std::abs(mean - law));
        const RWCertificate cert = search_signs(packing, k, map, 60 + k, 64, probes);
        v.require(cert.meets_mean_floor(), "certificate below K N/(1+k)");
        ++cases;
      }
    }
  }
  v.require(worst <= 1e-10, "sign average off");
  v.detail << (v.pass ? "" : "; ") << cases << " configurations, max |mean - KN/(1+k)| " << worst;
  return v;
}

Verdict packing_bound() {
  Verdict v;
  const CoveringMap map(2);
  const int k = 8;
  const double r = 1.0 / std::sqrt(k);
  const std::uint64_t seed = 1;
  const BoundarySampleSet candidates = sample_boundary(map, derive_seed(seed, 3), 100000);
  const PackingResult packing = greedy_packing(candidates, r, map);
  v.require(packing.size() >= 4, "fewer than 4 centers");
  // Exact pairwise separation, recomputed here.
  double min_sep = 2.0;
  for (std::size_t i = 0; i < packing.size(); ++i)
    for (std::size_t j = i + 1; j < packing.size(); ++j)
      min_sep = std::min(min_sep, ball_distance(packing.images[i], packing.images[j]));
  v.require(min_sep >= r * (1 - 1e-12), "separation below r");
  double worst_cover = 0.0;
  for (const auto& eta : candidates.images(map)) {
    double best = 2.0;
    for (const auto& c : packing.images) best = std::min(best, ball_distance(eta, c));
    worst_cover = std::max(worst_cover, best);
  }
  v.require(worst_cover < 2 * r, "2r cover fails");
  const BoundarySampleSet probes = sample_boundary(map, derive_seed(seed, 4), 100);
  std::size_t worst_shell = 0, worst_cap = 0;
  double worst_ratio = 0.0;
  for (const auto& zeta : probes.points) {
    const ComplexPoint2 eta = map.apply(zeta);
    std::vector<std::size_t> h;
    for (const auto& c : packing.images) {
      const std::size_t m = static_cast<std::size_t>(std::floor(ball_distance(eta, c) / r));
      if (m >= h.size()) h.resize(m + 1, 0);
      ++h[m];
    }
    for (std::size_t m = 0; m < h.size(); ++m) {
      const std::size_t cap = (m + 2) * (m + 2);
      if (static_cast<double>(h[m]) / cap > worst_ratio) {
        worst_ratio = static_cast<double>(h[m]) / cap;
        worst_shell = h[m];
        worst_cap = cap;
      }
    }
    // The library pads to floor(1/r) + 2 shells.
    std::vector<std::size_t> library = shell_histogram(packing, zeta, map);
    h.resize(std::max(h.size(), library.size()), 0);
    library.resize(h.size(), 0);
    v.require(h == library, "shell_histogram disagrees with recount");
  }
  v.require(worst_ratio <= 1.0, "shell count above (m+2)^2");
  v.detail << (v.pass ? "" : "; ") << "K=" << packing.size() << ", min separation/r " << min_sep / r
           << ", cover radius/r " << worst_cover / r << ", tightest shell " << worst_shell << "/" << worst_cap;
  return v;
}

// Sum of (m+2)^2 exp(-m^2/2), smallest terms first in long double.
double sigma_oracle() {
  long double total = 0.0L;
  for (int m = 80; m >= 0; --m) total += (m + 2.0L) * (m + 2.0L) * std::exp(-0.5L * m * m);
  return static_cast<double>(total);
}

Verdict rw_sup_bound() {
  Verdict v;
  const double oracle = sigma_oracle();
  const double s10 = shell_sigma_constant(1e-10), s14 = shell_sigma_constant(1e-14);
  v.require(std::abs(s10 - s14) <= 1e-10, "Sigma unstable across tail cutoffs");
  v.require(std::abs(shell_sigma_constant() - oracle) <= 1e-10, "Sigma disagrees with oracle");
  const CoveringMap map(2);
  const BoundarySampleSet candidates = sample_boundary(map, 70, 100000);
  const BoundarySampleSet search_probes = sample_boundary(map, 71, 10000);
  const BoundarySampleSet probes = sample_boundary(map, 72, 10000);
  std::ostringstream sups;
  for (int k : {4, 8, 16}) {
    const PackingResult packing = greedy_packing(candidates, 1.0 / std::sqrt(k), map);
    const RWCertificate cert = search_signs(packing, k, map, 80 + k, 256, search_probes);
    const FPolynomial w = build_W(packing, cert, map);
    double sup = 0.0;
    for (const Complex& x : evaluate_images(w, probes.images(map))) sup = std::max(sup, std::abs(x));
    v.require(sup <= 1.0, "sup |W| > 1 at k=" + std::to_string(k));
    v.require(homogeneity(w).degree == k, "W not homogeneous");
    sups << " k=" << k << ":" << sup;
  }
  v.detail << (v.pass ? "" : "; ") << "Sigma " << s14 << " (oracle " << oracle << ", cutoff gap " << std::abs(s10 - s14)
           << "), sampled sup" << sups.str();
  return v;
}

Verdict projection_oracle() {
  Verdict v;
  std::mt19937_64 g(90);
  std::uniform_int_distribution<int> deg(0, 5), small(0, 3), count(1, 8);
  double worst = 0.0;
  for (int q : {1, 2, 3}) {
    const CoveringMap map(q);
    for (int t = 0; t < 1000; ++t) {
      FPolynomial p;
      for (int i = count(g); i > 0; --i) {
        const int n = deg(g);
        std::uniform_int_distribution<int> split(0, n);
        const int a1 = split(g);
        p.add_term({a1, n - a1}, {0, 0}, random_complex(g));
      }
      const FPolynomial proj = szego_project(p, map);
      for (const auto& [term, c] : p.terms()) worst = std::max(worst, std::abs(proj.coefficient(term) - c));
      v.require(proj.size() == p.size(), "support changed");
    }
    for (MultiIndex b : indices_up_to(6)) {
      if (b.total() == 0) continue;
      v.require(szego_project(FPolynomial::monomial({0, 0}, b), map).is_zero(), "antiholomorphic monomial survives");
    }
    // Degree shift: P homogeneous of degree k times f^a conj(f)^b lands in degree k + |a| - |b|.
    for (int t = 0; t < 1000; ++t) {
      const int k = deg(g);
      FPolynomial p;
      for (int a1 = 0; a1 <= k; ++a1) p.add_term({a1, k - a1}, {0, 0}, random_complex(g));
      const MultiIndex a{small(g), small(g)}, b{small(g), small(g)};
      const FPolynomial proj = szego_project(multiply(p, FPolynomial::monomial(a, b)), map);
      const int shift = k + a.total() - b.total();
      if (proj.is_zero()) continue;
      v.require(shift >= 0 && homogeneity(proj).degree == shift, "degree-shift law violated");
    }
  }
  v.require(worst <= 1e-12, "holomorphic polynomial not reproduced");
  v.detail << (v.pass ? "" : "; ") << "3000 reproductions (max coefficient error " << worst
           << "), 3000 mixed products";
  return v;
}

Verdict series_run() {
  const auto t0 = std::chrono::steady_clock::now();
  Verdict v;
  std::ostringstream runs;
  for (int q : {1, 2}) {
    const std::uint64_t seed = 1;
    const CoveringMap map(q);
    // Same seed streams as the build-inner command.
    const TargetModulus one = TargetModulus::constant(1.0);
    const SeriesContext ctx(map, sample_boundary(map, derive_seed(seed, 2), 10000),
                            sample_boundary(map, derive_seed(seed, 1), 200000), one);
    SeriesConfig sc;
    sc.seed = derive_seed(seed, 7);
    sc.budget = 10;
    const BuildOutcome out = build_series(ctx, LISet::all_nonnegative(), sc);
    const std::string tag = "q=" + std::to_string(q) + ": ";
    v.require(out.steps.size() == 10, tag + "stopped after " + std::to_string(out.steps.size()) + " steps (" +
                                          to_string(out.status) + " " + out.message + ")");
    const auto& d = out.state.defect_history;
    for (std::size_t i = 1; i < d.size(); ++i) v.require(d[i] < d[i - 1], tag + "defect increased");
    // Partial sums rebuilt here, ceiling checked at every step.
    FPolynomial sum;
    double parseval = 0.0, min_margin = 1.0;
    for (const FPolynomial& p : out.state.partials) {
      sum += p;
      parseval += norm_squared(p, map);
      for (const Complex& x : evaluate_images(sum, ctx.probe_images)) min_margin = std::min(min_margin, 1.0 - std::abs(x));
    }
    const double gap = std::abs(norm_squared(sum, map) - parseval);
    v.require(gap <= 1e-10, tag + "Parseval gap");
    v.require(min_margin > 0.0, tag + "|Q_N| reached 1");
    runs << " q=" << q << ": D " << d.front() << " -> " << d.back() << ", Parseval gap " << gap
         << ", min margin " << min_margin << ";";
  }
  const double elapsed = seconds_since(t0);
  v.require(elapsed < 600.0, "runtime over 10 minutes");
  v.detail << (v.pass ? "" : "; ") << runs.str() << " " << elapsed << " s";
  return v;
}

Verdict oracle_1d() {
  using namespace innerfn::oracle;
  Verdict v;
  std::mt19937_64 g(110);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double two_pi = 2 * std::numbers::pi;
  BlaschkeSpec b;
  for (int i = 0; i < 6; ++i) b.zeros.push_back(std::polar(0.05 + 0.9 * u(g), two_pi * u(g)));
  b.order_at_zero = 2;
  b.theta = two_pi * u(g);
  double worst_b = 0.0;
  for (int i = 0; i < 1000; ++i) {
    worst_b = std::max(worst_b, std::abs(std::abs(blaschke_eval(b, std::polar(1.0, two_pi * i / 1000.0))) - 1.0));
  }
  v.require(worst_b <= 1e-12, "Blaschke boundary modulus");
  SingularSpec s{{{0.5, 0.8}, {2.5, 0.3}, {4.5, 1.0}}};
  const double r = 1.0 - 1e-8;
  double worst_s = 0.0;
  std::size_t tested = 0;
  for (int i = 0; i < 1000; ++i) {
    const double t = two_pi * i / 1000.0;
    bool clear = true;
    for (const auto& a : s.atoms) clear = clear && std::abs(std::remainder(t - a.angle, two_pi)) > 0.5;
    if (!clear) continue;
    ++tested;
    worst_s = std::max(worst_s, std::abs(std::abs(singular_eval(s, std::polar(r, t))) - 1.0));
  }
  v.require(tested > 0 && worst_s <= 1e-6, "singular radial modulus");
  v.detail << (v.pass ? "" : "; ") << "Blaschke max ||B|-1| " << worst_b << ", singular max ||S|-1| " << worst_s
           << " over " << tested << " points";
  return v;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Verdict determinism(const fs::path& work) {
  Verdict v;
  std::size_t files = 0;
  for (const std::string name : {"verify-integrals", "pack", "rw-search", "build-inner", "oracle-1d"}) {
    RunConfig c;
    c.seed = 5;
    c.q = 2;
    c.sample_count = 50000;
    c.probe_count = 5000;
    c.candidate_count = 50000;
    c.budget = 2;
    std::vector<fs::path> dirs;
    std::vector<CommandResult> results;
    for (const char* run : {"a", "b"}) {
      c.output_dir = work / "determinism" / name / run;
      fs::remove_all(c.output_dir);
      dirs.push_back(c.output_dir);
      results.push_back(run_command(name, c));
    }
    v.require(results[0].exit_code == results[1].exit_code, name + ": exit codes differ");
    v.require(results[0].files == results[1].files && !results[0].files.empty(), name + ": file lists differ");
    for (const auto& f : results[0].files) {
      ++files;
      v.require(slurp(dirs[0] / f) == slurp(dirs[1] / f), name + ": " + f + " differs");
    }
  }
  v.detail << (v.pass ? "" : "; ") << "5 commands, " << files << " files byte-identical across reruns";
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"innerfn acceptance suite"};
  fs::path work = "acceptance_out";
  app.add_option("--work-dir", work, "scratch directory for CLI outputs");
  CLI11_PARSE(app, argc, argv);
  fs::create_directories(work);

  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"monomial identities", monomial_identities},
      {"cap law", cap_law},
      {"kernel-power identity", kernel_power_identity},
      {"sign-average law", sign_average_law},
      {"packing bound", packing_bound},
      {"RW sup bound", rw_sup_bound},
      {"projection oracle", projection_oracle},
      {"series run", series_run},
      {"1-D oracle", oracle_1d},
      {"determinism", [&] { return determinism(work); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail << "exception: " << e.what();
    }
    failed += !v.pass;
    std::printf("%s criterion %zu (%s): %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                v.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria pass\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}

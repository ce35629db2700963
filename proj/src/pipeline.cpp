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

#include "innerfn/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "innerfn/errors.hpp"
#include "innerfn/metric_packing.hpp"
#include "innerfn/oracle_1d.hpp"
#include "innerfn/rw_sequence.hpp"
#include "innerfn/seeding.hpp"

namespace innerfn {

namespace {

using nlohmann::json;

// Substreams of the run seed. The packing commands share the candidate
// stream so pack and rw-search see the same centers.
enum Stream : std::uint64_t {
  kSamples = 1,
  kProbes = 2,
  kCandidates = 3,
  kShellProbes = 4,
  kDoubling = 5,
  kSigns = 6,
  kBuild = 7,
  kOracle = 8,
  kCapCenter = 9,
};

constexpr int kMaxMonomialDegree = 4;
constexpr double kSigmas = 3.0;
constexpr std::size_t kShellProbeCount = 100;
constexpr std::size_t kRoundTripCount = 1000;
constexpr double kRoundTripTolerance = 1e-10;
constexpr double kParsevalTolerance = 1e-10;
constexpr double kOracleRadius = 1.0 - 1e-8;
constexpr double kAtomClearance = 0.5;  // radians between probe angles and atoms

std::uint64_t seed_of(const RunConfig& c) { return *c.seed; }

class Outputs {
 public:
  explicit Outputs(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw IoError("cannot create output directory " + dir_.string() + ": " + ec.message());
  }

  void text(const std::string& name, const std::string& body) {
    std::ofstream out(dir_ / name, std::ios::binary);
    out << body;
    if (!out) throw IoError("cannot write " + (dir_ / name).string());
    files_.push_back({name, body.size()});
  }
  void json_file(const std::string& name, const json& j) { text(name, j.dump(2) + "\n"); }

  CommandResult finish(const std::string& command, const RunConfig& config, int exit_code,
                       std::string summary) {
    json files = json::array();
    for (const auto& [name, bytes] : files_) files.push_back({{"name", name}, {"bytes", bytes}});
    json cfg = to_json(config);
    cfg.erase("output_dir");
    json manifest = {{"command", command},
                     {"exit_code", exit_code},
                     {"summary", summary},
                     {"config", cfg},
                     {"files", files}};
    text("manifest.json", manifest.dump(2) + "\n");
    CommandResult result{exit_code, std::move(summary), {}};
    for (const auto& f : files_) result.files.push_back(f.first);
    return result;
  }

 private:
  std::filesystem::path dir_;
  std::vector<std::pair<std::string, std::size_t>> files_;
};

// One checked number: value against target with its tolerance.
struct Checks {
  json rows = json::array();
  std::size_t failed = 0;

  void add(json row, bool pass) {
    row["pass"] = pass;
    if (!pass) ++failed;
    rows.push_back(std::move(row));
  }
  json summary() const {
    return {{"checks", rows.size()}, {"failed", failed}, {"all_pass", failed == 0}};
  }
};

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

std::string index_string(MultiIndex a) {
  return "(" + std::to_string(a.a1) + "," + std::to_string(a.a2) + ")";
}

std::vector<MultiIndex> indices_up_to(int degree) {
  std::vector<MultiIndex> out;
  for (int n = 0; n <= degree; ++n)
    for (int a1 = n; a1 >= 0; --a1) out.push_back({a1, n - a1});
  return out;
}

std::size_t get_count(const json& v, const std::string& key) {
  if (v.is_number_unsigned()) return v.get<std::size_t>();
  if (v.is_number_integer()) throw ConfigError(key, "must be a positive integer");
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (d >= 0.0 && d == std::floor(d) && d < 1e18) return static_cast<std::size_t>(d);
  }
  throw ConfigError(key, "expected a nonnegative integer");
}

int get_int(const json& v, const std::string& key) {
  if (v.is_number_integer()) {
    const auto x = v.get<long long>();
    if (x >= std::numeric_limits<int>::min() && x <= std::numeric_limits<int>::max()) {
      return static_cast<int>(x);
    }
  }
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (d == std::floor(d) && std::abs(d) < 1e9) return static_cast<int>(d);
  }
  throw ConfigError(key, "expected an integer");
}

double get_real(const json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError(key, "expected a number");
  return v.get<double>();
}

std::string get_string(const json& v, const std::string& key) {
  if (!v.is_string()) throw ConfigError(key, "expected a string");
  return v.get<std::string>();
}

double parse_real(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !std::isfinite(x)) {
    throw ConfigError("target", "cannot parse '" + text + "' as " + what);
  }
  return x;
}

}  // namespace

void validate(const RunConfig& c) {
  if (c.q < 1) throw ConfigError("q", "covering exponent must be >= 1, got " + std::to_string(c.q));
  if (!c.seed) throw ConfigError("seed", "a seed is required for reproducibility");
  const std::pair<const char*, std::size_t> counts[] = {
      {"sample_count", c.sample_count}, {"probe_count", c.probe_count},
      {"sign_trials", c.sign_trials},   {"rotation_trials", c.rotation_trials},
      {"budget", c.budget},             {"candidate_count", c.candidate_count},
      {"oracle_points", c.oracle_points}};
  for (const auto& [name, value] : counts) {
    if (value == 0) throw ConfigError(name, "must be positive");
  }
  if (c.k < 1) throw ConfigError("k", "RW degree must be >= 1");
  if (c.d_psi_max < 0) throw ConfigError("d_psi_max", "must be >= 0");
  if (!(c.epsilon_energy > 0.0) || !std::isfinite(c.epsilon_energy)) {
    throw ConfigError("epsilon_energy", "must be a positive number");
  }
  if (c.defect_target && !(*c.defect_target > 0.0 && *c.defect_target < c.q)) {
    throw ConfigError("defect_target", "must lie in (0, N) with N = q");
  }
  if (c.output_dir.empty()) throw ConfigError("output_dir", "must not be empty");
  parse_target(c.target);
}

RunConfig config_from_json(const json& j, RunConfig c) {
  if (!j.is_object()) throw ConfigError("config", "expected a flat JSON object");
  for (const auto& [key, v] : j.items()) {
    if (key == "q") c.q = get_int(v, key);
    else if (key == "seed") {
      if (v.is_number_unsigned()) c.seed = v.get<std::uint64_t>();
      else throw ConfigError(key, "expected a nonnegative 64-bit integer");
    }
    else if (key == "sample_count") c.sample_count = get_count(v, key);
    else if (key == "probe_count") c.probe_count = get_count(v, key);
    else if (key == "k") c.k = get_int(v, key);
    else if (key == "sign_trials") c.sign_trials = get_count(v, key);
    else if (key == "rotation_trials") c.rotation_trials = get_count(v, key);
    else if (key == "budget") c.budget = get_count(v, key);
    else if (key == "defect_target") {
      if (v.is_null()) c.defect_target.reset();
      else c.defect_target = get_real(v, key);
    }
    else if (key == "d_psi_max") c.d_psi_max = get_int(v, key);
    else if (key == "epsilon_energy") c.epsilon_energy = get_real(v, key);
    else if (key == "output_dir") c.output_dir = get_string(v, key);
    else if (key == "candidate_count") c.candidate_count = get_count(v, key);
    else if (key == "target") c.target = get_string(v, key);
    else if (key == "oracle_spec") {
      if (v.is_null()) c.oracle_spec.reset();
      else c.oracle_spec = get_string(v, key);
    }
    else if (key == "oracle_points") c.oracle_points = get_count(v, key);
    else throw ConfigError(key, "unknown configuration key");
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot read " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config", std::string("invalid JSON: ") + e.what());
  }
  return config_from_json(j, std::move(base));
}

json to_json(const RunConfig& c) {
  json j = {{"q", c.q},
            {"sample_count", c.sample_count},
            {"probe_count", c.probe_count},
            {"k", c.k},
            {"sign_trials", c.sign_trials},
            {"rotation_trials", c.rotation_trials},
            {"budget", c.budget},
            {"d_psi_max", c.d_psi_max},
            {"epsilon_energy", c.epsilon_energy},
            {"output_dir", c.output_dir.string()},
            {"candidate_count", c.candidate_count},
            {"target", c.target},
            {"oracle_points", c.oracle_points}};
  j["seed"] = c.seed ? json(*c.seed) : json(nullptr);
  j["defect_target"] = c.defect_target ? json(*c.defect_target) : json(nullptr);
  j["oracle_spec"] = c.oracle_spec ? json(c.oracle_spec->string()) : json(nullptr);
  return j;
}

TargetModulus parse_target(const std::string& d) {
  if (d.starts_with("const:")) return TargetModulus::constant(parse_real(d.substr(6), "a constant"));
  if (d.starts_with("poly:")) {
    const std::string rest = d.substr(5);
    const auto comma = rest.find(',');
    if (comma == std::string::npos) throw ConfigError("target", "poly target needs 'poly:a0,a1'");
    return TargetModulus::radial(parse_real(rest.substr(0, comma), "a0"),
                                 parse_real(rest.substr(comma + 1), "a1"));
  }
  throw ConfigError("target", "expected 'const:c' or 'poly:a0,a1', got '" + d + "'");
}

CommandResult cmd_verify_integrals(const RunConfig& config) {
  validate(config);
  const CoveringMap map(config.q);
  const double n_sheets = map.sheet_count();
  const BoundarySampleSet samples =
      sample_boundary(map, derive_seed(seed_of(config), kSamples), config.sample_count);
  const std::vector<ComplexPoint2> images = samples.images(map);
  Checks checks;

  {
    const std::vector<double> ones(samples.count(), 1.0);
    const IntegralEstimate est = integrate_values(std::span<const double>(ones), samples);
    const double err = std::abs(est.value - n_sheets);
    checks.add({{"name", "total_mass"},
                {"identity", "sigma_M(dM) = N"},
                {"value", est.value.real()},
                {"target", n_sheets},
                {"tolerance", 1e-12}},
               err <= 1e-12 * n_sheets);
  }

  // MC against exact values of int f^a conj(f)^b dsigma_M.
  const auto indices = indices_up_to(kMaxMonomialDegree);
  std::vector<std::vector<Complex>> powers;  // f^a at each sample, per index
  for (MultiIndex a : indices) {
    std::vector<Complex> v(images.size());
    for (std::size_t i = 0; i < images.size(); ++i) v[i] = monomial(images[i], a);
    powers.push_back(std::move(v));
  }
  std::vector<Complex> values(images.size());
  for (std::size_t x = 0; x < indices.size(); ++x) {
    for (std::size_t y = 0; y < indices.size(); ++y) {
      for (std::size_t i = 0; i < images.size(); ++i) values[i] = powers[x][i] * std::conj(powers[y][i]);
      const IntegralEstimate est = integrate_values(std::span<const Complex>(values), samples);
      const double target =
          boost::multiprecision::cpp_rational(pulled_back_monomial_integral(map, indices[x], indices[y]))
              .convert_to<double>();
      const double err = std::abs(est.value - target);
      const double tol = kSigmas * est.std_error + 1e-12 * std::max(1.0, std::abs(target));
      checks.add({{"name", "monomial a=" + index_string(indices[x]) + " b=" + index_string(indices[y])},
                  {"identity", "int f^a conj(f)^b dsigma_M = N delta_ab a!/(1+|a|)!"},
                  {"value", complex_json(est.value)},
                  {"target", target},
                  {"std_error", est.std_error},
                  {"tolerance", "3 std errors"},
                  {"abs_error", err}},
                 err <= tol);
    }
  }

  // Exact orthogonality of the holomorphic monomials.
  for (std::size_t x = 0; x < indices.size(); ++x) {
    for (std::size_t y = 0; y < indices.size(); ++y) {
      const FPolynomial px = FPolynomial::monomial(indices[x], {0, 0}, 1.0);
      const FPolynomial py = FPolynomial::monomial(indices[y], {0, 0}, 1.0);
      const Complex value = inner_product(px, py, map);
      const double target = x == y ? n_sheets * monomial_integral_value(indices[x]) : 0.0;
      checks.add({{"name", "inner_product a=" + index_string(indices[x]) + " b=" + index_string(indices[y])},
                  {"identity", "<f^a, f^b> = N delta_ab a!/(1+|a|)!"},
                  {"value", complex_json(value)},
                  {"target", target},
                  {"tolerance", 1e-14}},
                 std::abs(value - target) <= 1e-14);
    }
  }

  // Cap law: sigma(E(eta, delta)) = delta^2, counted around a random center.
  {
    const ComplexPoint2 center = sample_sphere(derive_seed(seed_of(config), kCapCenter), 1).front();
    for (int t = 1; t <= 9; ++t) {
      const double delta = t / 10.0;
      std::size_t hits = 0;
      for (const auto& eta : images) hits += std::sqrt(std::max(0.0, 1.0 - std::norm(inner(eta, center)))) < delta;
      const double fraction = static_cast<double>(hits) / static_cast<double>(images.size());
      const double p = cap_measure(delta);
      const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(images.size()));
      checks.add({{"name", "cap delta=" + std::to_string(t) + "/10"},
                  {"identity", "sigma(E(eta, delta)) = delta^2"},
                  {"value", fraction},
                  {"target", p},
                  {"std_error", se},
                  {"tolerance", "3 binomial std errors at the hypothesized mass"}},
                 std::abs(fraction - p) <= kSigmas * se);
    }
  }

  // Samples lie on dM and lifting their images returns points with the same image.
  {
    double boundary = 0.0, round_trip = 0.0;
    const std::size_t n = std::min(kRoundTripCount, samples.count());
    for (std::size_t i = 0; i < samples.count(); ++i) boundary = std::max(boundary, map.boundary_defect(samples.points[i]));
    for (std::size_t i = 0; i < n; ++i) {
      for (int j = 0; j < map.sheet_count(); ++j) {
        const ComplexPoint2 back = map.apply(map.lift(images[i], j));
        round_trip = std::max(round_trip, std::max(std::abs(back.z1 - images[i].z1), std::abs(back.z2 - images[i].z2)));
      }
    }
    checks.add({{"name", "boundary_defect"},
                {"identity", "|z1|^2 + |z2|^(2q) = 1 on dM"},
                {"value", boundary},
                {"tolerance", map.boundary_tolerance()}},
               boundary <= map.boundary_tolerance());
    checks.add({{"name", "lift_round_trip"},
                {"identity", "f(lift(s, j)) = s for every sheet j"},
                {"value", round_trip},
                {"points", n},
                {"tolerance", kRoundTripTolerance}},
               round_trip <= kRoundTripTolerance);
  }

  json report = {{"command", "verify-integrals"},
                 {"q", config.q},
                 {"sheet_count", map.sheet_count()},
                 {"sample_count", samples.count()},
                 {"resample_count", samples.resample_count},
                 {"results", checks.rows},
                 {"summary", checks.summary()}};
  Outputs out(config.output_dir);
  out.json_file("verify_integrals.json", report);
  const int code = checks.failed == 0 ? kExitPass : kExitInvariant;
  return out.finish("verify-integrals", config, code,
                    std::to_string(checks.rows.size() - checks.failed) + "/" +
                        std::to_string(checks.rows.size()) + " identities pass");
}

namespace {

struct PackingRun {
  CoveringMap map;
  BoundarySampleSet candidates;
  PackingResult packing;
};

PackingRun run_packing(const RunConfig& config) {
  const CoveringMap map(config.q);
  BoundarySampleSet candidates =
      sample_boundary(map, derive_seed(seed_of(config), kCandidates), config.candidate_count);
  PackingResult packing = greedy_packing(candidates, 1.0 / std::sqrt(config.k), map);
  return {map, std::move(candidates), std::move(packing)};
}

}  // namespace

CommandResult cmd_pack(const RunConfig& config) {
  validate(config);
  const PackingRun run = run_packing(config);
  const PackingResult& packing = run.packing;
  const double r = packing.r;
  const double n_sheets = run.map.sheet_count();
  Checks checks;

  const double bound = n_sheets / (4.0 * r * r);
  checks.add({{"name", "packing_count"},
              {"identity", "K >= N / (4 r^2)"},
              {"value", packing.size()},
              {"target", bound},
              {"tolerance", 0.0}},
             static_cast<double>(packing.size()) >= bound * (1.0 - 1e-12));
  const double separation = packing.size() > 1 ? min_pairwise_distance(packing) : 1.0;
  checks.add({{"name", "separation"},
              {"identity", "d_M(omega_i, omega_j) >= r for i != j"},
              {"value", separation},
              {"target", r},
              {"tolerance", kSeparationTolerance}},
             separation >= r - kSeparationTolerance);
  const CoverReport cover = verify_cover(packing, run.candidates, run.map);
  checks.add({{"name", "cover"},
              {"identity", "every candidate lies within 2r of a center"},
              {"value", cover.worst_distance},
              {"target", 2.0 * r},
              {"tolerance", 0.0}},
             cover.covered);

  const BoundarySampleSet probes =
      sample_boundary(run.map, derive_seed(seed_of(config), kShellProbes), kShellProbeCount);
  std::size_t shell_violations = 0, decay_violations = 0, worst_ratio_shell = 0;
  double worst_ratio = 0.0;
  for (const auto& eta : probes.images(run.map)) {
    const auto counts = shell_histogram(packing.images, eta, r);
    for (std::size_t m = 0; m < counts.size(); ++m) {
      const double cap = static_cast<double>((m + 2) * (m + 2));
      if (counts[m] / cap > worst_ratio) {
        worst_ratio = counts[m] / cap;
        worst_ratio_shell = m;
      }
      if (static_cast<double>(counts[m]) > cap) ++shell_violations;
    }
    if (!kernel_decay_holds(packing.images, eta, r)) ++decay_violations;
  }
  checks.add({{"name", "shell_counts"},
              {"identity", "#H_m <= (m + 2)^2 for every shell"},
              {"probes", probes.count()},
              {"violations", shell_violations},
              {"max_count_over_cap", worst_ratio},
              {"max_at_shell", worst_ratio_shell},
              {"tolerance", 0}},
             shell_violations == 0);
  checks.add({{"name", "kernel_decay"},
              {"identity", "|<f(zeta), f(omega_j)>|^2 <= 1 - m^2 r^2 on shell m"},
              {"probes", probes.count()},
              {"violations", decay_violations},
              {"tolerance", 0}},
             decay_violations == 0);

  const DoublingReport doubling =
      measure_doubling(run.candidates, run.map, derive_seed(seed_of(config), kDoubling));
  checks.add({{"name", "quasi_triangle"},
              {"identity", "d_M(z, w) <= C1 (d_M(z, u) + d_M(u, w)), C1 <= 4"},
              {"value", doubling.c1},
              {"target", 4.0},
              {"tolerance", 0.0}},
             doubling.c1 <= 4.0);
  checks.add({{"name", "doubling"},
              {"identity", "sigma_M(E(w, 2r)) <= 4 sigma_M(E(w, r))"},
              {"value", doubling.c2},
              {"target", 4.0},
              {"tolerance", doubling.c2_slack}},
             doubling.c2 <= 4.0 + doubling.c2_slack);

  json report = {{"command", "pack"},
                 {"q", config.q},
                 {"k", config.k},
                 {"packing", to_json(packing)},
                 {"doubling", to_json(doubling)},
                 {"engulfing_note", "c3 is a diagnostic and is not asserted"},
                 {"results", checks.rows},
                 {"summary", checks.summary()}};
  Outputs out(config.output_dir);
  out.json_file("packing.json", report);
  std::ostringstream summary;
  summary << "K = " << packing.size() << " centers at r = " << r << ", bound " << bound;
  return out.finish("pack", config, checks.failed == 0 ? kExitPass : kExitInvariant, summary.str());
}

CommandResult cmd_rw_search(const RunConfig& config) {
  validate(config);
  const PackingRun run = run_packing(config);
  const BoundarySampleSet probes =
      sample_boundary(run.map, derive_seed(seed_of(config), kProbes), config.probe_count);
  const RWCertificate cert = search_signs(run.packing, config.k, run.map,
                                          derive_seed(seed_of(config), kSigns), config.sign_trials, probes);
  const FPolynomial w = build_W(run.packing, cert, run.map);
  Checks checks;

  const double sigma_coarse = shell_sigma_constant(1e-10);
  const double sigma_fine = shell_sigma_constant(1e-14);
  checks.add({{"name", "sigma_constant"},
              {"identity", "Sigma = sum_m (m + 2)^2 exp(-m^2 / 2), tail cutoffs 1e-10 vs 1e-14"},
              {"value", sigma_fine},
              {"target", sigma_coarse},
              {"tolerance", 1e-10}},
             std::abs(sigma_fine - sigma_coarse) <= 1e-10);
  checks.add({{"name", "sup_bound"},
              {"identity", "sup |W_k o f| <= 1 (sampled over probes)"},
              {"value", cert.sup_bound_check},
              {"target", 1.0},
              {"probes", cert.sup_probe_count},
              {"tolerance", 0.0}},
             cert.sup_bound_check <= 1.0);
  checks.add({{"name", "mean_floor"},
              {"identity", "int |Q|^2 dsigma_M >= K N / (1 + k) for the selected signs"},
              {"value", cert.l2_mass.value.real()},
              {"target", cert.mean_l2},
              {"tolerance", "1e-12 relative"}},
             cert.meets_mean_floor());
  const HomogeneityCertificate h = homogeneity(w);
  checks.add({{"name", "homogeneity"},
              {"identity", "W_k is f-homogeneous of degree k"},
              {"value", h.degree ? json(*h.degree) : json(nullptr)},
              {"target", config.k}},
             h.degree && *h.degree == config.k);
  const double exact_w = norm_squared(w, run.map);
  checks.add({{"name", "l2_of_W"},
              {"identity", "||W||^2 = ||Q||^2 / Sigma^2"},
              {"value", exact_w},
              {"target", cert.l2_mass_W()},
              {"tolerance", "1e-10 relative"}},
             std::abs(exact_w - cert.l2_mass_W()) <= 1e-10 * std::max(1.0, exact_w));

  json report = {{"command", "rw-search"},
                 {"q", config.q},
                 {"k", config.k},
                 {"packing_size", run.packing.size()},
                 {"certificate", to_json(cert)},
                 {"results", checks.rows},
                 {"summary", checks.summary()}};
  Outputs out(config.output_dir);
  out.json_file("rw_certificate.json", report);
  out.json_file("w_polynomial.json", to_json(w));
  std::ostringstream summary;
  summary << "K = " << cert.K << ", ||W||^2 = " << cert.l2_mass_W() << ", sampled sup " << cert.sup_bound_check;
  return out.finish("rw-search", config, checks.failed == 0 ? kExitPass : kExitInvariant, summary.str());
}

CommandResult cmd_build_inner(const RunConfig& config) {
  validate(config);
  const CoveringMap map(config.q);
  const TargetModulus target = parse_target(config.target);
  BoundarySampleSet samples = sample_boundary(map, derive_seed(seed_of(config), kSamples), config.sample_count);
  BoundarySampleSet probes = sample_boundary(map, derive_seed(seed_of(config), kProbes), config.probe_count);
  const SeriesContext ctx(map, std::move(probes), std::move(samples), target);

  SeriesConfig sc;
  sc.seed = derive_seed(seed_of(config), kBuild);
  sc.min_degree = config.k;
  sc.candidate_count = config.candidate_count;
  sc.sign_trials = config.sign_trials;
  sc.rotation_trials = config.rotation_trials;
  sc.surrogate_degree = std::min(6, config.d_psi_max);
  sc.surrogate_degree_max = config.d_psi_max;
  sc.epsilon_energy = config.epsilon_energy;
  sc.budget = config.budget;
  sc.defect_target = config.defect_target;
  const BuildOutcome outcome = build_series(ctx, LISet::all_nonnegative(), sc);
  const SeriesLedger l = ledger(outcome, map);

  Checks checks;
  checks.add({{"name", "defect_monotone"},
              {"identity", "D_(N+1) < D_N at every step"},
              {"value", outcome.state.defect_history}},
             l.defect_monotone);
  checks.add({{"name", "ceiling"},
              {"identity", "|Q_N| < phi o f at every probe and step"},
              {"value", outcome.state.sup_margin_history}},
             l.ceiling_holds);
  checks.add({{"name", "parseval"},
              {"identity", "||Q_N||^2 = sum_i ||P_i||^2"},
              {"value", l.parseval_norm},
              {"target", l.parseval_sum},
              {"tolerance", kParsevalTolerance}},
             std::abs(l.parseval_norm - l.parseval_sum) <= kParsevalTolerance);
  checks.add({{"name", "step_status"},
              {"identity", "every generating step satisfied its invariants"},
              {"value", to_string(outcome.status)}},
             outcome.status == BuildStatus::kBudget || outcome.status == BuildStatus::kTargetReached ||
                 outcome.status == BuildStatus::kStagnation);

  json report = report_json(outcome, ctx);
  report["command"] = "build-inner";
  report["target"] = target.name;
  report["results"] = checks.rows;
  report["summary"] = checks.summary();
  Outputs out(config.output_dir);
  out.json_file("inner_report.json", report);
  out.text("steps.csv", steps_csv(outcome));
  out.text("q_histogram.csv", histogram_csv(outcome));
  out.json_file("q_polynomial.json", to_json(outcome.state.sum));

  int code = kExitPass;
  if (checks.failed > 0) code = kExitInvariant;
  else if (outcome.status == BuildStatus::kStagnation) code = kExitStagnation;
  std::ostringstream summary;
  summary << outcome.steps.size() << " steps, status " << to_string(outcome.status) << ", D_N = "
          << outcome.state.defect_history.back();
  if (!outcome.message.empty()) summary << " (" << outcome.message << ")";
  return out.finish("build-inner", config, code, summary.str());
}

CommandResult cmd_oracle_1d(const RunConfig& config) {
  validate(config);
  using namespace oracle;
  std::mt19937_64 engine(derive_seed(seed_of(config), kOracle));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double two_pi = 2.0 * std::numbers::pi;

  BlaschkeSpec blaschke;
  SingularSpec singular;
  if (config.oracle_spec) {
    std::ifstream in(*config.oracle_spec);
    if (!in) throw ConfigError("oracle_spec", "cannot read " + config.oracle_spec->string());
    json j;
    try {
      j = json::parse(in);
      if (j.contains("blaschke")) blaschke = blaschke_from_json(j.at("blaschke"));
      if (j.contains("singular")) singular = singular_from_json(j.at("singular"));
    } catch (const json::exception& e) {
      throw ConfigError("oracle_spec", e.what());
    } catch (const DomainError& e) {
      throw ConfigError("oracle_spec", e.what());
    }
  } else {
    for (int i = 0; i < 5; ++i) blaschke.zeros.push_back(std::polar(0.05 + 0.9 * unit(engine), two_pi * unit(engine)));
    blaschke.order_at_zero = 1;
    blaschke.theta = two_pi * unit(engine);
    for (int i = 0; i < 3; ++i) singular.atoms.push_back({two_pi * unit(engine), 0.1 + 0.9 * unit(engine)});
  }
  validate(blaschke);
  validate(singular);

  Checks checks;
  double worst_b = 0.0, worst_interior = 0.0;
  for (std::size_t i = 0; i < config.oracle_points; ++i) {
    const double t = two_pi * unit(engine);
    worst_b = std::max(worst_b, std::abs(std::abs(blaschke_eval(blaschke, std::polar(1.0, t))) - 1.0));
    const Complex inside = std::polar(std::sqrt(unit(engine)) * 0.999, t);
    worst_interior = std::max(worst_interior, std::abs(blaschke_eval(blaschke, inside)));
  }
  checks.add({{"name", "blaschke_boundary_modulus"},
              {"identity", "|B(e^{it})| = 1"},
              {"value", worst_b},
              {"points", config.oracle_points},
              {"tolerance", 1e-12}},
             worst_b <= 1e-12);
  checks.add({{"name", "blaschke_interior_bound"},
              {"identity", "|B(z)| < 1 for |z| < 1"},
              {"value", worst_interior},
              {"target", 1.0}},
             worst_interior < 1.0);

  auto clear_of_atoms = [&](double t) {
    for (const auto& a : singular.atoms) {
      const double gap = std::abs(std::remainder(t - a.angle, two_pi));
      if (gap < kAtomClearance) return false;
    }
    return true;
  };
  double worst_g = 0.0;
  std::size_t tested = 0;
  for (std::size_t i = 0; i < config.oracle_points; ++i) {
    const double t = two_pi * unit(engine);
    if (!clear_of_atoms(t)) continue;
    ++tested;
    worst_g = std::max(worst_g, std::abs(std::abs(singular_eval(singular, std::polar(kOracleRadius, t))) - 1.0));
  }
  checks.add({{"name", "singular_radial_modulus"},
              {"identity", "|G(r e^{it})| -> 1 as r -> 1 away from the atoms"},
              {"value", worst_g},
              {"radius", kOracleRadius},
              {"points", tested},
              {"atom_clearance", kAtomClearance},
              {"tolerance", 1e-6}},
             tested > 0 && worst_g <= 1e-6);
  double worst_atom = 1.0;
  for (const auto& a : singular.atoms) {
    worst_atom = std::min(worst_atom, 1.0 - std::abs(singular_eval(singular, std::polar(kOracleRadius, a.angle))));
  }
  checks.add({{"name", "singular_atom_decay"},
              {"identity", "|G(r zeta_j)| -> 0 radially at each atom"},
              {"value", 1.0 - worst_atom},
              {"target", 0.0},
              {"tolerance", 1e-6}},
             singular.atoms.empty() || 1.0 - worst_atom <= 1e-6);

  json report = {{"command", "oracle-1d"},
                 {"blaschke", to_json(blaschke)},
                 {"singular", to_json(singular)},
                 {"results", checks.rows},
                 {"summary", checks.summary()}};
  Outputs out(config.output_dir);
  out.json_file("oracle_1d.json", report);
  return out.finish("oracle-1d", config, checks.failed == 0 ? kExitPass : kExitInvariant,
                    std::to_string(checks.rows.size() - checks.failed) + "/" +
                        std::to_string(checks.rows.size()) + " oracle checks pass");
}

CommandResult run_command(const std::string& name, const RunConfig& config) {
  try {
    if (name == "verify-integrals") return cmd_verify_integrals(config);
    if (name == "pack") return cmd_pack(config);
    if (name == "rw-search") return cmd_rw_search(config);
    if (name == "build-inner") return cmd_build_inner(config);
    if (name == "oracle-1d") return cmd_oracle_1d(config);
    throw ConfigError("command", "unknown command '" + name + "'");
  } catch (const ConfigError& e) {
    return {kExitConfig, std::string("configuration error: ") + e.what(), {}};
  } catch (const PositivityError& e) {
    return {kExitConfig, std::string("positivity violation: ") + e.what(), {}};
  } catch (const StagnationError& e) {
    return {kExitStagnation, std::string("stagnation: ") + e.what(), {}};
  } catch (const Error& e) {
    return {kExitInvariant, std::string("invariant failure: ") + e.what(), {}};
  }
}

}  // namespace innerfn

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

#include "innerfn/inner_builder.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "innerfn/errors.hpp"
#include "innerfn/metric_packing.hpp"
#include "innerfn/seeding.hpp"

namespace innerfn {

namespace {

constexpr int kBlockSearchLimit = 10'000'000;
constexpr double kApproximationBound = 0.25;  // |F - W psi| < psi / 4
constexpr double kStepScale = 0.8;            // P = (4/5) F
constexpr double kFitWeightFloor = 0.1;

std::vector<double> margins(std::span<const double> phi, std::span<const Complex> q) {
  std::vector<double> out(phi.size());
  for (std::size_t i = 0; i < phi.size(); ++i) out[i] = phi[i] - std::abs(q[i]);
  return out;
}

std::vector<Term> surrogate_basis(int degree) {
  std::vector<Term> out;
  for (int a1 = 0; a1 <= degree; ++a1) {
    for (int a2 = 0; a1 + a2 <= degree; ++a2) {
      for (int b1 = 0; a1 + a2 + b1 <= degree; ++b1) {
        if (a1 > 0 && b1 > 0) continue;  // |f1|^2 = 1 - |f2|^2 on the sphere
        for (int b2 = 0; a1 + a2 + b1 + b2 <= degree; ++b2) out.push_back({{a1, a2}, {b1, b2}});
      }
    }
  }
  return out;
}

struct StepSeeds {
  std::uint64_t candidates, signs, rotations;
};

StepSeeds step_seeds(std::uint64_t seed, std::size_t step) {
  return {derive_seed(seed, 3 * step + 0), derive_seed(seed, 3 * step + 1),
          derive_seed(seed, 3 * step + 2)};
}

}  // namespace

LISet LISet::all_nonnegative() {
  return {[](int n) { return n >= 0; }, "all nonnegative integers", {}};
}

LISet LISet::residue_window(int modulus, int width) {
  if (modulus < 1 || width < 1 || width > modulus) {
    throw DomainError("residue_window: need 1 <= width <= modulus");
  }
  return {[=](int n) { return n >= 0 && n % modulus < width; },
          "{n : n mod " + std::to_string(modulus) + " < " + std::to_string(width) + "}",
          {}};
}

std::vector<int> peek_block(const LISet& e, int length, int min_start) {
  if (length < 1) throw DomainError("block length must be >= 1");
  int run = 0;
  for (int n = std::max(0, min_start); n < kBlockSearchLimit; ++n) {
    run = e.available(n) ? run + 1 : 0;
    if (run == length) {
      std::vector<int> out(static_cast<std::size_t>(length));
      for (int i = 0; i < length; ++i) out[i] = n - length + 1 + i;
      return out;
    }
  }
  throw DomainError("no run of " + std::to_string(length) + " consecutive members in " +
                    e.description);
}

std::vector<int> next_block(LISet& e, int length, int min_start) {
  std::vector<int> out = peek_block(e, length, min_start);
  e.excluded.insert(out.begin(), out.end());
  return out;
}

TargetModulus TargetModulus::constant(double c) {
  std::ostringstream name;
  name << "constant " << c;
  return {[c](const ComplexPoint2&) { return c; }, name.str()};
}

TargetModulus TargetModulus::radial(double a0, double a1) {
  std::ostringstream name;
  name << a0 << " + " << a1 << " |eta1|^2";
  return {[a0, a1](const ComplexPoint2& p) { return a0 + a1 * std::norm(p.z1); }, name.str()};
}

double check_positive(const TargetModulus& target, std::span<const ComplexPoint2> images) {
  double low = std::numeric_limits<double>::infinity();
  for (const auto& p : images) {
    const double v = target.phi(p);
    if (!std::isfinite(v) || !(v > 0.0)) {
      throw PositivityError("target modulus '" + target.name + "' is not positive at a probe point");
    }
    low = std::min(low, v);
  }
  return low;
}

SeriesContext::SeriesContext(const CoveringMap& map_, BoundarySampleSet probes_,
                             BoundarySampleSet samples_, const TargetModulus& target)
    : map(map_), probes(std::move(probes_)), samples(std::move(samples_)) {
  probe_images = probes.images(map);
  sample_images = samples.images(map);
  check_positive(target, probe_images);
  phi_probes.reserve(probe_images.size());
  for (const auto& p : probe_images) phi_probes.push_back(target.phi(p));
  phi_samples.reserve(sample_images.size());
  for (const auto& p : sample_images) phi_samples.push_back(target.phi(p));
}

SeriesState SeriesState::empty(const SeriesContext& ctx) {
  SeriesState s;
  s.partials.push_back(FPolynomial{});
  s.q_probes.assign(ctx.probe_images.size(), Complex(0.0));
  s.q_samples.assign(ctx.sample_images.size(), Complex(0.0));
  std::vector<double> sq(ctx.phi_samples.size());
  for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = ctx.phi_samples[i] * ctx.phi_samples[i];
  const IntegralEstimate d0 = integrate_values(std::span<const double>(sq), ctx.samples);
  s.defect_history.push_back(d0.value.real());
  s.defect_std_errors.push_back(d0.std_error);
  s.sup_margin_history.push_back(*std::min_element(ctx.phi_probes.begin(), ctx.phi_probes.end()));
  return s;
}

bool is_constant_data(std::span<const double> values) {
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return *hi - *lo <= 1e-14 * std::max(1.0, std::abs(*hi));
}

FPolynomial fit_surrogate(std::span<const ComplexPoint2> images, std::span<const double> values,
                          int degree, double prune, std::span<const double> weights,
                          int refinements) {
  if (images.size() != values.size() || images.empty()) {
    throw DomainError("fit_surrogate: need matching, nonempty inputs");
  }
  if (!weights.empty() && weights.size() != values.size()) {
    throw DomainError("fit_surrogate: need one weight per value");
  }
  if (is_constant_data(values)) {
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    return FPolynomial::constant(0.5 * (*hi + *lo));
  }

  // Real columns: Re m for self-conjugate m, Re m and Im m for one
  // representative of each pair {m, conj m}.
  struct Column {
    Term term;
    bool imaginary;
  };
  std::vector<Column> columns;
  for (const Term& t : surrogate_basis(degree)) {
    const Term mirror{t.b, t.a};
    if (t == mirror) {
      columns.push_back({t, false});
    } else if (t < mirror) {
      columns.push_back({t, false});
      columns.push_back({t, true});
    }
  }

  const auto rows = static_cast<Eigen::Index>(images.size());
  const auto cols = static_cast<Eigen::Index>(columns.size());
  Eigen::MatrixXd design(rows, cols);
  Eigen::VectorXd rhs(rows);
  std::vector<Complex> p1(degree + 1), p2(degree + 1), c1(degree + 1), c2(degree + 1);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& eta = images[static_cast<std::size_t>(i)];
    p1[0] = p2[0] = c1[0] = c2[0] = 1.0;
    for (int d = 1; d <= degree; ++d) {
      p1[d] = p1[d - 1] * eta.z1;
      p2[d] = p2[d - 1] * eta.z2;
      c1[d] = std::conj(p1[d]);
      c2[d] = std::conj(p2[d]);
    }
    for (Eigen::Index j = 0; j < cols; ++j) {
      const Term& t = columns[static_cast<std::size_t>(j)].term;
      const Complex m = p1[t.a.a1] * p2[t.a.a2] * c1[t.b.a1] * c2[t.b.a2];
      design(i, j) = columns[static_cast<std::size_t>(j)].imaginary ? m.imag() : m.real();
    }
    rhs(i) = values[static_cast<std::size_t>(i)];
  }
  Eigen::VectorXd w = Eigen::VectorXd::Ones(rows);
  if (!weights.empty()) w = Eigen::Map<const Eigen::VectorXd>(weights.data(), rows);

  // Weighted least squares, then Lawson passes u <- u |weighted residual|
  // that push the fit toward the weighted sup norm. The best sup is kept.
  Eigen::VectorXd lawson = Eigen::VectorXd::Ones(rows);
  Eigen::VectorXd coef, best;
  double best_sup = std::numeric_limits<double>::infinity();
  for (int pass = 0; pass <= refinements; ++pass) {
    const Eigen::VectorXd scale = w.cwiseProduct(lawson.cwiseSqrt());
    coef = (scale.asDiagonal() * design).colPivHouseholderQr().solve(scale.cwiseProduct(rhs));
    const Eigen::VectorXd err = (design * coef - rhs).cwiseAbs().cwiseProduct(w);
    const double sup = err.maxCoeff();
    if (sup < best_sup) {
      best_sup = sup;
      best = coef;
    }
    lawson = lawson.cwiseProduct(err);
    const double total = lawson.sum();
    if (!(total > 0.0)) break;
    lawson /= total / static_cast<double>(rows);
    lawson = lawson.cwiseMax(1e-12);
  }

  //   u Re m + v Im m = ((u - i v) / 2) m + ((u + i v) / 2) conj m
  FPolynomial out;
  for (Eigen::Index j = 0; j < cols; ++j) {
    const Column& c = columns[static_cast<std::size_t>(j)];
    const double x = best(j);
    if (c.term.a == c.term.b) {
      out.add_term(c.term.a, c.term.b, x);
    } else if (!c.imaginary) {
      out.add_term(c.term.a, c.term.b, 0.5 * x);
      out.add_term(c.term.b, c.term.a, 0.5 * x);
    } else {
      out.add_term(c.term.a, c.term.b, Complex(0.0, -0.5 * x));
      out.add_term(c.term.b, c.term.a, Complex(0.0, 0.5 * x));
    }
  }
  return out.pruned(prune);
}

StepResult generating_step(const SeriesState& state, const SeriesContext& ctx, LISet& e,
                           const SeriesConfig& config, std::size_t step_index) {
  const CoveringMap& map = ctx.map;
  const std::vector<double> psi = margins(ctx.phi_probes, state.q_probes);
  if (*std::min_element(psi.begin(), psi.end()) <= 0.0) {
    throw InvariantError("generating_step: phi - |Q_N| is not positive on the probes");
  }
  const std::vector<double> psi_samples = margins(ctx.phi_samples, state.q_samples);
  std::vector<double> psi_sq(psi_samples.size());
  for (std::size_t i = 0; i < psi_sq.size(); ++i) psi_sq[i] = psi_samples[i] * psi_samples[i];
  const IntegralEstimate psi_energy = integrate_values(std::span<const double>(psi_sq), ctx.samples);

  // mu = psi^2 dsigma_M on the probes.
  std::vector<double> mu_weights(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i) mu_weights[i] = ctx.probes.weight_at(i) * psi[i] * psi[i];
  const BoundarySampleSet mu = reweighted(ctx.probes, std::move(mu_weights));

  const StepSeeds seeds = step_seeds(config.seed, step_index);
  const BoundarySampleSet candidates = sample_boundary(map, seeds.candidates, config.candidate_count);

  std::vector<int> degrees{config.surrogate_degree};
  if (config.surrogate_degree_max > config.surrogate_degree) degrees.push_back(config.surrogate_degree_max);

  const bool psi_constant = is_constant_data(psi);
  StepRecord record;
  record.step = step_index;
  double worst_ratio = std::numeric_limits<double>::infinity();
  for (int d : degrees) {
    ++record.attempts;
    // The surrogate spans |a|, |b| <= d; a constant psi needs no room.
    const int shift = psi_constant ? 0 : d;
    const std::vector<int> block = peek_block(e, 2 * shift + 1, std::max(1, config.min_degree - shift));
    const int k = block.back() - shift;

    const PackingResult packing = greedy_packing(candidates, 1.0 / std::sqrt(k), map);
    RWCertificate cert = search_signs(packing, k, map, seeds.signs, config.sign_trials, ctx.probes);
    cert = adapt_to_measure(packing, cert, mu, map, seeds.rotations, config.rotation_trials);
    const FPolynomial w = build_W(packing, cert, map);
    const std::vector<Complex> w_probe = evaluate_images(w, ctx.probe_images);

    // Fit psi where the test |F - W psi| < psi / 4 is sharpest: residuals
    // weighted by |W| / psi, floored so the fit stays global.
    std::vector<double> fit_weights(psi.size());
    double w_sup = 0.0;
    for (const Complex& v : w_probe) w_sup = std::max(w_sup, std::abs(v));
    for (std::size_t i = 0; i < psi.size(); ++i) {
      fit_weights[i] = (std::abs(w_probe[i]) + kFitWeightFloor * w_sup) / psi[i];
    }
    const FPolynomial surrogate = fit_surrogate(ctx.probe_images, psi, d, config.surrogate_prune,
                                                fit_weights, config.surrogate_refinements);
    const FPolynomial f = szego_project(multiply(w, surrogate), map);
    const std::vector<Complex> f_probe = evaluate_images(f, ctx.probe_images);
    double ratio = 0.0;
    for (std::size_t i = 0; i < psi.size(); ++i) {
      ratio = std::max(ratio, std::abs(f_probe[i] - w_probe[i] * psi[i]) / psi[i]);
    }
    worst_ratio = std::min(worst_ratio, ratio);
    if (!(ratio < kApproximationBound)) continue;

    FPolynomial p = f * Complex(kStepScale, 0.0);
    for (std::size_t i = 0; i < psi.size(); ++i) {
      if (!(kStepScale * std::abs(f_probe[i]) < psi[i])) {
        throw InvariantError("generating_step: |P| >= phi - |Q_N| at a probe point");
      }
    }
    record.degrees = p.holomorphic_degrees();
    if (!p.holomorphic_only() || (!record.degrees.empty() && (*record.degrees.begin() < block.front() ||
                                                              *record.degrees.rbegin() > block.back()))) {
      throw InvariantError("generating_step: projected degrees escape the block");
    }
    for (int n : record.degrees) {
      if (state.used_degrees.contains(n)) {
        throw InvariantError("generating_step: degree " + std::to_string(n) + " already used");
      }
    }

    record.k = k;
    record.block = block;
    record.surrogate_degree = d;
    record.surrogate_terms = surrogate.size();
    record.approximation_ratio = ratio;
    record.p_energy = norm_squared(p, map);
    record.psi_energy = psi_energy.value.real();
    record.energy_ratio = record.p_energy / record.psi_energy;
    record.certificate = cert;
    if (!(record.energy_ratio >= config.epsilon_energy)) {
      std::ostringstream msg;
      msg << "generating_step: energy ratio " << record.energy_ratio << " below floor "
          << config.epsilon_energy;
      throw StagnationError(msg.str());
    }
    e.excluded.insert(block.begin(), block.end());
    return {std::move(p), std::move(record)};
  }
  std::ostringstream msg;
  msg << "generating_step: |F - W psi| / psi reached " << worst_ratio
      << " (need < 1/4) at surrogate degree " << degrees.back();
  throw ApproximationError(msg.str());
}

void accept_step(SeriesState& state, const SeriesContext& ctx, const FPolynomial& p,
                 StepRecord& record) {
  state.partials.push_back(p);
  state.sum += p;
  state.used_degrees.insert(record.degrees.begin(), record.degrees.end());
  const std::vector<Complex> at_probes = evaluate_images(p, ctx.probe_images);
  const std::vector<Complex> at_samples = evaluate_images(p, ctx.sample_images);
  for (std::size_t i = 0; i < at_probes.size(); ++i) state.q_probes[i] += at_probes[i];
  for (std::size_t i = 0; i < at_samples.size(); ++i) state.q_samples[i] += at_samples[i];

  std::vector<double> gap_sq(at_samples.size());
  for (std::size_t i = 0; i < gap_sq.size(); ++i) {
    const double g = ctx.phi_samples[i] - std::abs(state.q_samples[i]);
    gap_sq[i] = g * g;
  }
  const IntegralEstimate d = integrate_values(std::span<const double>(gap_sq), ctx.samples);
  const std::vector<double> m = margins(ctx.phi_probes, state.q_probes);
  state.defect_history.push_back(d.value.real());
  state.defect_std_errors.push_back(d.std_error);
  state.sup_margin_history.push_back(*std::min_element(m.begin(), m.end()));
  record.defect = d.value.real();
  record.defect_std_error = d.std_error;
  record.min_margin = state.sup_margin_history.back();
}

IntegralEstimate defect(const FPolynomial& q, const TargetModulus& target,
                        const BoundarySampleSet& samples, const CoveringMap& map) {
  const std::vector<ComplexPoint2> images = samples.images(map);
  const std::vector<Complex> values = evaluate_images(q, images);
  std::vector<double> gap_sq(images.size());
  for (std::size_t i = 0; i < images.size(); ++i) {
    const double g = target.phi(images[i]) - std::abs(values[i]);
    gap_sq[i] = g * g;
  }
  return integrate_values(std::span<const double>(gap_sq), samples);
}

std::string to_string(BuildStatus status) {
  switch (status) {
    case BuildStatus::kBudget:
      return "budget";
    case BuildStatus::kTargetReached:
      return "defect_target_reached";
    case BuildStatus::kStagnation:
      return "stagnation";
    case BuildStatus::kApproximation:
      return "approximation_failure";
    case BuildStatus::kInvariant:
      return "invariant_violation";
  }
  return "unknown";
}

BuildOutcome build_series(const SeriesContext& ctx, LISet e, const SeriesConfig& config) {
  if (config.budget < 1) throw DomainError("build_series: budget must be >= 1");
  BuildOutcome out;
  out.state = SeriesState::empty(ctx);
  {
    std::vector<double> sq(ctx.phi_samples.size());
    for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = ctx.phi_samples[i] * ctx.phi_samples[i];
    const IntegralEstimate est = integrate_values(std::span<const double>(sq), ctx.samples);
    out.phi_energy = est.value.real();
    out.phi_energy_std_error = est.std_error;
  }
  const double target = config.defect_target.value_or(0.05 * ctx.map.sheet_count());

  for (std::size_t step = 1; step <= config.budget; ++step) {
    if (out.state.defect_history.back() <= target) break;
    StepResult result;
    try {
      result = generating_step(out.state, ctx, e, config, step);
    } catch (const StagnationError& err) {
      out.status = BuildStatus::kStagnation;
      out.message = err.what();
      return out;
    } catch (const ApproximationError& err) {
      out.status = BuildStatus::kApproximation;
      out.message = err.what();
      return out;
    } catch (const InvariantError& err) {
      out.status = BuildStatus::kInvariant;
      out.message = err.what();
      return out;
    }
    const double previous = out.state.defect_history.back();
    accept_step(out.state, ctx, result.p, result.record);
    out.steps.push_back(std::move(result.record));
    if (!(out.state.defect_history.back() < previous)) {
      out.status = BuildStatus::kInvariant;
      out.message = "defect did not decrease at step " + std::to_string(step);
      return out;
    }
    if (!(out.state.sup_margin_history.back() > 0.0)) {
      out.status = BuildStatus::kInvariant;
      out.message = "sampled |Q_N| reached phi at step " + std::to_string(step);
      return out;
    }
  }
  out.status = out.state.defect_history.back() <= target ? BuildStatus::kTargetReached
                                                          : BuildStatus::kBudget;
  return out;
}

SeriesLedger ledger(const BuildOutcome& outcome, const CoveringMap& map) {
  SeriesLedger l;
  const auto& partials = outcome.state.partials;
  for (const auto& p : partials) l.parseval_sum += norm_squared(p, map);
  l.parseval_norm = norm_squared(outcome.state.sum, map);
  for (std::size_t i = 0; i < partials.size(); ++i) {
    for (std::size_t j = i + 1; j < partials.size(); ++j) {
      l.max_cross_product = std::max(l.max_cross_product, std::abs(inner_product(partials[i], partials[j], map)));
    }
  }
  const auto& d = outcome.state.defect_history;
  for (std::size_t i = 1; i < d.size(); ++i) l.defect_monotone = l.defect_monotone && d[i] < d[i - 1];
  for (double m : outcome.state.sup_margin_history) l.ceiling_holds = l.ceiling_holds && m > 0.0;
  l.energy_within_budget =
      l.parseval_sum <= outcome.phi_energy + 3.0 * outcome.phi_energy_std_error + 1e-12;
  return l;
}

nlohmann::json to_json(const StepRecord& r) {
  return {{"step", r.step},
          {"k", r.k},
          {"block", r.block},
          {"degrees", r.degrees},
          {"surrogate_degree", r.surrogate_degree},
          {"surrogate_terms", r.surrogate_terms},
          {"attempts", r.attempts},
          {"approximation_ratio", r.approximation_ratio},
          {"approximation_bound", kApproximationBound},
          {"p_energy_exact", r.p_energy},
          {"psi_energy_mc", r.psi_energy},
          {"energy_ratio", r.energy_ratio},
          {"defect", r.defect},
          {"defect_std_error", r.defect_std_error},
          {"min_margin", r.min_margin},
          {"rw_certificate", to_json(r.certificate)}};
}

nlohmann::json report_json(const BuildOutcome& outcome, const SeriesContext& ctx) {
  const SeriesLedger l = ledger(outcome, ctx.map);
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& r : outcome.steps) steps.push_back(to_json(r));
  std::vector<double> cumulative;
  double running = 0.0;
  for (const auto& p : outcome.state.partials) {
    running += norm_squared(p, ctx.map);
    cumulative.push_back(running);
  }
  return {
      {"status", to_string(outcome.status)},
      {"message", outcome.message},
      {"steps_taken", outcome.steps.size()},
      {"note", "finite partial sums Q_N with convergence diagnostics; no limit is computed"},
      {"sheet_count", ctx.map.sheet_count()},
      {"probe_count", ctx.probes.count()},
      {"sample_count", ctx.samples.count()},
      {"defect_curve", {{"values", outcome.state.defect_history},
                        {"std_errors", outcome.state.defect_std_errors},
                        {"identity", "D_N = int (phi o f - |Q_N|)^2 dsigma_M, strictly decreasing"},
                        {"monotone", l.defect_monotone}}},
      {"sup_margin_history", {{"values", outcome.state.sup_margin_history},
                              {"identity", "min over probes of phi o f - |Q_N| > 0"},
                              {"holds", l.ceiling_holds}}},
      {"parseval_ledger", {{"sum_partial_energies", l.parseval_sum},
                           {"norm_Q_squared", l.parseval_norm},
                           {"abs_difference", std::abs(l.parseval_sum - l.parseval_norm)},
                           {"tolerance", 1e-10},
                           {"max_cross_inner_product", l.max_cross_product},
                           {"cumulative", cumulative},
                           {"identity", "||Q_N||^2 = sum_i ||P_i||^2 for orthogonal P_i"}}},
      {"energy_ledger", {{"sum_partial_energies", l.parseval_sum},
                         {"phi_energy", outcome.phi_energy},
                         {"phi_energy_std_error", outcome.phi_energy_std_error},
                         {"tolerance", "3 std errors"},
                         {"holds", l.energy_within_budget},
                         {"identity", "sum_i ||P_i||^2 <= int (phi o f)^2 dsigma_M"}}},
      {"steps", steps}};
}

std::string steps_csv(const BuildOutcome& outcome) {
  std::ostringstream out;
  out.precision(17);
  out << "N,k,degree_min,degree_max,p_energy,defect,min_margin\n";
  for (const auto& r : outcome.steps) {
    out << r.step << ',' << r.k << ',' << (r.degrees.empty() ? 0 : *r.degrees.begin()) << ','
        << (r.degrees.empty() ? 0 : *r.degrees.rbegin()) << ',' << r.p_energy << ',' << r.defect
        << ',' << r.min_margin << '\n';
  }
  return out.str();
}

std::string histogram_csv(const BuildOutcome& outcome) {
  constexpr int bins = 20;
  std::vector<std::size_t> counts(bins + 1, 0);
  for (const Complex& v : outcome.state.q_samples) {
    const double m = std::abs(v);
    ++counts[m >= 1.0 ? bins : static_cast<std::size_t>(m * bins)];
  }
  std::ostringstream out;
  out << "lower,upper,count\n";
  for (int b = 0; b < bins; ++b) out << b / double(bins) << ',' << (b + 1) / double(bins) << ',' << counts[b] << '\n';
  out << "1,inf," << counts[bins] << '\n';
  return out.str();
}

}  // namespace innerfn

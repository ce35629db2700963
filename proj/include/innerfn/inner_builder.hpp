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

#include <cstdint>
#include <functional>
#include <json.hpp>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "innerfn/covering_domain.hpp"
#include "innerfn/f_polynomial.hpp"
#include "innerfn/rw_sequence.hpp"
#include "innerfn/sphere_measure.hpp"

namespace innerfn {

// A set E of nonnegative integers containing arbitrarily long runs of
// consecutive integers, minus a finite set of consumed degrees.
struct LISet {
  std::function<bool(int)> contains;
  std::string description;
  std::set<int> excluded;

  bool available(int n) const { return n >= 0 && contains(n) && !excluded.contains(n); }

  static LISet all_nonnegative();
  // {n : n mod modulus < width}
  static LISet residue_window(int modulus, int width);
};

// First run of `length` consecutive available members starting at or above
// `min_start`. peek_block leaves E untouched; next_block marks the run consumed.
std::vector<int> peek_block(const LISet& e, int length, int min_start = 0);
std::vector<int> next_block(LISet& e, int length, int min_start = 0);

// Positive target modulus phi, evaluated on points of the closed ball.
struct TargetModulus {
  std::function<double(const ComplexPoint2&)> phi;
  std::string name;

  static TargetModulus constant(double c);
  // a0 + a1 |eta1|^2
  static TargetModulus radial(double a0, double a1);
};

// phi on each image; throws PositivityError unless every value is finite
// and > 0. Returns the minimum.
double check_positive(const TargetModulus& target, std::span<const ComplexPoint2> images);

struct SeriesConfig {
  std::uint64_t seed = 0;
  int min_degree = 8;                 // lower bound on the RW degree k
  std::size_t candidate_count = 100000;
  std::size_t sign_trials = 256;
  std::size_t rotation_trials = 64;
  int surrogate_degree = 6;           // initial symbol degree of the psi fit
  int surrogate_degree_max = 12;
  double epsilon_energy = 1e-4;       // floor on int |P|^2 / int psi^2
  std::size_t budget = 50;
  std::optional<double> defect_target;  // absolute; default 0.05 N
  double surrogate_prune = 1e-12;
  int surrogate_refinements = 8;  // Lawson passes of the weighted fit
};

// Fixed sample sets shared by every step: `probes` carry the sup checks, the
// psi fit and the measure mu; `samples` carry the L2 integrals.
struct SeriesContext {
  CoveringMap map;
  BoundarySampleSet probes;
  BoundarySampleSet samples;
  std::vector<ComplexPoint2> probe_images;
  std::vector<ComplexPoint2> sample_images;
  std::vector<double> phi_probes;
  std::vector<double> phi_samples;

  SeriesContext(const CoveringMap& map, BoundarySampleSet probes, BoundarySampleSet samples,
                const TargetModulus& target);
};

struct SeriesState {
  std::vector<FPolynomial> partials;  // P_0 .. P_N, holomorphic
  FPolynomial sum;                    // Q_N
  std::set<int> used_degrees;
  std::vector<double> defect_history;
  std::vector<double> defect_std_errors;
  std::vector<double> sup_margin_history;  // min over probes of phi - |Q_N|
  std::vector<Complex> q_probes;           // Q_N at the probe images
  std::vector<Complex> q_samples;          // Q_N at the sample images

  // P_0 = Q_0 = 0 with D_0 and the initial margin filled in.
  static SeriesState empty(const SeriesContext& ctx);
};

bool is_constant_data(std::span<const double> values);

// Real-valued least-squares surrogate of `values` at `images` over mixed
// monomials f^a conj(f)^b with |a| + |b| <= degree and min(a1, b1) = 0 (a
// basis of polynomials restricted to the sphere). Residuals are scaled by
// `weights` when given; `refinements` Lawson passes then move the fit toward
// the smallest weighted sup error. Returns the constant when the data are
// constant.
FPolynomial fit_surrogate(std::span<const ComplexPoint2> images, std::span<const double> values,
                          int degree, double prune, std::span<const double> weights = {},
                          int refinements = 0);

struct StepRecord {
  std::size_t step = 0;
  int k = 0;
  std::vector<int> block;
  std::set<int> degrees;
  int surrogate_degree = 0;
  std::size_t surrogate_terms = 0;
  std::size_t attempts = 0;
  double approximation_ratio = 0.0;  // max over probes of |F - W psi| / psi
  double p_energy = 0.0;             // exact int |P|^2
  double psi_energy = 0.0;           // MC int psi^2
  double energy_ratio = 0.0;
  double defect = 0.0;
  double defect_std_error = 0.0;
  double min_margin = 0.0;
  RWCertificate certificate;
};

struct StepResult {
  FPolynomial p;
  StepRecord record;
};

// One application of the generating step: returns P_{N+1} with degrees in a
// fresh block of `e` (consumed on success) and |P| < phi - |Q_N| on probes.
// Throws ApproximationError or StagnationError.
StepResult generating_step(const SeriesState& state, const SeriesContext& ctx, LISet& e,
                           const SeriesConfig& config, std::size_t step_index);

// Incorporates P into the state and appends the new defect and margin.
void accept_step(SeriesState& state, const SeriesContext& ctx, const FPolynomial& p,
                 StepRecord& record);

// MC estimate of int (phi o f - |Q_N|)^2 dsigma_M over `samples`.
IntegralEstimate defect(const FPolynomial& q, const TargetModulus& target,
                        const BoundarySampleSet& samples, const CoveringMap& map);

enum class BuildStatus { kBudget, kTargetReached, kStagnation, kApproximation, kInvariant };
std::string to_string(BuildStatus status);

struct BuildOutcome {
  SeriesState state;
  std::vector<StepRecord> steps;
  BuildStatus status = BuildStatus::kBudget;
  std::string message;
  double phi_energy = 0.0;  // MC int (phi o f)^2
  double phi_energy_std_error = 0.0;
};

// Iterates the generating step until the budget, the defect target, or an
// error. The state built so far is always returned.
BuildOutcome build_series(const SeriesContext& ctx, LISet e, const SeriesConfig& config);

// Invariant ledgers over an outcome.
struct SeriesLedger {
  double parseval_sum = 0.0;       // sum_i ||P_i||^2
  double parseval_norm = 0.0;      // ||Q_N||^2
  double max_cross_product = 0.0;  // max |<P_i, P_j>|, i != j
  bool defect_monotone = true;
  bool ceiling_holds = true;
  bool energy_within_budget = true;
};
SeriesLedger ledger(const BuildOutcome& outcome, const CoveringMap& map);

nlohmann::json to_json(const StepRecord& record);
nlohmann::json report_json(const BuildOutcome& outcome, const SeriesContext& ctx);
std::string steps_csv(const BuildOutcome& outcome);
// Histogram of sampled |Q_N| in bins of width 0.05 on [0, 1), plus a final
// bin for values >= 1.
std::string histogram_csv(const BuildOutcome& outcome);

}  // namespace innerfn

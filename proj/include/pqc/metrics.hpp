// Copyright 2026 The pqclab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "pqc/concentration.hpp"
#include "pqc/hamiltonian.hpp"
#include "pqc/sim/circuit.hpp"
#include "pqc/sim/state_vector.hpp"

namespace pqc {

/// Uniform sampling interval for circuit parameters.
struct ParamDomain {
  double lower = 0.0;
  double upper = 2 * std::numbers::pi;
};

struct MetricConfig {
  int n_fidelity_pairs = 5000;
  int n_bins = 75;
  double eps_truncation = 0.0;
  double tau_expr = 0.005;
  /// Normalization for the expressibility loss; defaults to the KL of a
  /// point mass in the bin containing F = 1 (see default_expr_max).
  std::optional<double> expr_max;
  double tau_bp = 8.0;
  double tau_ent = 0.0;
  int m_gradient_samples = 11806;
  ClipBounds clip;
  double delta = 0.05;
  double fd_step = 1e-7;
  ParamDomain param_domain;
  int n_entanglement_samples = 1000;
  /// Presets resolved per circuit: "zero", "plus", "haar" (one Haar draw per
  /// entry), or a bitstring such as "0101" (character j is qubit j).
  std::vector<std::string> initial_states = {"zero"};
  /// Divide gradient variance by the heuristic circuit error probability.
  bool normalize_by_noise = true;
};

void validate(const MetricConfig& cfg);

/// Heuristic gate error rates. Excitation gates are charged as this many
/// two-qubit gates since circuits are not transpiled.
struct NoiseModel {
  double p1 = 0.001;
  double p2 = 0.01;
  double single_exc_two_qubit_units = 2;
  double double_exc_two_qubit_units = 13;
};

struct FidelityHistogram {
  std::vector<double> edges;
  std::vector<double> pqc_mass;
  std::vector<double> haar_mass;

  friend bool operator==(const FidelityHistogram&, const FidelityHistogram&) = default;
};

/// Bin [a, b] receives (1-a)^{N-1} - (1-b)^{N-1}.
std::vector<double> haar_bin_mass(std::span<const double> edges, double dimension);

/// B bins over [0, 1]; with eps > 0 the last edge moves to
/// min((B-1)/B, 1 - eps^{1/(N-1)}) so the final bin holds Haar mass >= eps and
/// the first B-1 bins split [0, b_{B-1}] uniformly.
std::vector<double> truncated_edges(int bins, double dimension, double eps);

/// Bins fidelities (right-closed final bin) and attaches the Haar reference.
FidelityHistogram fidelity_histogram(std::span<const double> fidelities, std::vector<double> edges,
                                     double dimension);

/// Σ p log(p / q) with 0 log 0 = 0.
double kl_divergence(std::span<const double> p, std::span<const double> q);

/// -log of the Haar mass in the final bin.
double default_expr_max(int bins, double dimension, double eps);

std::vector<StateVector> resolve_initial_states(int n, const std::vector<std::string>& presets, std::uint64_t seed);

struct ExpressibilityResult {
  double expr = 0;
  std::vector<double> per_state_kl;
  /// Histogram of the first initial state.
  FidelityHistogram histogram;
};

/// Mean over initial states of KL(PQC fidelity histogram || Haar).
ExpressibilityResult expressibility(const Circuit& circuit, const MetricConfig& cfg, std::uint64_t seed);

/// Same statistic for pairs of directly Haar-sampled states.
ExpressibilityResult haar_expressibility(int n, const MetricConfig& cfg, std::uint64_t seed);

/// max(log(expr/τ) / log(expr_max/τ), 0) clamped to 1; 0 when expr == 0.
double expr_loss(double expr, double tau_expr, double expr_max);

/// 1 - (1-p1)^{N1} (1-p2)^{N2}.
double circuit_error_probability(double n1, double n2, const NoiseModel& noise);
double circuit_error_probability(const Circuit& circuit, const NoiseModel& noise);

/// Local Z on the last qubit.
PauliSum default_observable(int n);

struct TrainabilityResult {
  double train_normalized = 0;  ///< mean s^2 / Pr(err) (or mean s^2 if unnormalized)
  double mean_variance = 0;
  double error_probability = 0;
  std::vector<double> per_param_variance;  ///< averaged over initial states
  std::vector<VarianceEstimate> estimates;  ///< slot-major, then initial state
};

/// Central finite-difference derivative of <O> w.r.t. one slot, perturbing
/// every gate that shares it.
double finite_difference_gradient(const Circuit& circuit, const PauliSum& observable, std::vector<double> theta,
                                  int slot, const StateVector& input, double step);

TrainabilityResult trainability(const Circuit& circuit, const PauliSum& observable, const MetricConfig& cfg,
                                const NoiseModel& noise, std::uint64_t seed);

/// max((τ_BP - statistic)/τ_BP, 0).
double train_loss(double statistic, double tau_bp);

/// Q = (2/n) Σ_j (1 - Tr ρ_j^2).
double meyer_wallach(const StateVector& state);

/// Monte Carlo mean of Q over sampled θ and initial states.
double entanglement(const Circuit& circuit, const MetricConfig& cfg, std::uint64_t seed);

/// max((τ_Ent - ent)/τ_Ent, 0); 0 when τ_Ent == 0.
double ent_loss(double ent, double tau_ent);

struct ComplexityCaps {
  int theta_max = 28;
  int gates_max = 28;
  int depth_max = 15;
};

/// (|θ| + D + G) / (|θ|_max + D_max + G_max).
double cmplx_loss(const Circuit& circuit, const ComplexityCaps& caps);

struct MetricSelection {
  bool expr = true;
  bool train = true;
  bool ent = true;
};

struct MetricReport {
  std::optional<double> expr;
  std::optional<double> ent;
  std::optional<double> train_normalized;
  std::optional<double> mean_variance;
  std::optional<double> error_probability;
  std::vector<double> per_param_variance;
  std::optional<double> loss_expr;
  std::optional<double> loss_train;
  std::optional<double> loss_ent;
  double loss_cmplx = 0;
  ComplexityCounts counts;
  std::uint64_t seed = 0;
  std::optional<FidelityHistogram> histogram;

  friend bool operator==(const MetricReport&, const MetricReport&) = default;
};

struct MetricInputs {
  MetricConfig config;
  NoiseModel noise;
  std::optional<PauliSum> observable;  ///< default_observable(n) when empty
  ComplexityCaps caps;
  MetricSelection selection;
};

MetricReport evaluate_metrics(const Circuit& circuit, const MetricInputs& inputs, std::uint64_t seed);

nlohmann::json report_to_json(const MetricReport& report);
/// CSV with columns bin_lo,bin_hi,pqc_mass,haar_mass.
std::string histogram_csv(const FidelityHistogram& histogram);

}  // namespace pqc

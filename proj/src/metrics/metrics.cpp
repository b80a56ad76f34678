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

#include "pqc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <limits>
#include <numeric>
#include <sstream>

#include "pqc/error.hpp"
#include "pqc/parallel.hpp"
#include "pqc/random.hpp"
#include "pqc/sim/simulator.hpp"

namespace pqc {

namespace {

constexpr int kPairsPerChunk = 1000;

double hilbert_dimension(int n) { return std::ldexp(1.0, n); }

std::vector<double> sample_theta(int count, const ParamDomain& domain, Rng& rng) {
  std::uniform_real_distribution<double> u(domain.lower, domain.upper);
  std::vector<double> theta(static_cast<std::size_t>(count));
  for (double& t : theta) t = u(rng);
  return theta;
}

/// Order-independent reduction of per-task partial sums.
double pairwise_sum(std::span<const double> x) {
  if (x.size() <= 8) return std::accumulate(x.begin(), x.end(), 0.0);
  const std::size_t half = x.size() / 2;
  return pairwise_sum(x.first(half)) + pairwise_sum(x.subspan(half));
}

double mean(std::span<const double> x) { return x.empty() ? 0.0 : pairwise_sum(x) / static_cast<double>(x.size()); }

ExpressibilityResult kl_over_states(int n, const MetricConfig& cfg, std::size_t n_states,
                                    const std::function<double(std::size_t state, Rng&)>& draw_fidelity,
                                    std::uint64_t seed) {
  validate(cfg);
  const double dim = hilbert_dimension(n);
  const auto edges = truncated_edges(cfg.n_bins, dim, cfg.eps_truncation);
  const int n_chunks = (cfg.n_fidelity_pairs + kPairsPerChunk - 1) / kPairsPerChunk;
  std::vector<double> fidelities(n_states * static_cast<std::size_t>(cfg.n_fidelity_pairs));
  parallel_for(n_states * static_cast<std::size_t>(n_chunks), [&](std::size_t task) {
    const std::size_t s = task / static_cast<std::size_t>(n_chunks);
    const int chunk = static_cast<int>(task % static_cast<std::size_t>(n_chunks));
    Rng rng = make_rng(seed, {stream::kExpressibility, s, static_cast<std::uint64_t>(chunk)});
    const int begin = chunk * kPairsPerChunk;
    const int end = std::min(cfg.n_fidelity_pairs, begin + kPairsPerChunk);
    for (int i = begin; i < end; ++i) {
      fidelities[s * static_cast<std::size_t>(cfg.n_fidelity_pairs) + static_cast<std::size_t>(i)] =
          draw_fidelity(s, rng);
    }
  });
  ExpressibilityResult result;
  for (std::size_t s = 0; s < n_states; ++s) {
    std::span<const double> f(fidelities.data() + s * static_cast<std::size_t>(cfg.n_fidelity_pairs),
                              static_cast<std::size_t>(cfg.n_fidelity_pairs));
    auto hist = fidelity_histogram(f, edges, dim);
    result.per_state_kl.push_back(kl_divergence(hist.pqc_mass, hist.haar_mass));
    if (s == 0) result.histogram = std::move(hist);
  }
  result.expr = mean(result.per_state_kl);
  return result;
}

}  // namespace

void validate(const MetricConfig& cfg) {
  if (cfg.n_bins < 2) throw Error("n_bins must be >= 2");
  if (!(cfg.eps_truncation >= 0 && cfg.eps_truncation < 1)) throw Error("eps_truncation must lie in [0, 1)");
  if (cfg.n_fidelity_pairs < 1) throw Error("n_fidelity_pairs must be positive");
  if (!(cfg.tau_expr > 0)) throw Error("tau_expr must be positive");
  if (cfg.expr_max && !(*cfg.expr_max > cfg.tau_expr)) throw Error("expr_max must exceed tau_expr");
  if (!(cfg.tau_bp > 0)) throw Error("tau_bp must be positive");
  if (!(cfg.tau_ent >= 0)) throw Error("tau_ent must be non-negative");
  if (cfg.m_gradient_samples < 3) throw Error("m_gradient_samples must be >= 3");
  if (!(cfg.clip.lower < cfg.clip.upper)) throw Error("clip bounds need L < U");
  if (!(cfg.fd_step > 0)) throw Error("fd_step must be positive");
  if (!(cfg.param_domain.lower < cfg.param_domain.upper)) throw Error("param_domain must be a non-empty interval");
  if (cfg.n_entanglement_samples < 1) throw Error("n_entanglement_samples must be positive");
  if (cfg.initial_states.empty()) throw Error("at least one initial state is required");
}

std::vector<double> haar_bin_mass(std::span<const double> edges, double dimension) {
  if (!(dimension >= 2)) throw Error("Hilbert dimension must be >= 2");
  if (edges.size() < 2 || edges.front() != 0.0 || edges.back() != 1.0) {
    throw Error("bin edges must span [0, 1]");
  }
  std::vector<double> mass(edges.size() - 1);
  for (std::size_t b = 0; b + 1 < edges.size(); ++b) {
    if (!(edges[b] < edges[b + 1])) throw Error("bin edges must be strictly ascending");
    mass[b] = std::pow(1 - edges[b], dimension - 1) - std::pow(1 - edges[b + 1], dimension - 1);
  }
  return mass;
}

std::vector<double> truncated_edges(int bins, double dimension, double eps) {
  if (bins < 2) throw Error("need at least two bins");
  if (!(eps >= 0 && eps < 1)) throw Error("eps must lie in [0, 1)");
  const double uniform_last = static_cast<double>(bins - 1) / bins;
  const double last = eps > 0 ? std::min(uniform_last, 1 - std::pow(eps, 1 / (dimension - 1))) : uniform_last;
  std::vector<double> edges(static_cast<std::size_t>(bins) + 1);
  for (int b = 0; b < bins; ++b) edges[static_cast<std::size_t>(b)] = last * b / (bins - 1);
  edges[static_cast<std::size_t>(bins - 1)] = last;
  edges.back() = 1.0;
  return edges;
}

FidelityHistogram fidelity_histogram(std::span<const double> fidelities, std::vector<double> edges,
                                     double dimension) {
  FidelityHistogram h;
  h.haar_mass = haar_bin_mass(edges, dimension);
  const std::size_t bins = edges.size() - 1;
  std::vector<std::int64_t> counts(bins, 0);
  for (double f : fidelities) {
    auto it = std::upper_bound(edges.begin(), edges.end(), f);
    auto b = static_cast<std::ptrdiff_t>(it - edges.begin()) - 1;
    b = std::clamp<std::ptrdiff_t>(b, 0, static_cast<std::ptrdiff_t>(bins) - 1);
    ++counts[static_cast<std::size_t>(b)];
  }
  h.pqc_mass.resize(bins);
  const double total = static_cast<double>(fidelities.size());
  for (std::size_t b = 0; b < bins; ++b) h.pqc_mass[b] = static_cast<double>(counts[b]) / total;
  h.edges = std::move(edges);
  return h;
}

double kl_divergence(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw DimensionError("kl_divergence: length mismatch");
  double kl = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0) kl += p[i] * std::log(p[i] / q[i]);
  }
  return std::max(kl, 0.0);
}

double default_expr_max(int bins, double dimension, double eps) {
  const auto edges = truncated_edges(bins, dimension, eps);
  return -std::log(haar_bin_mass(edges, dimension).back());
}

std::vector<StateVector> resolve_initial_states(int n, const std::vector<std::string>& presets,
                                                std::uint64_t seed) {
  std::vector<StateVector> states;
  for (std::size_t i = 0; i < presets.size(); ++i) {
    const auto& p = presets[i];
    if (p == "zero") {
      states.emplace_back(n);
    } else if (p == "plus") {
      states.push_back(plus_state(n));
    } else if (p == "haar") {
      Rng rng = make_rng(seed, {stream::kInitialStates, i});
      states.push_back(haar_random_state(n, rng));
    } else if (static_cast<int>(p.size()) == n && p.find_first_not_of("01") == std::string::npos) {
      std::uint64_t index = 0;
      for (int q = 0; q < n; ++q) {
        if (p[static_cast<std::size_t>(q)] == '1') index |= std::uint64_t{1} << q;
      }
      states.push_back(StateVector::basis(n, index));
    } else {
      throw Error("unknown initial state preset '" + p + "'");
    }
  }
  return states;
}

ExpressibilityResult expressibility(const Circuit& circuit, const MetricConfig& cfg, std::uint64_t seed) {
  const auto states = resolve_initial_states(circuit.num_qubits(), cfg.initial_states, seed);
  return kl_over_states(
      circuit.num_qubits(), cfg, states.size(),
      [&](std::size_t s, Rng& rng) {
        const auto a = apply_circuit(circuit, sample_theta(circuit.num_params(), cfg.param_domain, rng), states[s]);
        const auto b = apply_circuit(circuit, sample_theta(circuit.num_params(), cfg.param_domain, rng), states[s]);
        return fidelity(a, b);
      },
      seed);
}

ExpressibilityResult haar_expressibility(int n, const MetricConfig& cfg, std::uint64_t seed) {
  return kl_over_states(
      n, cfg, 1,
      [&](std::size_t, Rng& rng) {
        const auto a = haar_random_state(n, rng);
        const auto b = haar_random_state(n, rng);
        return fidelity(a, b);
      },
      seed);
}

double expr_loss(double expr, double tau_expr, double expr_max) {
  if (!(tau_expr > 0) || !(expr_max > tau_expr)) throw Error("expr_loss needs 0 < tau_expr < expr_max");
  if (!(expr > 0)) return 0.0;
  const double loss = std::log(expr / tau_expr) / std::log(expr_max / tau_expr);
  return std::clamp(loss, 0.0, 1.0);
}

double circuit_error_probability(double n1, double n2, const NoiseModel& noise) {
  if (!(noise.p1 >= 0 && noise.p1 <= 1) || !(noise.p2 >= 0 && noise.p2 <= 1)) {
    throw Error("gate error probabilities must lie in [0, 1]");
  }
  return 1 - std::pow(1 - noise.p1, n1) * std::pow(1 - noise.p2, n2);
}

double circuit_error_probability(const Circuit& circuit, const NoiseModel& noise) {
  double n1 = 0, n2 = 0;
  for (const auto& g : circuit.gates()) {
    switch (g.kind) {
      case GateKind::SingleExc: n2 += noise.single_exc_two_qubit_units; break;
      case GateKind::DoubleExc: n2 += noise.double_exc_two_qubit_units; break;
      default: (gate_arity(g.kind) == 1 ? n1 : n2) += 1;
    }
  }
  return circuit_error_probability(n1, n2, noise);
}

PauliSum default_observable(int n) {
  PauliSum o(n);
  o.add(1.0, PauliString::single(n, n - 1, 'Z'));
  return o;
}

double finite_difference_gradient(const Circuit& circuit, const PauliSum& observable, std::vector<double> theta,
                                  int slot, const StateVector& input, double step) {
  const auto i = static_cast<std::size_t>(slot);
  const double centre = theta[i];
  theta[i] = centre + step;
  const double plus = energy(apply_circuit(circuit, theta, input), observable);
  theta[i] = centre - step;
  const double minus = energy(apply_circuit(circuit, theta, input), observable);
  return (plus - minus) / (2 * step);
}

TrainabilityResult trainability(const Circuit& circuit, const PauliSum& observable, const MetricConfig& cfg,
                                const NoiseModel& noise, std::uint64_t seed) {
  validate(cfg);
  if (observable.num_qubits() != circuit.num_qubits()) throw DimensionError("observable size mismatch");
  TrainabilityResult result;
  result.error_probability = circuit_error_probability(circuit, noise);
  if (cfg.normalize_by_noise && !(result.error_probability > 0)) {
    throw Error("trainability normalization needs a non-zero circuit error probability");
  }
  const auto states = resolve_initial_states(circuit.num_qubits(), cfg.initial_states, seed);
  const std::size_t n_slots = static_cast<std::size_t>(circuit.num_params());
  const std::size_t n_states = states.size();
  result.estimates.resize(n_slots * n_states);

  parallel_for(n_slots * n_states, [&](std::size_t task) {
    const std::size_t slot = task / n_states;
    const std::size_t s = task % n_states;
    Rng rng = make_rng(seed, {stream::kTrainability, slot, s});
    std::vector<double> grads(static_cast<std::size_t>(cfg.m_gradient_samples));
    for (double& g : grads) {
      g = finite_difference_gradient(circuit, observable, sample_theta(circuit.num_params(), cfg.param_domain, rng),
                                     static_cast<int>(slot), states[s], cfg.fd_step);
    }
    GradientSample sample(clip(grads, cfg.clip), cfg.clip);
    result.estimates[task] = estimate_variance(sample, cfg.delta);
  });

  std::vector<double> all(result.estimates.size());
  std::transform(result.estimates.begin(), result.estimates.end(), all.begin(),
                 [](const VarianceEstimate& e) { return e.s2; });
  result.per_param_variance.resize(n_slots);
  for (std::size_t slot = 0; slot < n_slots; ++slot) {
    result.per_param_variance[slot] = mean(std::span<const double>(all).subspan(slot * n_states, n_states));
  }
  result.mean_variance = mean(all);
  result.train_normalized =
      cfg.normalize_by_noise ? result.mean_variance / result.error_probability : result.mean_variance;
  return result;
}

double train_loss(double statistic, double tau_bp) {
  if (!(tau_bp > 0)) throw Error("tau_bp must be positive");
  return std::max((tau_bp - statistic) / tau_bp, 0.0);
}

double meyer_wallach(const StateVector& state) {
  const int n = state.num_qubits();
  const auto& a = state.amplitudes();
  double linear_entropy = 0;
  for (int q = 0; q < n; ++q) {
    const std::uint64_t b = std::uint64_t{1} << q;
    double p0 = 0, p1 = 0;
    std::complex<double> coherence = 0;
    for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(a.size()); ++i) {
      if (i & b) continue;
      const auto x = a[static_cast<Eigen::Index>(i)];
      const auto y = a[static_cast<Eigen::Index>(i | b)];
      p0 += std::norm(x);
      p1 += std::norm(y);
      coherence += x * std::conj(y);
    }
    const double purity = p0 * p0 + p1 * p1 + 2 * std::norm(coherence);
    linear_entropy += 1 - purity;
  }
  return std::clamp(2.0 / n * linear_entropy, 0.0, 1.0);
}

double entanglement(const Circuit& circuit, const MetricConfig& cfg, std::uint64_t seed) {
  validate(cfg);
  const auto states = resolve_initial_states(circuit.num_qubits(), cfg.initial_states, seed);
  std::vector<double> per_state(states.size());
  parallel_for(states.size(), [&](std::size_t s) {
    Rng rng = make_rng(seed, {stream::kEntanglement, s});
    std::vector<double> q(static_cast<std::size_t>(cfg.n_entanglement_samples));
    for (double& v : q) {
      v = meyer_wallach(apply_circuit(circuit, sample_theta(circuit.num_params(), cfg.param_domain, rng), states[s]));
    }
    per_state[s] = mean(q);
  });
  return mean(per_state);
}

double ent_loss(double ent, double tau_ent) {
  if (tau_ent < 0) throw Error("tau_ent must be non-negative");
  if (tau_ent == 0) return 0.0;
  return std::max((tau_ent - ent) / tau_ent, 0.0);
}

double cmplx_loss(const Circuit& circuit, const ComplexityCaps& caps) {
  const double denom = caps.theta_max + caps.depth_max + caps.gates_max;
  if (!(denom > 0)) throw Error("complexity caps must be positive");
  return static_cast<double>(circuit.complexity().total()) / denom;
}

MetricReport evaluate_metrics(const Circuit& circuit, const MetricInputs& inputs, std::uint64_t seed) {
  const auto& cfg = inputs.config;
  validate(cfg);
  MetricReport r;
  r.seed = seed;
  r.counts = circuit.complexity();
  r.loss_cmplx = cmplx_loss(circuit, inputs.caps);
  const int n = circuit.num_qubits();
  if (inputs.selection.expr) {
    auto e = expressibility(circuit, cfg, derive_seed(seed, {stream::kExpressibility}));
    r.expr = e.expr;
    r.histogram = std::move(e.histogram);
    const double emax = cfg.expr_max.value_or(default_expr_max(cfg.n_bins, hilbert_dimension(n), cfg.eps_truncation));
    r.loss_expr = expr_loss(e.expr, cfg.tau_expr, emax);
  }
  if (inputs.selection.train) {
    const PauliSum obs = inputs.observable.value_or(default_observable(n));
    auto t = trainability(circuit, obs, cfg, inputs.noise, derive_seed(seed, {stream::kTrainability}));
    r.train_normalized = t.train_normalized;
    r.mean_variance = t.mean_variance;
    r.error_probability = t.error_probability;
    r.per_param_variance = std::move(t.per_param_variance);
    r.loss_train = train_loss(t.train_normalized, cfg.tau_bp);
  }
  if (inputs.selection.ent) {
    r.ent = entanglement(circuit, cfg, derive_seed(seed, {stream::kEntanglement}));
    r.loss_ent = ent_loss(*r.ent, cfg.tau_ent);
  }
  return r;
}

nlohmann::json report_to_json(const MetricReport& r) {
  auto opt = [](const std::optional<double>& v) -> nlohmann::json { return v ? nlohmann::json(*v) : nullptr; };
  return {
      {"expr", opt(r.expr)},
      {"ent", opt(r.ent)},
      {"train_normalized", opt(r.train_normalized)},
      {"mean_variance", opt(r.mean_variance)},
      {"error_probability", opt(r.error_probability)},
      {"per_param_variance", r.per_param_variance},
      {"losses",
       {{"expr", opt(r.loss_expr)}, {"train", opt(r.loss_train)}, {"ent", opt(r.loss_ent)}, {"cmplx", r.loss_cmplx}}},
      {"counts", {{"n_params", r.counts.n_params}, {"gates", r.counts.gates}, {"depth", r.counts.depth}}},
      {"seed", r.seed},
  };
}

std::string histogram_csv(const FidelityHistogram& h) {
  std::ostringstream out;
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  out << "bin_lo,bin_hi,pqc_mass,haar_mass\n";
  for (std::size_t b = 0; b < h.pqc_mass.size(); ++b) {
    out << h.edges[b] << ',' << h.edges[b + 1] << ',' << h.pqc_mass[b] << ',' << h.haar_mass[b] << '\n';
  }
  return out.str();
}

}  // namespace pqc

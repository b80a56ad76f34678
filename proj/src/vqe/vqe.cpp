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

#include "pqc/vqe.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "pqc/error.hpp"
#include "pqc/parallel.hpp"
#include "pqc/random.hpp"
#include "pqc/sim/simulator.hpp"

namespace pqc {

StateVector prepare_reference(const std::string& bitstring) {
  if (bitstring.empty()) throw Error("reference bitstring is empty");
  Eigen::Index index = 0;
  for (std::size_t q = 0; q < bitstring.size(); ++q) {
    const char c = bitstring[q];
    if (c != '0' && c != '1') throw Error("reference bitstring may only contain 0 and 1: '" + bitstring + "'");
    if (c == '1') index |= Eigen::Index{1} << q;
  }
  return StateVector::basis(static_cast<int>(bitstring.size()), index);
}

std::string hartree_fock_bitstring(int n_spatial, int n_electrons) {
  if (n_spatial < 1) throw Error("need at least one spatial orbital");
  if (n_electrons < 0 || n_electrons % 2 != 0 || n_electrons > 2 * n_spatial)
    throw Error("closed-shell reference needs an even electron count <= 2 * n_spatial");
  std::string bits(static_cast<std::size_t>(2 * n_spatial), '0');
  for (int i = 0; i < n_electrons / 2; ++i) {
    bits[static_cast<std::size_t>(i)] = '1';
    bits[static_cast<std::size_t>(n_spatial + i)] = '1';
  }
  return bits;
}

std::vector<GateSpec> spin_conserving_pool(int n_spatial) {
  if (n_spatial < 1) throw Error("need at least one spatial orbital");
  const int n = 2 * n_spatial;
  auto block = [n_spatial](int q) { return q < n_spatial ? 0 : 1; };
  std::vector<GateSpec> pool;
  for (int i = 0; i < n; ++i)
    for (int k = i + 1; k < n; ++k)
      if (block(i) == block(k)) pool.push_back({GateKind::SingleExc, {i, k}, {}});

  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  for (std::size_t a = 0; a < pairs.size(); ++a) {
    for (std::size_t b = a + 1; b < pairs.size(); ++b) {
      const auto [i, j] = pairs[a];
      const auto [k, l] = pairs[b];
      if (i == k || i == l || j == k || j == l) continue;
      if (block(i) + block(j) != block(k) + block(l)) continue;
      pool.push_back({GateKind::DoubleExc, {i, j, k, l}, {}});
    }
  }
  return pool;
}

Circuit excitation_ansatz(int n, const std::vector<GateSpec>& templates) {
  Circuit c(n);
  for (const auto& t : templates) c.append_fresh(t.kind, t.qubits);
  return c;
}

PauliSum total_occupation(int n) {
  PauliSum h(n);
  h.add(0.5 * n, PauliString::identity(n));
  for (int q = 0; q < n; ++q) h.add(-0.5, PauliString::single(n, q, 'Z'));
  return h;
}

namespace {

void validate(const VqeConfig& cfg, const PauliSum& h) {
  const int n = cfg.ansatz.num_qubits();
  if (h.num_qubits() != n) throw DimensionError("Hamiltonian width does not match the ansatz");
  if (!cfg.reference.empty() && static_cast<int>(cfg.reference.size()) != n)
    throw Error("reference bitstring length does not match the ansatz");
  const auto& o = cfg.optimizer;
  if (o.max_iterations < 0) throw Error("max_iterations must be >= 0");
  if (!(o.gradient_step > 0) || !(o.learning_rate > 0) || !(o.tolerance > 0))
    throw Error("optimizer step, learning rate and tolerance must be positive");
  if (cfg.theta0 && static_cast<int>(cfg.theta0->size()) != cfg.ansatz.num_params())
    throw Error("theta0 length does not match the ansatz parameter count");
}

std::vector<double> initial_theta(const VqeConfig& cfg) {
  if (cfg.theta0) return *cfg.theta0;
  std::vector<double> theta(static_cast<std::size_t>(cfg.ansatz.num_params()), 0.0);
  if (cfg.init == InitialParams::Uniform) {
    auto rng = make_rng(cfg.seed, {stream::kVqe});
    std::uniform_real_distribution<double> u(0, 2 * std::numbers::pi);
    for (double& t : theta) t = u(rng);
  }
  return theta;
}

}  // namespace

VqeTrace run_vqe(const VqeConfig& cfg, const PauliSum& hamiltonian) {
  validate(cfg, hamiltonian);
  const int n = cfg.ansatz.num_qubits();
  const StateVector reference = cfg.reference.empty() ? StateVector(n) : prepare_reference(cfg.reference);
  const PauliSum occupation = total_occupation(n);
  const auto& opt = cfg.optimizer;

  auto energy_at = [&](const std::vector<double>& theta) {
    const double e = energy(apply_circuit(cfg.ansatz, theta, reference), hamiltonian);
    if (!std::isfinite(e)) throw Error("non-finite energy during VQE");
    return e;
  };

  VqeTrace trace;
  std::vector<double> theta = initial_theta(cfg);
  std::vector<double> grad(theta.size());
  for (int it = 0;; ++it) {
    const StateVector psi = apply_circuit(cfg.ansatz, theta, reference);
    const double e = energy(psi, hamiltonian);
    if (!std::isfinite(e)) throw Error("non-finite energy during VQE");
    trace.iterations.push_back({it, e, energy(psi, occupation), theta});

    double largest = 0;
    for (std::size_t i = 0; i < theta.size(); ++i) {
      auto shifted = theta;
      shifted[i] = theta[i] + opt.gradient_step;
      const double up = energy_at(shifted);
      shifted[i] = theta[i] - opt.gradient_step;
      const double down = energy_at(shifted);
      grad[i] = (up - down) / (2 * opt.gradient_step);
      largest = std::max(largest, std::abs(grad[i]));
    }
    if (largest < opt.tolerance) {
      trace.converged = true;
      break;
    }
    if (it >= opt.max_iterations) break;
    for (std::size_t i = 0; i < theta.size(); ++i) theta[i] -= opt.learning_rate * grad[i];
  }

  trace.final_energy = trace.iterations.back().energy;
  trace.final_params = trace.iterations.back().theta;
  if (n <= kMaxExactQubits) {
    trace.exact_energy = exact_ground_energy(hamiltonian).energy;
    trace.gap = trace.final_energy - *trace.exact_energy;
  }
  return trace;
}

std::vector<VqeTrace> geometry_sweep(const VqeConfig& cfg, const std::vector<PauliSum>& hamiltonians) {
  for (const auto& h : hamiltonians)
    if (h.num_qubits() != cfg.ansatz.num_qubits())
      throw DimensionError("geometry sweep Hamiltonians must share the ansatz width");
  std::vector<VqeTrace> traces(hamiltonians.size());
  parallel_for(hamiltonians.size(), [&](std::size_t i) { traces[i] = run_vqe(cfg, hamiltonians[i]); });
  return traces;
}

std::string trace_csv(const VqeTrace& trace) {
  std::ostringstream out;
  out.precision(17);
  out << "iteration,energy\n";
  for (const auto& it : trace.iterations) out << it.iteration << ',' << it.energy << '\n';
  return out.str();
}

nlohmann::json trace_summary(const VqeTrace& trace) {
  nlohmann::json j;
  j["final_energy"] = trace.final_energy;
  j["final_params"] = trace.final_params;
  j["iterations"] = static_cast<int>(trace.iterations.size()) - 1;
  j["converged"] = trace.converged;
  j["exact_energy"] = trace.exact_energy ? nlohmann::json(*trace.exact_energy) : nlohmann::json();
  j["gap"] = trace.gap ? nlohmann::json(*trace.gap) : nlohmann::json();
  return j;
}

}  // namespace pqc

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
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "pqc/hamiltonian.hpp"
#include "pqc/sim/circuit.hpp"
#include "pqc/sim/state_vector.hpp"

namespace pqc {

/// Computational basis state from a bitstring; character j is qubit j.
StateVector prepare_reference(const std::string& bitstring);

/// Hartree-Fock occupation in blocked spin ordering (alpha orbitals are
/// qubits [0, n_spatial), beta orbitals follow): the lowest n_electrons/2
/// orbitals of each block are occupied.
std::string hartree_fock_bitstring(int n_spatial, int n_electrons);

/// Spin-conserving excitation templates for 2 * n_spatial spin orbitals in
/// blocked ordering. Singles connect orbitals of the same block; doubles move
/// a pair {i, j} to a disjoint pair {k, l} with the same per-block count.
/// Templates carry no parameter slots.
std::vector<GateSpec> spin_conserving_pool(int n_spatial);

/// Circuit applying each template with its own fresh slot.
Circuit excitation_ansatz(int n, const std::vector<GateSpec>& templates);

/// Σ_q (I - Z_q) / 2.
PauliSum total_occupation(int n);

enum class InitialParams { Zeros, Uniform };

struct OptimizerSettings {
  int max_iterations = 1000;
  double gradient_step = 1e-6;
  double learning_rate = 0.4;
  /// Stops once the largest gradient component drops below this.
  double tolerance = 1e-6;
};

struct VqeConfig {
  Circuit ansatz{1};
  std::string reference;  ///< bitstring; all zeros when empty
  InitialParams init = InitialParams::Zeros;
  /// Overrides `init` when set.
  std::optional<std::vector<double>> theta0;
  OptimizerSettings optimizer;
  std::uint64_t seed = 0;
};

struct VqeIteration {
  int iteration = 0;
  double energy = 0;
  double occupation = 0;  ///< <total_occupation>
  std::vector<double> theta;
};

struct VqeTrace {
  std::vector<VqeIteration> iterations;
  double final_energy = 0;
  std::vector<double> final_params;
  bool converged = false;
  std::optional<double> exact_energy;  ///< present up to kMaxExactQubits
  std::optional<double> gap;           ///< final_energy - exact_energy
};

/// Finite-difference gradient descent on E(θ) = <ψ(θ)|H|ψ(θ)>.
VqeTrace run_vqe(const VqeConfig& cfg, const PauliSum& hamiltonian);

/// run_vqe for every Hamiltonian with the same ansatz; geometries run in
/// parallel. All Hamiltonians must share the ansatz width.
std::vector<VqeTrace> geometry_sweep(const VqeConfig& cfg, const std::vector<PauliSum>& hamiltonians);

std::string trace_csv(const VqeTrace& trace);
nlohmann::json trace_summary(const VqeTrace& trace);

}  // namespace pqc

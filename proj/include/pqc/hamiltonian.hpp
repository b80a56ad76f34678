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

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "pqc/sim/state_vector.hpp"

namespace pqc {

/// Tensor product of single-qubit Paulis. Character j acts on qubit j.
class PauliString {
 public:
  explicit PauliString(std::string ops);

  /// Z on one qubit, identity elsewhere.
  static PauliString single(int n, int qubit, char op);
  static PauliString identity(int n) { return PauliString(std::string(static_cast<std::size_t>(n), 'I')); }

  int num_qubits() const noexcept { return static_cast<int>(ops_.size()); }
  const std::string& ops() const noexcept { return ops_; }
  /// Qubits where the operator flips the bit (X or Y).
  std::uint64_t x_mask() const noexcept { return x_mask_; }
  /// Qubits contributing a (-1)^bit sign (Y or Z).
  std::uint64_t z_mask() const noexcept { return z_mask_; }
  int y_count() const noexcept { return y_count_; }
  bool is_identity() const noexcept { return x_mask_ == 0 && z_mask_ == 0; }

  friend bool operator==(const PauliString& a, const PauliString& b) { return a.ops_ == b.ops_; }
  friend auto operator<=>(const PauliString& a, const PauliString& b) { return a.ops_ <=> b.ops_; }

 private:
  std::string ops_;
  std::uint64_t x_mask_ = 0;
  std::uint64_t z_mask_ = 0;
  int y_count_ = 0;
};

struct PauliTerm {
  double coefficient = 0;
  PauliString string;
};

/// Σ_j c_j P_j with one entry per distinct string (duplicates merge on insert,
/// first-seen order kept).
class PauliSum {
 public:
  explicit PauliSum(int n) : n_(n) {}

  void add(double coefficient, const PauliString& string);
  void add(double coefficient, std::string_view ops) { add(coefficient, PauliString(std::string(ops))); }

  int num_qubits() const noexcept { return n_; }
  const std::vector<PauliTerm>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }

  PauliSum& operator*=(double alpha);
  PauliSum& operator+=(const PauliSum& other);
  friend PauliSum operator*(double alpha, PauliSum h) { return h *= alpha; }
  friend PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }

 private:
  int n_;
  std::vector<PauliTerm> terms_;
};

/// <ψ|P|ψ>.
double pauli_expectation(const StateVector& state, const PauliString& term);

/// Σ_j c_j <ψ|P_j|ψ>.
double energy(const StateVector& state, const PauliSum& h);

/// H|ψ> without forming the matrix.
StateVector::Amplitudes apply_pauli_sum(const PauliSum& h, const StateVector::Amplitudes& psi);

Eigen::MatrixXcd dense_matrix(const PauliSum& h);

struct GroundState {
  double energy;
  StateVector state;
};

inline constexpr int kMaxExactQubits = 14;
inline constexpr int kMaxDenseQubits = 10;

/// Minimum eigenvalue and a normalized eigenvector. Dense self-adjoint
/// solver up to kMaxDenseQubits, matrix-free Lanczos beyond that.
GroundState exact_ground_energy(const PauliSum& h);
GroundState lanczos_ground_state(const PauliSum& h, int max_iterations = 400, double tolerance = 1e-10);

/// Text format: `coefficient paulistring` per line, '#' starts a comment.
PauliSum parse_pauli_sum(std::istream& in, const std::string& source = "<stream>");
PauliSum load_pauli_sum(const std::filesystem::path& path);
std::string format_pauli_sum(const PauliSum& h);

}  // namespace pqc

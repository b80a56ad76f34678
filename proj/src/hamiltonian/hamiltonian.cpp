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

#include "pqc/hamiltonian.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include "pqc/error.hpp"

namespace pqc {

PauliString::PauliString(std::string ops) : ops_(std::move(ops)) {
  if (ops_.empty() || ops_.size() > 62) throw Error("Pauli string length must be in [1, 62]");
  for (std::size_t q = 0; q < ops_.size(); ++q) {
    const std::uint64_t b = std::uint64_t{1} << q;
    switch (ops_[q]) {
      case 'I': break;
      case 'X': x_mask_ |= b; break;
      case 'Y':
        x_mask_ |= b;
        z_mask_ |= b;
        ++y_count_;
        break;
      case 'Z': z_mask_ |= b; break;
      default: throw Error("invalid Pauli character '" + std::string(1, ops_[q]) + "' in '" + ops_ + "'");
    }
  }
}

PauliString PauliString::single(int n, int qubit, char op) {
  if (qubit < 0 || qubit >= n) throw DimensionError("qubit index out of range");
  std::string s(static_cast<std::size_t>(n), 'I');
  s[static_cast<std::size_t>(qubit)] = op;
  return PauliString(std::move(s));
}

void PauliSum::add(double coefficient, const PauliString& string) {
  if (string.num_qubits() != n_) {
    throw DimensionError("Pauli string '" + string.ops() + "' has length " + std::to_string(string.num_qubits()) +
                         ", expected " + std::to_string(n_));
  }
  if (!std::isfinite(coefficient)) throw Error("non-finite coefficient for '" + string.ops() + "'");
  for (auto& t : terms_) {
    if (t.string == string) {
      t.coefficient += coefficient;
      return;
    }
  }
  terms_.push_back({coefficient, string});
}

PauliSum& PauliSum::operator*=(double alpha) {
  for (auto& t : terms_) t.coefficient *= alpha;
  return *this;
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  for (const auto& t : other.terms_) add(t.coefficient, t.string);
  return *this;
}

namespace {

// P|i> = phase(i) |i ^ x>, phase(i) = i^{#Y} (-1)^{popcount(i & z)}.
std::complex<double> y_phase(int y_count) {
  switch (y_count & 3) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

void check_dims(const StateVector& state, int n) {
  if (state.num_qubits() != n) {
    throw DimensionError("observable acts on " + std::to_string(n) + " qubits, state has " +
                         std::to_string(state.num_qubits()));
  }
}

}  // namespace

double pauli_expectation(const StateVector& state, const PauliString& term) {
  check_dims(state, term.num_qubits());
  const auto& psi = state.amplitudes();
  const std::uint64_t x = term.x_mask();
  const std::uint64_t z = term.z_mask();
  std::complex<double> acc = 0;
  for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(psi.size()); ++i) {
    const double sign = (std::popcount(i & z) & 1) ? -1.0 : 1.0;
    acc += sign * std::conj(psi[static_cast<Eigen::Index>(i ^ x)]) * psi[static_cast<Eigen::Index>(i)];
  }
  return (y_phase(term.y_count()) * acc).real();
}

double energy(const StateVector& state, const PauliSum& h) {
  check_dims(state, h.num_qubits());
  double e = 0;
  for (const auto& t : h.terms()) e += t.coefficient * pauli_expectation(state, t.string);
  return e;
}

StateVector::Amplitudes apply_pauli_sum(const PauliSum& h, const StateVector::Amplitudes& psi) {
  StateVector::Amplitudes out = StateVector::Amplitudes::Zero(psi.size());
  for (const auto& t : h.terms()) {
    const std::uint64_t x = t.string.x_mask();
    const std::uint64_t z = t.string.z_mask();
    const std::complex<double> c = t.coefficient * y_phase(t.string.y_count());
    for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(psi.size()); ++i) {
      const double sign = (std::popcount(i & z) & 1) ? -1.0 : 1.0;
      out[static_cast<Eigen::Index>(i ^ x)] += sign * c * psi[static_cast<Eigen::Index>(i)];
    }
  }
  return out;
}

Eigen::MatrixXcd dense_matrix(const PauliSum& h) {
  if (h.num_qubits() > kMaxExactQubits) throw DimensionError("dense matrix too large");
  const Eigen::Index dim = Eigen::Index{1} << h.num_qubits();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& t : h.terms()) {
    const std::uint64_t x = t.string.x_mask();
    const std::uint64_t z = t.string.z_mask();
    const std::complex<double> c = t.coefficient * y_phase(t.string.y_count());
    for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(dim); ++i) {
      const double sign = (std::popcount(i & z) & 1) ? -1.0 : 1.0;
      m(static_cast<Eigen::Index>(i ^ x), static_cast<Eigen::Index>(i)) += sign * c;
    }
  }
  return m;
}

GroundState lanczos_ground_state(const PauliSum& h, int max_iterations, double tolerance) {
  const int n = h.num_qubits();
  const Eigen::Index dim = Eigen::Index{1} << n;
  const int k_max = static_cast<int>(std::min<Eigen::Index>(max_iterations, dim));
  std::vector<StateVector::Amplitudes> basis;
  std::vector<double> alpha, beta;

  // Deterministic, generic start vector.
  Rng rng(derive_seed(0x4C616E63, {static_cast<std::uint64_t>(n)}));
  StateVector::Amplitudes v = haar_random_state(n, rng).amplitudes();

  double best = 0;
  Eigen::VectorXd ritz;
  for (int k = 0; k < k_max; ++k) {
    basis.push_back(v);
    StateVector::Amplitudes w = apply_pauli_sum(h, v);
    alpha.push_back(v.dot(w).real());
    // Full reorthogonalization (twice is enough).
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) w -= b * b.dot(w);
    }
    const double b_norm = w.norm();

    const Eigen::Index m = static_cast<Eigen::Index>(alpha.size());
    Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(alpha.data(), m);
    Eigen::VectorXd sub = m > 1 ? Eigen::VectorXd(Eigen::Map<Eigen::VectorXd>(beta.data(), m - 1))
                                : Eigen::VectorXd(0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
    tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    best = tri.eigenvalues()[0];
    ritz = tri.eigenvectors().col(0);
    const double residual = b_norm * std::abs(ritz[m - 1]);
    if (residual < tolerance || b_norm < 1e-14) break;
    beta.push_back(b_norm);
    v = w / b_norm;
  }
  StateVector::Amplitudes ground = StateVector::Amplitudes::Zero(dim);
  for (std::size_t j = 0; j < basis.size(); ++j) ground += ritz[static_cast<Eigen::Index>(j)] * basis[j];
  return {best, StateVector::normalized(n, std::move(ground))};
}

GroundState exact_ground_energy(const PauliSum& h) {
  const int n = h.num_qubits();
  if (n > kMaxExactQubits) {
    throw DimensionError("exact diagonalization limited to " + std::to_string(kMaxExactQubits) + " qubits, got " +
                         std::to_string(n));
  }
  if (n > kMaxDenseQubits) return lanczos_ground_state(h);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(dense_matrix(h));
  if (solver.info() != Eigen::Success) throw Error("eigensolver failed");
  return {solver.eigenvalues()[0], StateVector::normalized(n, solver.eigenvectors().col(0))};
}

PauliSum parse_pauli_sum(std::istream& in, const std::string& source) {
  std::optional<PauliSum> h;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    // U+2212 MINUS SIGN, as typeset in some sources.
    for (std::size_t pos; (pos = line.find("\xE2\x88\x92")) != std::string::npos;) line.replace(pos, 3, "-");
    std::istringstream fields(line);
    std::string coeff_text, ops, extra;
    if (!(fields >> coeff_text)) continue;
    if (!(fields >> ops)) throw ParseError(source, line_no, "expected 'coefficient paulistring'");
    if (fields >> extra) throw ParseError(source, line_no, "unexpected trailing field '" + extra + "'");

    double coeff = 0;
    const char* first = coeff_text.data();
    const char* last = first + coeff_text.size();
    if (*first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, coeff);
    if (ec != std::errc() || ptr != last || !std::isfinite(coeff)) {
      throw ParseError(source, line_no, "invalid coefficient '" + coeff_text + "'");
    }
    try {
      PauliString p(ops);
      if (!h) h.emplace(p.num_qubits());
      if (p.num_qubits() != h->num_qubits()) {
        throw ParseError(source, line_no,
                         "Pauli string length " + std::to_string(p.num_qubits()) + " differs from " +
                             std::to_string(h->num_qubits()));
      }
      h->add(coeff, p);
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(source, line_no, e.what());
    }
  }
  if (!h) throw ParseError(source, line_no, "Hamiltonian has no terms");
  return *h;
}

PauliSum load_pauli_sum(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open Hamiltonian file " + path.string());
  return parse_pauli_sum(in, path.string());
}

std::string format_pauli_sum(const PauliSum& h) {
  std::ostringstream out;
  out.precision(17);
  for (const auto& t : h.terms()) out << t.coefficient << ' ' << t.string.ops() << '\n';
  return out.str();
}

}  // namespace pqc

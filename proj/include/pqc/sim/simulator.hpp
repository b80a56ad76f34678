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
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <string>

#include "pqc/error.hpp"
#include "pqc/sim/circuit.hpp"
#include "pqc/sim/state_vector.hpp"

namespace pqc {

/// 2x2 unitary of a single-qubit gate (or the target block of a controlled
/// gate). Rotations are exp(-i θ σ / 2); R(θ, φ) = exp(-i θ/2 (cos φ X + sin φ Y)).
template <typename Scalar>
Eigen::Matrix<std::complex<Scalar>, 2, 2> single_qubit_matrix(GateKind kind, Scalar theta, Scalar phi = 0) {
  using C = std::complex<Scalar>;
  Eigen::Matrix<C, 2, 2> m;
  const Scalar c = std::cos(theta / 2);
  const Scalar s = std::sin(theta / 2);
  const C i(0, 1);
  switch (kind) {
    case GateKind::H: {
      const Scalar r = Scalar(1) / std::sqrt(Scalar(2));
      m << r, r, r, -r;
      break;
    }
    case GateKind::RX:
    case GateKind::CRX: m << c, -i * s, -i * s, c; break;
    case GateKind::RY: m << c, -s, s, c; break;
    case GateKind::RZ:
    case GateKind::CRZ: m << std::polar(Scalar(1), -theta / 2), 0, 0, std::polar(Scalar(1), theta / 2); break;
    case GateKind::CX: m << 0, 1, 1, 0; break;
    case GateKind::CZ: m << 1, 0, 0, -1; break;
    case GateKind::R:
      m << c, -i * std::polar(Scalar(1), -phi) * s, -i * std::polar(Scalar(1), phi) * s, c;
      break;
    default: throw Error("no 2x2 matrix for " + std::string(to_string(kind)));
  }
  return m;
}

namespace detail {

template <typename Scalar>
using Amps = typename BasicStateVector<Scalar>::Amplitudes;

inline std::uint64_t bit(int q) noexcept { return std::uint64_t{1} << q; }

/// Applies m to `target` on all amplitude pairs whose `control_mask` bits are set.
template <typename Scalar>
void apply_2x2(Amps<Scalar>& a, int target, std::uint64_t control_mask,
               const Eigen::Matrix<std::complex<Scalar>, 2, 2>& m) {
  const std::uint64_t t = bit(target);
  const std::uint64_t dim = static_cast<std::uint64_t>(a.size());
  for (std::uint64_t i = 0; i < dim; ++i) {
    if ((i & t) || (i & control_mask) != control_mask) continue;
    const auto i0 = static_cast<Eigen::Index>(i);
    const auto i1 = static_cast<Eigen::Index>(i | t);
    const auto x = a[i0];
    const auto y = a[i1];
    a[i0] = m(0, 0) * x + m(0, 1) * y;
    a[i1] = m(1, 0) * x + m(1, 1) * y;
  }
}

template <typename Scalar>
void apply_cz(Amps<Scalar>& a, int q0, int q1) {
  const std::uint64_t mask = bit(q0) | bit(q1);
  for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(a.size()); ++i) {
    if ((i & mask) == mask) a[static_cast<Eigen::Index>(i)] = -a[static_cast<Eigen::Index>(i)];
  }
}

/// Real rotation on the pair (|from>, |to>) for every index whose `mask` bits
/// equal `from_bits`; |to> differs by flipping all mask bits:
///   from' = c from - s to,  to' = s from + c to.
template <typename Scalar>
void apply_givens(Amps<Scalar>& a, std::uint64_t mask, std::uint64_t from_bits, Scalar c, Scalar s) {
  const std::uint64_t to_bits = from_bits ^ mask;
  for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(a.size()); ++i) {
    if ((i & mask) != from_bits) continue;
    const auto i_from = static_cast<Eigen::Index>(i);
    const auto i_to = static_cast<Eigen::Index>((i & ~mask) | to_bits);
    const auto x = a[i_from];
    const auto y = a[i_to];
    a[i_from] = c * x - s * y;
    a[i_to] = s * x + c * y;
  }
}

}  // namespace detail

/// Applies one gate in place with already-resolved angles.
///
/// SingleExc(θ) = exp(i θ/2 (X_i Y_k - Y_i X_k)) rotates |1_i 0_k> -> cos θ |1_i 0_k> - sin θ |0_i 1_k>.
/// DoubleExc(θ) = exp(i θ/8 (8-term generator)) rotates
/// |1_i 1_j 0_k 0_l> -> cos θ |1100> + sin θ |0011>. Both leave every other
/// basis state of their targets fixed.
template <typename Scalar>
void apply_gate_inplace(BasicStateVector<Scalar>& state, const GateSpec& g, Scalar theta, Scalar phi = 0) {
  auto& a = state.mutable_amplitudes();
  const auto& q = g.qubits;
  switch (g.kind) {
    case GateKind::H:
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ:
    case GateKind::R:
      detail::apply_2x2<Scalar>(a, q[0], 0, single_qubit_matrix<Scalar>(g.kind, theta, phi));
      break;
    case GateKind::CX:
    case GateKind::CRX:
    case GateKind::CRZ:
      detail::apply_2x2<Scalar>(a, q[1], detail::bit(q[0]), single_qubit_matrix<Scalar>(g.kind, theta));
      break;
    case GateKind::CZ: detail::apply_cz<Scalar>(a, q[0], q[1]); break;
    case GateKind::SingleExc: {
      const std::uint64_t mask = detail::bit(q[0]) | detail::bit(q[1]);
      // from = |1_k 0_i>, so from' = c from - s to matches the sign above.
      detail::apply_givens<Scalar>(a, mask, detail::bit(q[1]), std::cos(theta), std::sin(theta));
      break;
    }
    case GateKind::DoubleExc: {
      const std::uint64_t ij = detail::bit(q[0]) | detail::bit(q[1]);
      const std::uint64_t kl = detail::bit(q[2]) | detail::bit(q[3]);
      detail::apply_givens<Scalar>(a, ij | kl, ij, std::cos(theta), std::sin(theta));
      break;
    }
  }
}

/// Resolves the gate's slots against theta and applies it in place.
template <typename Scalar>
void apply_gate_inplace(BasicStateVector<Scalar>& state, const GateSpec& g, std::span<const Scalar> theta) {
  const Scalar t = g.params.empty() ? Scalar(0) : theta[static_cast<std::size_t>(g.params[0])];
  const Scalar p = g.params.size() > 1 ? theta[static_cast<std::size_t>(g.params[1])] : Scalar(0);
  apply_gate_inplace(state, g, t, p);
}

/// U(θ)|input>. The input is taken by value; callers keep their copy.
template <typename Scalar>
BasicStateVector<Scalar> apply_circuit(const Circuit& circuit, std::span<const Scalar> theta,
                                       BasicStateVector<Scalar> input) {
  if (input.num_qubits() != circuit.num_qubits()) {
    throw DimensionError("circuit acts on " + std::to_string(circuit.num_qubits()) + " qubits, state has " +
                         std::to_string(input.num_qubits()));
  }
  if (theta.size() != static_cast<std::size_t>(circuit.num_params())) {
    throw DimensionError("circuit has " + std::to_string(circuit.num_params()) + " parameters, got " +
                         std::to_string(theta.size()));
  }
  for (const auto& g : circuit.gates()) apply_gate_inplace(input, g, theta);
  return input;
}

template <typename Scalar>
BasicStateVector<Scalar> apply_circuit(const Circuit& circuit, const std::vector<Scalar>& theta,
                                       BasicStateVector<Scalar> input) {
  return apply_circuit(circuit, std::span<const Scalar>(theta), std::move(input));
}

}  // namespace pqc

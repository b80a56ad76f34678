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

// Test-only reference computations. Nothing here calls into the fast paths
// it is used to check.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <string>

#include "pqc/sim/circuit.hpp"
#include "pqc/sim/simulator.hpp"

namespace pqc::oracle {

using Mat = Eigen::MatrixXcd;

/// exp(A) by scaling and squaring with a degree-18 Taylor series.
inline Mat expm(const Mat& a) {
  const double norm = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = norm > 0.5 ? static_cast<int>(std::ceil(std::log2(norm / 0.5))) : 0;
  const Mat scaled = a / std::ldexp(1.0, squarings);
  Mat term = Mat::Identity(a.rows(), a.cols());
  Mat sum = term;
  for (int k = 1; k <= 18; ++k) {
    term = term * scaled / static_cast<double>(k);
    sum += term;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

inline Mat pauli(char c) {
  Mat m(2, 2);
  const std::complex<double> i(0, 1);
  switch (c) {
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, -i, i, 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: m << 1, 0, 0, 1; break;
  }
  return m;
}

/// Kronecker product with qubit 0 as the least significant index.
inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c) out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
  return out;
}

/// Matrix of the Pauli string where ops[j] acts on qubit j.
inline Mat pauli_matrix(const std::string& ops) {
  Mat m = Mat::Identity(1, 1);
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) m = kron(m, pauli(*it));
  return m;
}

/// Pauli string over n qubits with `ops[t]` placed on `qubits[t]`.
inline std::string place(int n, const std::vector<int>& qubits, const std::string& ops) {
  std::string s(static_cast<std::size_t>(n), 'I');
  for (std::size_t t = 0; t < qubits.size(); ++t) s[static_cast<std::size_t>(qubits[t])] = ops[t];
  return s;
}

/// Full unitary of one gate, obtained column by column from the simulator.
inline Mat simulated_unitary(int n, const GateSpec& g, double theta, double phi = 0) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  Mat u(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    auto s = StateVector::basis(n, static_cast<std::uint64_t>(c));
    apply_gate_inplace(s, g, theta, phi);
    u.col(c) = s.amplitudes();
  }
  return u;
}

inline double max_abs_diff(const Mat& a, const Mat& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace pqc::oracle

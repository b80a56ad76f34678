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
#include <random>
#include <string>

#include "pqc/error.hpp"
#include "pqc/random.hpp"

namespace pqc {

/// Dense pure state over n qubits. Amplitude index bit q is the value of
/// qubit q (qubit 0 is the least significant bit).
template <typename Scalar>
class BasicStateVector {
 public:
  using Complex = std::complex<Scalar>;
  using Amplitudes = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

  /// |0...0> on n qubits.
  explicit BasicStateVector(int n) : n_(checked_qubits(n)), amps_(Amplitudes::Zero(Eigen::Index{1} << n)) {
    amps_[0] = Complex(1);
  }

  /// Takes amplitudes as given; the caller is responsible for normalization.
  BasicStateVector(int n, Amplitudes amplitudes) : n_(checked_qubits(n)), amps_(std::move(amplitudes)) {
    if (amps_.size() != (Eigen::Index{1} << n_)) {
      throw DimensionError("state vector length " + std::to_string(amps_.size()) +
                           " does not match 2^" + std::to_string(n_));
    }
  }

  static BasicStateVector basis(int n, std::uint64_t index) {
    BasicStateVector s(n);
    if (index >= static_cast<std::uint64_t>(s.dim())) throw DimensionError("basis index out of range");
    s.amps_[0] = Complex(0);
    s.amps_[static_cast<Eigen::Index>(index)] = Complex(1);
    return s;
  }

  /// Normalizes the given amplitudes.
  static BasicStateVector normalized(int n, Amplitudes amplitudes) {
    BasicStateVector s(n, std::move(amplitudes));
    const Scalar norm = s.amps_.norm();
    if (!(norm > Scalar(0))) throw Error("cannot normalize a zero vector");
    s.amps_ /= norm;
    return s;
  }

  int num_qubits() const noexcept { return n_; }
  Eigen::Index dim() const noexcept { return amps_.size(); }
  const Amplitudes& amplitudes() const noexcept { return amps_; }
  Amplitudes& mutable_amplitudes() noexcept { return amps_; }
  const Complex& operator[](Eigen::Index i) const { return amps_[i]; }
  Scalar norm() const { return amps_.norm(); }

  friend bool operator==(const BasicStateVector& a, const BasicStateVector& b) {
    return a.n_ == b.n_ && a.amps_ == b.amps_;
  }

 private:
  static int checked_qubits(int n) {
    if (n < 1 || n > 30) throw DimensionError("qubit count must be in [1, 30], got " + std::to_string(n));
    return n;
  }

  int n_;
  Amplitudes amps_;
};

using StateVector = BasicStateVector<double>;

/// |<a|b>|^2. Symmetric bit-for-bit: the accumulation order depends only on
/// the index, and |z|^2 == |conj(z)|^2 exactly.
template <typename Scalar>
Scalar fidelity(const BasicStateVector<Scalar>& a, const BasicStateVector<Scalar>& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw DimensionError("fidelity: qubit counts differ (" + std::to_string(a.num_qubits()) + " vs " +
                         std::to_string(b.num_qubits()) + ")");
  }
  Scalar re = 0, im = 0;
  const auto& x = a.amplitudes();
  const auto& y = b.amplitudes();
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    // conj(x) * y; swapping arguments flips only the sign of im.
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return re * re + im * im;
}

/// Haar-random pure state: normalized vector of i.i.d. standard complex
/// Gaussians.
template <typename Scalar = double>
BasicStateVector<Scalar> haar_random_state(int n, Rng& rng) {
  using Amps = typename BasicStateVector<Scalar>::Amplitudes;
  std::normal_distribution<Scalar> gauss(0, 1);
  Amps amps(Eigen::Index{1} << n);
  for (Eigen::Index i = 0; i < amps.size(); ++i) {
    const Scalar re = gauss(rng);
    const Scalar im = gauss(rng);
    amps[i] = {re, im};
  }
  return BasicStateVector<Scalar>::normalized(n, std::move(amps));
}

template <typename Scalar = double>
BasicStateVector<Scalar> haar_random_state(int n, std::uint64_t seed) {
  Rng rng(seed);
  return haar_random_state<Scalar>(n, rng);
}

/// |+>^{⊗n}.
template <typename Scalar = double>
BasicStateVector<Scalar> plus_state(int n) {
  using Amps = typename BasicStateVector<Scalar>::Amplitudes;
  const Eigen::Index dim = Eigen::Index{1} << n;
  return BasicStateVector<Scalar>(n, Amps::Constant(dim, std::sqrt(Scalar(1) / Scalar(dim))));
}

}  // namespace pqc

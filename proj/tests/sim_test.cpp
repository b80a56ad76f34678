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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "pqc/hamiltonian.hpp"
#include "pqc/sim/circuit.hpp"
#include "pqc/sim/circuit_json.hpp"
#include "pqc/sim/simulator.hpp"
#include "pqc/sim/state_vector.hpp"

using namespace pqc;
using pqc::oracle::Mat;

namespace {

constexpr double kPi = std::numbers::pi;
const std::complex<double> kI(0, 1);

StateVector random_state(int n, std::uint64_t seed) { return haar_random_state(n, seed); }

/// Random circuit over the full gate pool with distinct and shared slots.
Circuit random_circuit(int n, int gates, Rng& rng) {
  Circuit c(n);
  std::uniform_int_distribution<int> pick_kind(0, static_cast<int>(kAllGateKinds.size()) - 1);
  while (c.gate_count() < gates) {
    const GateKind kind = kAllGateKinds[static_cast<std::size_t>(pick_kind(rng))];
    if (gate_arity(kind) > n) continue;
    std::vector<int> qubits(static_cast<std::size_t>(n));
    std::iota(qubits.begin(), qubits.end(), 0);
    std::shuffle(qubits.begin(), qubits.end(), rng);
    qubits.resize(static_cast<std::size_t>(gate_arity(kind)));
    std::vector<int> params;
    for (int p = 0; p < gate_param_count(kind); ++p) {
      const bool reuse = c.num_params() > 0 && std::bernoulli_distribution(0.3)(rng);
      params.push_back(reuse ? std::uniform_int_distribution<int>(0, c.num_params() - 1)(rng) : c.add_param());
    }
    c.append({kind, qubits, params});
  }
  return c;
}

std::vector<double> random_theta(int count, Rng& rng) {
  std::uniform_real_distribution<double> u(-2 * kPi, 2 * kPi);
  std::vector<double> t(static_cast<std::size_t>(count));
  for (double& x : t) x = u(rng);
  return t;
}

}  // namespace

TEST(StateVector, StartsInZeroAndChecksLength) {
  StateVector s(3);
  EXPECT_EQ(s.dim(), 8);
  EXPECT_EQ(s[0], std::complex<double>(1));
  EXPECT_THROW(StateVector(2, StateVector::Amplitudes::Zero(3)), DimensionError);
  EXPECT_THROW(StateVector(0), DimensionError);
}

TEST(ApplyCircuit, HadamardOnZero) {
  Circuit c(1);
  c.append({GateKind::H, {0}, {}});
  const auto out = apply_circuit(c, std::vector<double>{}, StateVector(1));
  EXPECT_NEAR(out[0].real(), 1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(out[1].real(), 1 / std::sqrt(2.0), 1e-15);
}

TEST(ApplyCircuit, RzLeavesZeroFixed) {
  Circuit c(1);
  c.append_fresh(GateKind::RZ, {0});
  for (double theta : {0.0, 0.3, 1.7, kPi, 5.9}) {
    const auto out = apply_circuit(c, std::vector<double>{theta}, StateVector(1));
    EXPECT_NEAR(fidelity(out, StateVector(1)), 1.0, 1e-15);
  }
}

TEST(ApplyCircuit, DoesNotMutateInputAndChecksDimensions) {
  Circuit c(2);
  c.append_fresh(GateKind::RX, {1});
  const StateVector in(2);
  const auto out = apply_circuit(c, std::vector<double>{1.0}, in);
  EXPECT_EQ(in, StateVector(2));
  EXPECT_NE(out, in);
  EXPECT_THROW(apply_circuit(c, std::vector<double>{1.0}, StateVector(3)), DimensionError);
  EXPECT_THROW(apply_circuit(c, std::vector<double>{1.0, 2.0}, StateVector(2)), DimensionError);
}

TEST(ApplyCircuit, SharedSlotSubstitutesEverywhere) {
  Circuit shared(2, 1);
  shared.append({GateKind::RY, {0}, {0}}).append({GateKind::RY, {1}, {0}});
  Circuit distinct(2);
  distinct.append_fresh(GateKind::RY, {0}).append_fresh(GateKind::RY, {1});
  const auto a = apply_circuit(shared, std::vector<double>{0.8}, StateVector(2));
  const auto b = apply_circuit(distinct, std::vector<double>{0.8, 0.8}, StateVector(2));
  EXPECT_EQ(a, b);
}

TEST(Gates, SingleQubitRotationsMatchMatrixExponential) {
  for (double theta : {-2.1, 0.4, 3.0}) {
    for (auto [kind, p] : {std::pair{GateKind::RX, 'X'}, {GateKind::RY, 'Y'}, {GateKind::RZ, 'Z'}}) {
      const Mat expected = oracle::expm(-kI * (theta / 2) * oracle::pauli(p));
      const Mat got = oracle::simulated_unitary(1, {kind, {0}, {0}}, theta);
      EXPECT_LT(oracle::max_abs_diff(got, expected), 1e-12) << to_string(kind);
    }
  }
}

TEST(Gates, IqmRGateMatchesMatrixExponential) {
  for (double theta : {0.7, -1.3}) {
    for (double phi : {0.0, 0.9, kPi / 2, -2.2}) {
      const Mat gen = std::cos(phi) * oracle::pauli('X') + std::sin(phi) * oracle::pauli('Y');
      const Mat expected = oracle::expm(-kI * (theta / 2) * gen);
      const Mat got = oracle::simulated_unitary(1, {GateKind::R, {0}, {0, 1}}, theta, phi);
      EXPECT_LT(oracle::max_abs_diff(got, expected), 1e-12);
    }
  }
  // R(θ, 0) = RX(θ), R(θ, π/2) = RY(θ).
  EXPECT_LT(oracle::max_abs_diff(oracle::simulated_unitary(1, {GateKind::R, {0}, {0, 1}}, 1.1, 0.0),
                                  oracle::simulated_unitary(1, {GateKind::RX, {0}, {0}}, 1.1)),
            1e-15);
}

TEST(Gates, ControlledGatesUseFirstQubitAsControl) {
  // Control on qubit 2, target qubit 0 at n = 3: |100> (index 4) -> target flipped.
  const int n = 3;
  for (GateKind kind : {GateKind::CX, GateKind::CRX, GateKind::CRZ, GateKind::CZ}) {
    const double theta = 0.9;
    const Mat u = oracle::simulated_unitary(n, {kind, {2, 0}, gate_param_count(kind) ? std::vector<int>{0}
                                                                                     : std::vector<int>{}},
                                             theta);
    // Block construction: |0><0|_c ⊗ I + |1><1|_c ⊗ V_t.
    const Mat v = single_qubit_matrix<double>(kind, theta);
    Mat p0 = Mat::Zero(2, 2), p1 = Mat::Zero(2, 2);
    p0(0, 0) = 1;
    p1(1, 1) = 1;
    const Mat id = Mat::Identity(2, 2);
    // qubit order (2, 1, 0) from most to least significant.
    const Mat expected = oracle::kron(oracle::kron(p0, id), id) + oracle::kron(oracle::kron(p1, id), v);
    EXPECT_LT(oracle::max_abs_diff(u, expected), 1e-14) << to_string(kind);
  }
}

TEST(Gates, SingleExcitationMatchesGeneratorExponential) {
  const int n = 4;
  const std::vector<int> targets = {3, 1};
  const Mat gen = oracle::pauli_matrix(oracle::place(n, targets, "XY")) -
                  oracle::pauli_matrix(oracle::place(n, targets, "YX"));
  for (double theta : {0.0, 0.35, -1.2, 2.9}) {
    const Mat expected = oracle::expm(kI * (theta / 2) * gen);
    const Mat got = oracle::simulated_unitary(n, {GateKind::SingleExc, targets, {0}}, theta);
    EXPECT_LT(oracle::max_abs_diff(got, expected), 1e-12) << theta;
  }
}

TEST(Gates, DoubleExcitationMatchesGeneratorExponential) {
  const int n = 5;
  const std::vector<int> targets = {4, 0, 2, 1};
  const std::vector<std::pair<double, std::string>> terms = {
      {1, "XYXX"},  {1, "YXXX"},  {1, "YYYX"},  {1, "YYXY"},
      {-1, "XXYX"}, {-1, "XXXY"}, {-1, "YXYY"}, {-1, "XYYY"}};
  Mat gen = Mat::Zero(32, 32);
  for (const auto& [c, ops] : terms) gen += c * oracle::pauli_matrix(oracle::place(n, targets, ops));
  for (double theta : {0.0, 0.7, -2.4}) {
    const Mat expected = oracle::expm(kI * (theta / 8) * gen);
    const Mat got = oracle::simulated_unitary(n, {GateKind::DoubleExc, targets, {0}}, theta);
    EXPECT_LT(oracle::max_abs_diff(got, expected), 1e-12) << theta;
  }
}

TEST(Gates, DoubleExcitationOnOccupiedPair) {
  // |1100> over (i, j, k, l) = (0, 1, 2, 3): qubits 0 and 1 set.
  Circuit c(4);
  c.append_fresh(GateKind::DoubleExc, {0, 1, 2, 3});
  const double theta = 0.7;
  const auto out = apply_circuit(c, std::vector<double>{theta}, StateVector::basis(4, 0b0011));
  EXPECT_NEAR(out[0b0011].real(), std::cos(theta), 1e-15);
  EXPECT_NEAR(out[0b1100].real(), std::sin(theta), 1e-15);
  EXPECT_NEAR(out.amplitudes().norm(), 1.0, 1e-15);
}

TEST(Gates, SingleExcitationAtZeroIsIdentity) {
  Circuit c(2);
  c.append_fresh(GateKind::SingleExc, {0, 1});
  const auto in = random_state(2, 7);
  EXPECT_EQ(apply_circuit(c, std::vector<double>{0.0}, in), in);
}

TEST(Gates, ExcitationSubspaces) {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const double theta = std::uniform_real_distribution<double>(-kPi, kPi)(rng);
    // SingleExc fixes |00> and |11> of its targets.
    for (std::uint64_t basis : {0b000ULL, 0b101ULL, 0b010ULL, 0b111ULL}) {
      Circuit c(3);
      c.append_fresh(GateKind::SingleExc, {0, 2});
      const auto out = apply_circuit(c, std::vector<double>{theta}, StateVector::basis(3, basis));
      EXPECT_EQ(out, StateVector::basis(3, basis));
    }
    // DoubleExc preserves the Hamming weight of its targets.
    for (std::uint64_t basis = 0; basis < 32; ++basis) {
      Circuit c(5);
      c.append_fresh(GateKind::DoubleExc, {1, 4, 0, 3});
      const auto out = apply_circuit(c, std::vector<double>{theta}, StateVector::basis(5, basis));
      const std::uint64_t mask = 0b11011;
      for (std::uint64_t i = 0; i < 32; ++i) {
        if (std::norm(out[static_cast<Eigen::Index>(i)]) > 1e-24) {
          EXPECT_EQ(std::popcount(i & mask), std::popcount(basis & mask));
          EXPECT_EQ(i & ~mask, basis & ~mask);
        }
      }
    }
  }
}

TEST(Fidelity, Examples) {
  const StateVector zero(1);
  const auto one = StateVector::basis(1, 1);
  Circuit h(1);
  h.append({GateKind::H, {0}, {}});
  const auto plus = apply_circuit(h, std::vector<double>{}, zero);
  EXPECT_EQ(fidelity(zero, zero), 1.0);
  EXPECT_EQ(fidelity(zero, one), 0.0);
  EXPECT_NEAR(fidelity(zero, plus), 0.5, 1e-15);
  EXPECT_THROW(fidelity(zero, StateVector(2)), DimensionError);
}

TEST(Fidelity, ExactlySymmetric) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto a = random_state(3, seed);
    const auto b = random_state(3, seed + 1000);
    EXPECT_EQ(fidelity(a, b), fidelity(b, a));
    const double f = fidelity(a, b);
    EXPECT_GE(f, 0.0);
    EXPECT_LE(f, 1.0);
  }
}

TEST(Properties, NormPreservedOnRandomCircuits) {
  Rng rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + trial % 5;
    const Circuit c = random_circuit(n, 12, rng);
    const auto out = apply_circuit(c, random_theta(c.num_params(), rng), random_state(n, trial));
    EXPECT_NEAR(out.norm(), 1.0, 1e-9);
  }
}

TEST(Properties, InverseRestoresInput) {
  Rng rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 4 + trial % 2;
    const Circuit c = random_circuit(n, 15, rng);
    const auto theta = random_theta(c.num_params(), rng);
    // Inverse: reversed gate order with negated angles (R: negate θ, keep φ).
    auto state = apply_circuit(c, theta, random_state(n, trial));
    for (auto it = c.gates().rbegin(); it != c.gates().rend(); ++it) {
      const double t = it->params.empty() ? 0.0 : theta[static_cast<std::size_t>(it->params[0])];
      const double p = it->params.size() > 1 ? theta[static_cast<std::size_t>(it->params[1])] : 0.0;
      apply_gate_inplace(state, *it, -t, p);
    }
    const auto expected = random_state(n, trial);
    EXPECT_LT((state.amplitudes() - expected.amplitudes()).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(HaarRandomState, DeterministicPerSeed) {
  EXPECT_EQ(haar_random_state(3, 42), haar_random_state(3, 42));
  EXPECT_NE(haar_random_state(3, 42), haar_random_state(3, 43));
  EXPECT_NEAR(haar_random_state(6, 1).norm(), 1.0, 1e-12);
}

TEST(HaarRandomState, SingleQubitFidelitiesAreUniform) {
  // N = 2: density (N-1)(1-F)^{N-2} = 1 on [0, 1].
  Rng rng(5);
  constexpr int kPairs = 5000;
  std::array<int, 10> counts{};
  double sum = 0, sum_sq = 0;
  for (int i = 0; i < kPairs; ++i) {
    const double f = fidelity(haar_random_state(1, rng), haar_random_state(1, rng));
    ++counts[static_cast<std::size_t>(std::min(9, static_cast<int>(f * 10)))];
    sum += f;
    sum_sq += f * f;
  }
  EXPECT_NEAR(sum / kPairs, 0.5, 0.015);
  EXPECT_NEAR(sum_sq / kPairs - std::pow(sum / kPairs, 2), 1.0 / 12, 0.005);
  // Chi-square with 9 dof; 99.9th percentile is 27.9.
  double chi2 = 0;
  for (int c : counts) chi2 += std::pow(c - kPairs / 10.0, 2) / (kPairs / 10.0);
  EXPECT_LT(chi2, 27.9);
}

TEST(HaarRandomState, MeanSingleQubitPurityAtTwoQubits) {
  // E[Tr ρ_A^2] = (d_A + d_B) / (d_A d_B + 1) = 4/5 for two qubits.
  Rng rng(6);
  double total = 0;
  constexpr int kSamples = 5000;
  for (int i = 0; i < kSamples; ++i) {
    const auto s = haar_random_state(2, rng);
    // ρ_0 from the 2x2 reshaped amplitudes (row = qubit 1, column = qubit 0).
    Eigen::Matrix2cd m;
    m << s[0], s[1], s[2], s[3];
    const Eigen::Matrix2cd rho = m.transpose() * m.conjugate();
    total += (rho * rho).trace().real();
  }
  EXPECT_NEAR(total / kSamples, 0.8, 0.02);
}

TEST(Circuit, ValidatesGateSpecs) {
  Circuit c(3, 1);
  EXPECT_THROW(c.append({GateKind::CX, {0, 0}, {}}), Error);
  EXPECT_THROW(c.append({GateKind::CX, {0, 3}, {}}), DimensionError);
  EXPECT_THROW(c.append({GateKind::RX, {0}, {1}}), Error);
  EXPECT_THROW(c.append({GateKind::RX, {0}, {}}), Error);
  EXPECT_THROW(c.append({GateKind::R, {0}, {0}}), Error);
  EXPECT_THROW(c.append({GateKind::DoubleExc, {0, 1, 2}, {0}}), Error);
  EXPECT_NO_THROW(c.append({GateKind::R, {0}, {0, 0}}));
  EXPECT_THROW(parse_gate_kind("TOFFOLI"), Error);
}

TEST(Circuit, DepthAndCounts) {
  Circuit c(4);
  for (int q = 0; q < 4; ++q) c.append_fresh(GateKind::RX, {q});
  for (int q = 0; q < 4; ++q) c.append_fresh(GateKind::RZ, {q});
  EXPECT_EQ(c.complexity(), (ComplexityCounts{8, 8, 2}));
  c.append({GateKind::CX, {3, 2}, {}}).append({GateKind::CX, {2, 1}, {}}).append({GateKind::CX, {1, 0}, {}});
  EXPECT_EQ(c.complexity(), (ComplexityCounts{8, 11, 5}));
}

TEST(Circuit, Connectivity) {
  Circuit split(4);
  split.append({GateKind::CX, {0, 1}, {}}).append({GateKind::CX, {2, 3}, {}});
  EXPECT_FALSE(is_connected(split));
  Circuit path(4);
  path.append({GateKind::CX, {0, 1}, {}}).append({GateKind::CZ, {1, 2}, {}}).append_fresh(GateKind::CRX, {2, 3});
  EXPECT_TRUE(is_connected(path));
  Circuit single(1);
  single.append_fresh(GateKind::RY, {0});
  EXPECT_TRUE(is_connected(single));
  Circuit lonely(4);
  lonely.append_fresh(GateKind::RX, {0});
  EXPECT_FALSE(is_connected(lonely));
}

TEST(CircuitJson, RoundTripsBitExactly) {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const Circuit c = random_circuit(5, 20, rng);
    const std::string text = dump_circuit(c);
    const Circuit back = circuit_from_json(nlohmann::json::parse(text));
    EXPECT_EQ(back, c);
    EXPECT_EQ(dump_circuit(back), text);
  }
  EXPECT_THROW(circuit_from_json(nlohmann::json::parse(R"({"n": 2, "gates": []})")), Error);
  EXPECT_THROW(
      circuit_from_json(nlohmann::json::parse(R"({"n": 2, "n_params": 0, "gates": [{"kind": "FOO", "qubits": [0]}]})")),
      Error);
}

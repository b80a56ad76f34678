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

#include "pqc/sim/circuit.hpp"

#include <algorithm>
#include <numeric>

#include "pqc/error.hpp"

namespace pqc {

std::string_view to_string(GateKind kind) noexcept {
  switch (kind) {
    case GateKind::H: return "H";
    case GateKind::RX: return "RX";
    case GateKind::RY: return "RY";
    case GateKind::RZ: return "RZ";
    case GateKind::CX: return "CX";
    case GateKind::CZ: return "CZ";
    case GateKind::CRX: return "CRX";
    case GateKind::CRZ: return "CRZ";
    case GateKind::R: return "R";
    case GateKind::SingleExc: return "SingleExc";
    case GateKind::DoubleExc: return "DoubleExc";
  }
  return "?";
}

GateKind parse_gate_kind(std::string_view name) {
  for (GateKind k : kAllGateKinds) {
    if (to_string(k) == name) return k;
  }
  if (name == "SE") return GateKind::SingleExc;
  if (name == "DE") return GateKind::DoubleExc;
  if (name == "CNOT") return GateKind::CX;
  throw Error("unknown gate kind '" + std::string(name) + "'");
}

int gate_arity(GateKind kind) noexcept {
  switch (kind) {
    case GateKind::H:
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ:
    case GateKind::R: return 1;
    case GateKind::DoubleExc: return 4;
    default: return 2;
  }
}

int gate_param_count(GateKind kind) noexcept {
  switch (kind) {
    case GateKind::H:
    case GateKind::CX:
    case GateKind::CZ: return 0;
    case GateKind::R: return 2;
    default: return 1;
  }
}

void validate_gate(const GateSpec& gate, int n, int n_params) {
  const std::string name(to_string(gate.kind));
  if (static_cast<int>(gate.qubits.size()) != gate_arity(gate.kind)) {
    throw Error(name + " takes " + std::to_string(gate_arity(gate.kind)) + " qubit(s), got " +
                std::to_string(gate.qubits.size()));
  }
  if (static_cast<int>(gate.params.size()) != gate_param_count(gate.kind)) {
    throw Error(name + " takes " + std::to_string(gate_param_count(gate.kind)) + " parameter slot(s), got " +
                std::to_string(gate.params.size()));
  }
  for (std::size_t i = 0; i < gate.qubits.size(); ++i) {
    const int q = gate.qubits[i];
    if (q < 0 || q >= n) {
      throw DimensionError(name + ": qubit " + std::to_string(q) + " outside [0, " + std::to_string(n) + ")");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (gate.qubits[j] == q) throw Error(name + ": repeated qubit " + std::to_string(q));
    }
  }
  for (int p : gate.params) {
    if (p < 0 || p >= n_params) {
      throw Error(name + ": parameter slot " + std::to_string(p) + " outside [0, " + std::to_string(n_params) + ")");
    }
  }
}

Circuit::Circuit(int n, int n_params) : n_(n), n_params_(n_params) {
  if (n < 1) throw DimensionError("circuit needs at least one qubit");
  if (n_params < 0) throw Error("negative parameter count");
}

Circuit& Circuit::append(GateSpec gate) {
  validate_gate(gate, n_, n_params_);
  gates_.push_back(std::move(gate));
  return *this;
}

Circuit& Circuit::append_fresh(GateKind kind, std::vector<int> qubits) {
  std::vector<int> params(static_cast<std::size_t>(gate_param_count(kind)));
  for (int& p : params) p = add_param();
  return append({kind, std::move(qubits), std::move(params)});
}

int push_depth(std::vector<int>& frontier, const GateSpec& gate) {
  int layer = 0;
  for (int q : gate.qubits) layer = std::max(layer, frontier[static_cast<std::size_t>(q)]);
  ++layer;
  for (int q : gate.qubits) frontier[static_cast<std::size_t>(q)] = layer;
  return layer;
}

int Circuit::depth() const {
  std::vector<int> frontier(static_cast<std::size_t>(n_), 0);
  int depth = 0;
  for (const auto& g : gates_) depth = std::max(depth, push_depth(frontier, g));
  return depth;
}

ComplexityCounts Circuit::complexity() const { return {n_params_, gate_count(), depth()}; }

bool is_connected(const Circuit& circuit) {
  const int n = circuit.num_qubits();
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  int components = n;
  for (const auto& g : circuit.gates()) {
    for (std::size_t i = 1; i < g.qubits.size(); ++i) {
      const int a = find(g.qubits[0]);
      const int b = find(g.qubits[i]);
      if (a != b) {
        parent[static_cast<std::size_t>(a)] = b;
        --components;
      }
    }
  }
  return components == 1;
}

}  // namespace pqc

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

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pqc {

enum class GateKind { H, RX, RY, RZ, CX, CZ, CRX, CRZ, R, SingleExc, DoubleExc };

inline constexpr std::array<GateKind, 11> kAllGateKinds = {
    GateKind::H,  GateKind::RX,  GateKind::RY,  GateKind::RZ, GateKind::CX,       GateKind::CZ,
    GateKind::CRX, GateKind::CRZ, GateKind::R, GateKind::SingleExc, GateKind::DoubleExc};

std::string_view to_string(GateKind kind) noexcept;
/// Accepts the canonical names plus "SE"/"DE" for the excitation gates.
GateKind parse_gate_kind(std::string_view name);

/// Number of qubits the gate acts on.
int gate_arity(GateKind kind) noexcept;
/// Number of parameter slots the gate consumes.
int gate_param_count(GateKind kind) noexcept;

/// One gate application. For controlled gates qubits[0] is the control.
struct GateSpec {
  GateKind kind{GateKind::H};
  std::vector<int> qubits;
  std::vector<int> params;

  friend bool operator==(const GateSpec&, const GateSpec&) = default;
};

/// (|θ|, G, D).
struct ComplexityCounts {
  int n_params = 0;
  int gates = 0;
  int depth = 0;

  int total() const noexcept { return n_params + gates + depth; }
  friend bool operator==(const ComplexityCounts&, const ComplexityCounts&) = default;
};

/// Ordered gate list over n qubits with n_params trainable slots. Slots may
/// be shared between gates.
class Circuit {
 public:
  explicit Circuit(int n, int n_params = 0);

  int num_qubits() const noexcept { return n_; }
  int num_params() const noexcept { return n_params_; }
  const std::vector<GateSpec>& gates() const noexcept { return gates_; }

  /// Allocates a fresh parameter slot and returns its index.
  int add_param() noexcept { return n_params_++; }

  /// Validates arity, qubit range, distinctness and slot range, then appends.
  Circuit& append(GateSpec gate);

  /// Convenience: appends the gate with freshly allocated slots.
  Circuit& append_fresh(GateKind kind, std::vector<int> qubits);

  int gate_count() const noexcept { return static_cast<int>(gates_.size()); }
  int depth() const;
  ComplexityCounts complexity() const;

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  int n_;
  int n_params_;
  std::vector<GateSpec> gates_;
};

/// Throws pqc::Error describing the first violated GateSpec invariant.
void validate_gate(const GateSpec& gate, int n, int n_params);

/// Depth after appending `gate` given per-qubit frontier depths; updates the
/// frontier. Layering is greedy (as-soon-as-possible).
int push_depth(std::vector<int>& frontier, const GateSpec& gate);

/// True iff the qubit-interaction graph (multi-qubit gates as edges) has a
/// single component spanning all n qubits.
bool is_connected(const Circuit& circuit);

}  // namespace pqc

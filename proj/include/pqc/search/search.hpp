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
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "pqc/metrics.hpp"
#include "pqc/search/proposer.hpp"
#include "pqc/sim/circuit.hpp"

namespace pqc {

enum class Objective { Expr, Train, Ent };

std::string_view to_string(Objective objective) noexcept;
/// Accepts "expr", "train", "ent" in any case.
Objective parse_objective(std::string_view name);

/// Cost assigned to circuits that fail the validity check.
inline constexpr double kInvalidCost = 3.0;

struct SearchConfig {
  int n = 4;
  std::vector<GateKind> gate_pool = {GateKind::H,  GateKind::RX, GateKind::RY,  GateKind::RZ,
                                     GateKind::CX, GateKind::CZ, GateKind::CRX, GateKind::CRZ};
  /// Allowed qubit pairs for two-qubit gates (both orientations). All ordered
  /// pairs when empty.
  std::optional<std::vector<std::pair<int, int>>> topology;
  ComplexityCaps caps;
  int theta_min = 0;
  int n_trials = 100;
  std::vector<Objective> objectives = {Objective::Expr};
  MetricConfig metrics;
  NoiseModel noise;
  std::optional<PauliSum> observable;
  int duplicate_prune_limit = 10;
  std::string proposer = "tpe";
  std::uint64_t seed = 0;
};

void validate(const SearchConfig& cfg);

/// One construction step. kind 0 is STOP, otherwise gate_pool[kind - 1].
/// slots[j] = 0 allocates a fresh parameter; s > 0 reuses slot s - 1 when it
/// exists and allocates a fresh one otherwise.
struct Decision {
  int kind = 0;
  int placement = 0;
  std::array<int, 2> slots{};
  friend bool operator==(const Decision&, const Decision&) = default;
};

using DecisionSequence = std::vector<Decision>;

struct BuildResult {
  Circuit circuit{1};
  std::optional<std::string> invalid_reason;
  bool valid() const noexcept { return !invalid_reason; }
};

/// Placement lists per pool entry and the flat categorical encoding used by
/// the proposers: for each of caps.gates_max positions, one kind dimension,
/// one placement dimension per pool entry, and two slot dimensions.
class SearchSpace {
 public:
  explicit SearchSpace(SearchConfig cfg);

  const SearchConfig& config() const noexcept { return cfg_; }
  int positions() const noexcept { return cfg_.caps.gates_max; }
  int kind_choices() const noexcept { return static_cast<int>(cfg_.gate_pool.size()) + 1; }
  int slot_choices() const noexcept { return cfg_.caps.theta_max + 1; }
  /// Qubit tuples available to pool entry `kind` (1-based).
  const std::vector<std::vector<int>>& placements(int kind) const;

  CategoricalSpace categorical() const;
  /// Decisions up to (excluding) the first STOP.
  DecisionSequence decode(const std::vector<int>& point) const;

  /// Appends gates until STOP, the end of the sequence, or the first step that
  /// would exceed a cap; then checks connectivity and the parameter minimum.
  /// Throws pqc::Error on out-of-range decision indices.
  BuildResult build(const DecisionSequence& decisions) const;

 private:
  int stride() const noexcept { return kind_choices() + 2; }

  SearchConfig cfg_;
  std::vector<std::vector<std::vector<int>>> placements_;
};

BuildResult build_circuit(const DecisionSequence& decisions, const SearchConfig& cfg);

/// S = Σ chosen losses; S + 1 when S > 0, else the complexity loss.
double hierarchical_cost(const MetricReport& report, const std::vector<Objective>& objectives);

enum class TrialStatus { Evaluated, Invalid, Pruned };
std::string_view to_string(TrialStatus status) noexcept;

struct TrialRecord {
  int index = 0;
  DecisionSequence decisions;
  std::optional<Circuit> circuit;  ///< absent only when construction failed
  TrialStatus status = TrialStatus::Invalid;
  std::optional<MetricReport> report;
  std::optional<double> cost;  ///< present iff status == Evaluated
  /// Value handed to the proposer: cost, kInvalidCost, or for pruned trials
  /// the mean cost of earlier evaluations of the same circuit.
  double feedback = kInvalidCost;
  double wall_seconds = 0;
};

struct SearchResult {
  std::vector<TrialRecord> history;
  std::optional<std::size_t> best;  ///< index into history; earliest wins ties
  std::optional<MetricReport> test_report;
  std::optional<double> test_cost;
  bool feasible() const noexcept { return best.has_value(); }
};

using TrialCallback = std::function<void(const TrialRecord&)>;

SearchResult run_search(const SearchConfig& cfg, Proposer& proposer, const TrialCallback& on_trial = {});
/// Uses make_proposer(cfg.proposer).
SearchResult run_search(const SearchConfig& cfg, const TrialCallback& on_trial = {});

nlohmann::json trial_to_json(const TrialRecord& trial);

}  // namespace pqc

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

#include "pqc/search/search.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <map>
#include <set>

#include "pqc/error.hpp"
#include "pqc/random.hpp"
#include "pqc/sim/circuit_json.hpp"
#include "pqc/vqe.hpp"

namespace pqc {

std::string_view to_string(Objective objective) noexcept {
  switch (objective) {
    case Objective::Expr:
      return "expr";
    case Objective::Train:
      return "train";
    case Objective::Ent:
      return "ent";
  }
  return "?";
}

Objective parse_objective(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "expr") return Objective::Expr;
  if (lower == "train") return Objective::Train;
  if (lower == "ent") return Objective::Ent;
  throw Error("unknown objective '" + std::string(name) + "'");
}

std::string_view to_string(TrialStatus status) noexcept {
  switch (status) {
    case TrialStatus::Evaluated:
      return "evaluated";
    case TrialStatus::Invalid:
      return "invalid";
    case TrialStatus::Pruned:
      return "pruned";
  }
  return "?";
}

void validate(const SearchConfig& cfg) {
  if (cfg.n < 1) throw Error("search needs n >= 1");
  if (cfg.gate_pool.empty()) throw Error("gate pool is empty");
  std::set<GateKind> seen;
  for (GateKind k : cfg.gate_pool) {
    if (!seen.insert(k).second) throw Error("gate pool lists " + std::string(to_string(k)) + " twice");
    if (gate_arity(k) > cfg.n) throw Error(std::string(to_string(k)) + " does not fit on " + std::to_string(cfg.n) + " qubits");
    if ((k == GateKind::SingleExc || k == GateKind::DoubleExc) && cfg.n % 2 != 0)
      throw Error("excitation gates need an even number of spin orbitals");
  }
  if (cfg.caps.theta_max < 1 || cfg.caps.gates_max < 1 || cfg.caps.depth_max < 1)
    throw Error("caps must be positive");
  if (cfg.theta_min < 0 || cfg.theta_min > cfg.caps.theta_max) throw Error("theta_min must lie in [0, theta_max]");
  if (cfg.n_trials < 0) throw Error("n_trials must be >= 0");
  if (cfg.objectives.empty()) throw Error("objective set is empty");
  if (cfg.duplicate_prune_limit < 1) throw Error("duplicate_prune_limit must be >= 1");
  if (cfg.topology) {
    for (auto [a, b] : *cfg.topology)
      if (a < 0 || b < 0 || a >= cfg.n || b >= cfg.n || a == b) throw Error("topology pair out of range");
  }
  if (cfg.observable && cfg.observable->num_qubits() != cfg.n) throw Error("observable width does not match n");
  validate(cfg.metrics);
}

SearchSpace::SearchSpace(SearchConfig cfg) : cfg_(std::move(cfg)) {
  validate(cfg_);
  const int n = cfg_.n;
  std::vector<std::vector<int>> pairs;
  if (cfg_.topology) {
    std::set<std::vector<int>> unique;
    for (auto [a, b] : *cfg_.topology) {
      unique.insert({a, b});
      unique.insert({b, a});
    }
    pairs.assign(unique.begin(), unique.end());
  } else {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (a != b) pairs.push_back({a, b});
  }
  std::vector<GateSpec> excitations;
  for (GateKind k : cfg_.gate_pool)
    if (k == GateKind::SingleExc || k == GateKind::DoubleExc) excitations = spin_conserving_pool(n / 2);

  for (GateKind k : cfg_.gate_pool) {
    std::vector<std::vector<int>> list;
    if (k == GateKind::SingleExc || k == GateKind::DoubleExc) {
      for (const auto& t : excitations)
        if (t.kind == k) list.push_back(t.qubits);
    } else if (gate_arity(k) == 1) {
      for (int q = 0; q < n; ++q) list.push_back({q});
    } else {
      list = pairs;
    }
    if (list.empty()) throw Error("no placements for " + std::string(to_string(k)));
    placements_.push_back(std::move(list));
  }
}

const std::vector<std::vector<int>>& SearchSpace::placements(int kind) const {
  if (kind < 1 || kind >= kind_choices()) throw Error("kind index out of range");
  return placements_[static_cast<std::size_t>(kind - 1)];
}

CategoricalSpace SearchSpace::categorical() const {
  CategoricalSpace space;
  const int k = kind_choices();
  for (int p = 0; p < positions(); ++p) {
    space.sizes.push_back(k);
    for (const auto& list : placements_) space.sizes.push_back(static_cast<int>(list.size()));
    space.sizes.push_back(slot_choices());
    space.sizes.push_back(slot_choices());
  }
  const int stride = this->stride();
  const std::vector<GateKind> pool = cfg_.gate_pool;
  space.active = [stride, k, pool](const std::vector<int>& point) {
    std::vector<bool> mask(point.size(), false);
    for (std::size_t base = 0; base < point.size(); base += static_cast<std::size_t>(stride)) {
      mask[base] = true;
      const int kind = point[base];
      if (kind == 0) break;
      mask[base + static_cast<std::size_t>(kind)] = true;
      const int params = gate_param_count(pool[static_cast<std::size_t>(kind - 1)]);
      for (int j = 0; j < params; ++j) mask[base + static_cast<std::size_t>(k + j)] = true;
    }
    return mask;
  };
  return space;
}

DecisionSequence SearchSpace::decode(const std::vector<int>& point) const {
  const auto stride = static_cast<std::size_t>(this->stride());
  if (point.size() != stride * static_cast<std::size_t>(positions())) throw Error("point has the wrong dimension");
  DecisionSequence out;
  for (std::size_t base = 0; base < point.size(); base += stride) {
    const int kind = point[base];
    if (kind == 0) break;
    const auto k = static_cast<std::size_t>(kind_choices());
    out.push_back({kind, point[base + static_cast<std::size_t>(kind)], {point[base + k], point[base + k + 1]}});
  }
  return out;
}

BuildResult SearchSpace::build(const DecisionSequence& decisions) const {
  const auto& caps = cfg_.caps;
  Circuit circuit(cfg_.n);
  std::vector<int> frontier(static_cast<std::size_t>(cfg_.n), 0);
  for (const Decision& d : decisions) {
    if (d.kind == 0) break;
    const auto& list = placements(d.kind);
    if (d.placement < 0 || d.placement >= static_cast<int>(list.size())) throw Error("placement index out of range");
    for (int s : d.slots)
      if (s < 0 || s >= slot_choices()) throw Error("slot choice out of range");

    const GateKind kind = cfg_.gate_pool[static_cast<std::size_t>(d.kind - 1)];
    GateSpec gate{kind, list[static_cast<std::size_t>(d.placement)], {}};
    int n_params = circuit.num_params();
    for (int j = 0; j < gate_param_count(kind); ++j) {
      const int s = d.slots[static_cast<std::size_t>(j)];
      gate.params.push_back(s > 0 && s - 1 < n_params ? s - 1 : n_params++);
    }
    auto next_frontier = frontier;
    const int depth = std::max(push_depth(next_frontier, gate), circuit.depth());
    if (n_params > caps.theta_max || circuit.gate_count() + 1 > caps.gates_max || depth > caps.depth_max) break;
    while (circuit.num_params() < n_params) circuit.add_param();
    circuit.append(std::move(gate));
    frontier = std::move(next_frontier);
  }

  BuildResult result{circuit, std::nullopt};
  const int min_params = std::max(1, cfg_.theta_min);
  if (circuit.num_params() < min_params) {
    result.invalid_reason = "fewer than " + std::to_string(min_params) + " trainable parameters";
  } else if (!is_connected(circuit)) {
    result.invalid_reason = "qubit interaction graph is disconnected";
  }
  return result;
}

BuildResult build_circuit(const DecisionSequence& decisions, const SearchConfig& cfg) {
  return SearchSpace(cfg).build(decisions);
}

double hierarchical_cost(const MetricReport& report, const std::vector<Objective>& objectives) {
  if (objectives.empty()) throw Error("objective set is empty");
  double s = 0;
  for (Objective o : objectives) {
    const auto& loss = o == Objective::Expr ? report.loss_expr : o == Objective::Train ? report.loss_train : report.loss_ent;
    if (!loss) throw Error("report lacks the " + std::string(to_string(o)) + " loss");
    s += *loss;
  }
  return s > 0 ? s + 1 : report.loss_cmplx;
}

namespace {

MetricInputs metric_inputs(const SearchConfig& cfg) {
  MetricInputs in;
  in.config = cfg.metrics;
  in.noise = cfg.noise;
  in.observable = cfg.observable;
  in.caps = cfg.caps;
  in.selection = {false, false, false};
  for (Objective o : cfg.objectives) {
    if (o == Objective::Expr) in.selection.expr = true;
    if (o == Objective::Train) in.selection.train = true;
    if (o == Objective::Ent) in.selection.ent = true;
  }
  return in;
}

}  // namespace

SearchResult run_search(const SearchConfig& cfg, Proposer& proposer, const TrialCallback& on_trial) {
  const SearchSpace space(cfg);
  const CategoricalSpace categorical = space.categorical();
  const MetricInputs inputs = metric_inputs(cfg);
  Rng rng = make_rng(cfg.seed, {stream::kProposer});

  struct Seen {
    int proposals = 0;
    double cost_sum = 0;
    int evaluations = 0;
  };
  std::map<std::string, Seen> seen;
  std::vector<Observation> observations;
  SearchResult result;

  for (int t = 0; t < cfg.n_trials; ++t) {
    const auto start = std::chrono::steady_clock::now();
    const std::vector<int> point = proposer.propose(categorical, observations, rng);
    TrialRecord rec;
    rec.index = t;
    rec.decisions = space.decode(point);
    BuildResult built = space.build(rec.decisions);
    rec.circuit = built.circuit;
    if (!built.valid()) {
      rec.status = TrialStatus::Invalid;
      rec.feedback = kInvalidCost;
    } else {
      Seen& s = seen[circuit_to_json(built.circuit).dump()];
      if (++s.proposals > cfg.duplicate_prune_limit) {
        rec.status = TrialStatus::Pruned;
        rec.feedback = s.cost_sum / s.evaluations;
      } else {
        rec.report = evaluate_metrics(built.circuit, inputs, derive_seed(cfg.seed, {stream::kTrial, static_cast<std::uint64_t>(t)}));
        rec.cost = hierarchical_cost(*rec.report, cfg.objectives);
        rec.status = TrialStatus::Evaluated;
        rec.feedback = *rec.cost;
        s.cost_sum += *rec.cost;
        ++s.evaluations;
        if (!result.best || *rec.cost < *result.history[*result.best].cost) result.best = result.history.size();
      }
    }
    rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    observations.push_back({point, rec.feedback});
    result.history.push_back(std::move(rec));
    if (on_trial) on_trial(result.history.back());
  }

  if (result.best) {
    const Circuit& best = *result.history[*result.best].circuit;
    result.test_report = evaluate_metrics(best, inputs, derive_seed(cfg.seed, {stream::kTestSet}));
    result.test_cost = hierarchical_cost(*result.test_report, cfg.objectives);
  }
  return result;
}

SearchResult run_search(const SearchConfig& cfg, const TrialCallback& on_trial) {
  auto proposer = make_proposer(cfg.proposer);
  return run_search(cfg, *proposer, on_trial);
}

nlohmann::json trial_to_json(const TrialRecord& trial) {
  nlohmann::json j;
  j["trial"] = trial.index;
  j["status"] = std::string(to_string(trial.status));
  auto decisions = nlohmann::json::array();
  for (const auto& d : trial.decisions) decisions.push_back({{"kind", d.kind}, {"placement", d.placement}, {"slots", d.slots}});
  j["decisions"] = decisions;
  j["circuit"] = trial.circuit ? circuit_to_json(*trial.circuit) : nlohmann::json();
  j["report"] = trial.report ? report_to_json(*trial.report) : nlohmann::json();
  j["cost"] = trial.cost ? nlohmann::json(*trial.cost) : nlohmann::json();
  j["feedback"] = trial.feedback;
  j["wall_seconds"] = trial.wall_seconds;
  return j;
}

}  // namespace pqc

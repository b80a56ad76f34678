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

#include <algorithm>
#include <map>

#include "pqc/error.hpp"
#include "pqc/search/search.hpp"
#include "pqc/sim/circuit_json.hpp"

using namespace pqc;

namespace {

SearchConfig tiny_config() {
  SearchConfig cfg;
  cfg.n = 2;
  cfg.gate_pool = {GateKind::H, GateKind::RX, GateKind::CX};
  cfg.caps = {3, 3, 3};
  cfg.metrics.n_fidelity_pairs = 500;
  cfg.proposer = "random";
  return cfg;
}

// Pool indices for tiny_config().
constexpr int kH = 1, kRX = 2, kCX = 3;

MetricReport report_with(std::optional<double> expr, std::optional<double> train, std::optional<double> ent,
                         double cmplx) {
  MetricReport r;
  r.loss_expr = expr;
  r.loss_train = train;
  r.loss_ent = ent;
  r.loss_cmplx = cmplx;
  return r;
}

std::string history_fingerprint(const SearchResult& r) {
  std::string out;
  for (const auto& t : r.history) {
    auto j = trial_to_json(t);
    j.erase("wall_seconds");
    out += j.dump() + "\n";
  }
  return out;
}

}  // namespace

TEST(BuildCircuit, ValidityExamples) {
  auto cfg = tiny_config();
  EXPECT_FALSE(build_circuit({}, cfg).valid());
  const auto cx = build_circuit({{kCX, 0, {}}}, cfg);
  EXPECT_FALSE(cx.valid());
  EXPECT_EQ(cx.circuit.gate_count(), 1);

  cfg.n = 4;
  EXPECT_FALSE(build_circuit({{kRX, 0, {}}}, cfg).valid());

  cfg.n = 2;
  const auto ok = build_circuit({{kRX, 0, {}}, {kCX, 1, {}}}, cfg);
  EXPECT_TRUE(ok.valid());
  EXPECT_EQ(ok.circuit.gates()[1].qubits, (std::vector<int>{1, 0}));
}

TEST(BuildCircuit, SlotReuseSemantics) {
  auto cfg = tiny_config();
  // New slot, reuse slot 0, reference to a missing slot allocates fresh.
  const auto r = build_circuit({{kRX, 0, {0, 0}}, {kRX, 1, {1, 0}}, {kRX, 0, {3, 0}}}, cfg);
  ASSERT_EQ(r.circuit.gate_count(), 3);
  EXPECT_EQ(r.circuit.gates()[0].params, std::vector<int>{0});
  EXPECT_EQ(r.circuit.gates()[1].params, std::vector<int>{0});
  EXPECT_EQ(r.circuit.gates()[2].params, std::vector<int>{1});
  EXPECT_EQ(r.circuit.num_params(), 2);
}

TEST(BuildCircuit, StopsAtFirstCapViolation) {
  auto cfg = tiny_config();
  cfg.caps = {1, 3, 3};
  // The second fresh parameter would exceed theta_max, so the CX never lands.
  const auto r = build_circuit({{kRX, 0, {}}, {kRX, 1, {}}, {kCX, 0, {}}}, cfg);
  EXPECT_EQ(r.circuit.gate_count(), 1);
  EXPECT_FALSE(r.valid());

  cfg.caps = {3, 3, 2};
  const auto d = build_circuit({{kH, 0, {}}, {kH, 0, {}}, {kH, 0, {}}}, cfg);
  EXPECT_EQ(d.circuit.gate_count(), 2);
  // STOP truncates.
  EXPECT_EQ(build_circuit({{kH, 0, {}}, {0, 0, {}}, {kH, 1, {}}}, tiny_config()).circuit.gate_count(), 1);
}

TEST(BuildCircuit, RejectsMalformedDecisions) {
  const auto cfg = tiny_config();
  EXPECT_THROW(build_circuit({{4, 0, {}}}, cfg), Error);
  EXPECT_THROW(build_circuit({{kH, 2, {}}}, cfg), Error);
  EXPECT_THROW(build_circuit({{kRX, 0, {4, 0}}}, cfg), Error);
  EXPECT_THROW(build_circuit({{kRX, 0, {-1, 0}}}, cfg), Error);
}

TEST(BuildCircuit, RandomPointsRespectCaps) {
  SearchConfig cfg;
  cfg.caps = {5, 9, 4};
  const SearchSpace space(cfg);
  const auto cat = space.categorical();
  RandomProposer random;
  Rng rng(1);
  for (int i = 0; i < 2000; ++i) {
    const auto c = space.build(space.decode(random.propose(cat, {}, rng))).circuit.complexity();
    ASSERT_LE(c.n_params, 5);
    ASSERT_LE(c.gates, 9);
    ASSERT_LE(c.depth, 4);
  }
}

TEST(SearchSpace, TopologyAndExcitationPlacements) {
  SearchConfig cfg;
  cfg.gate_pool = {GateKind::R, GateKind::CZ};
  cfg.topology = std::vector<std::pair<int, int>>{{0, 2}, {1, 2}, {2, 3}};
  const SearchSpace space(cfg);
  EXPECT_EQ(space.placements(1).size(), 4u);
  const auto& pairs = space.placements(2);
  EXPECT_EQ(pairs.size(), 6u);
  for (const auto& p : pairs) EXPECT_TRUE(p[0] == 2 || p[1] == 2) << p[0] << "," << p[1];

  cfg.gate_pool = {GateKind::SingleExc, GateKind::DoubleExc};
  cfg.topology.reset();
  const SearchSpace exc(cfg);
  EXPECT_EQ(exc.placements(1), (std::vector<std::vector<int>>{{0, 1}, {2, 3}}));
  EXPECT_EQ(exc.placements(2).size(), 2u);

  cfg.topology = std::vector<std::pair<int, int>>{{0, 4}};
  EXPECT_THROW(SearchSpace{cfg}, Error);
}

TEST(SearchSpace, ActiveMaskFollowsConstruction) {
  const SearchSpace space(tiny_config());
  const auto cat = space.categorical();
  // Per position: kind, 3 placement dims, 2 slot dims.
  ASSERT_EQ(cat.sizes.size(), 18u);
  std::vector<int> point(18, 0);
  point[0] = kRX;
  point[6] = kH;
  point[12] = 0;
  const auto mask = cat.active_mask(point);
  const std::vector<bool> expected = {true, false, true, false, true, false,  //
                                      true, true, false, false, false, false,  //
                                      true, false, false, false, false, false};
  EXPECT_EQ(mask, expected);
  EXPECT_EQ(space.decode(point).size(), 2u);
}

TEST(HierarchicalCost, Examples) {
  EXPECT_NEAR(hierarchical_cost(report_with(0.2, {}, {}, 0.3), {Objective::Expr}), 1.2, 1e-15);
  EXPECT_EQ(hierarchical_cost(report_with(0.0, {}, {}, 0.25), {Objective::Expr}), 0.25);
  EXPECT_NEAR(hierarchical_cost(report_with(0.1, 0.3, {}, 0.5), {Objective::Expr, Objective::Train}), 1.4, 1e-15);
  EXPECT_THROW(hierarchical_cost(report_with(0.1, {}, {}, 0.5), {Objective::Train}), Error);
  EXPECT_THROW(hierarchical_cost(report_with(0.1, {}, {}, 0.5), {}), Error);
}

TEST(HierarchicalCost, BranchSeparationProperty) {
  Rng rng(2);
  std::uniform_real_distribution<double> u(0, 1);
  std::bernoulli_distribution zero(0.4);
  const std::vector<std::vector<Objective>> sets = {{Objective::Expr},
                                                    {Objective::Train},
                                                    {Objective::Ent},
                                                    {Objective::Expr, Objective::Train},
                                                    {Objective::Expr, Objective::Ent},
                                                    {Objective::Expr, Objective::Train, Objective::Ent}};
  for (int i = 0; i < 100000; ++i) {
    auto loss = [&] { return zero(rng) ? 0.0 : u(rng); };
    const auto r = report_with(loss(), loss(), loss(), u(rng));
    const auto& objectives = sets[static_cast<std::size_t>(i) % sets.size()];
    bool some_positive = false;
    for (Objective o : objectives) {
      const double l = o == Objective::Expr ? *r.loss_expr : o == Objective::Train ? *r.loss_train : *r.loss_ent;
      some_positive = some_positive || l > 0;
    }
    const double cost = hierarchical_cost(r, objectives);
    ASSERT_EQ(cost > 1, some_positive);
    ASSERT_LE(cost, some_positive ? 1.0 + objectives.size() : 1.0);
  }
}

TEST(RunSearch, DeterministicForAFixedSeed) {
  auto cfg = tiny_config();
  cfg.n_trials = 60;
  cfg.proposer = "tpe";
  cfg.seed = 9;
  const auto a = run_search(cfg);
  const auto b = run_search(cfg);
  EXPECT_EQ(history_fingerprint(a), history_fingerprint(b));
  EXPECT_EQ(a.best, b.best);
  EXPECT_EQ(a.test_cost, b.test_cost);
  cfg.seed = 10;
  EXPECT_NE(history_fingerprint(a), history_fingerprint(run_search(cfg)));
}

TEST(RunSearch, RecordInvariantsAndPruning) {
  auto cfg = tiny_config();
  cfg.n_trials = 400;
  cfg.duplicate_prune_limit = 3;
  const auto r = run_search(cfg);
  ASSERT_EQ(r.history.size(), 400u);
  std::map<std::string, int> evaluations;
  double running = kInvalidCost;
  int pruned = 0;
  for (const auto& t : r.history) {
    EXPECT_EQ(t.cost.has_value(), t.status == TrialStatus::Evaluated);
    EXPECT_EQ(t.report.has_value(), t.status == TrialStatus::Evaluated);
    if (t.status == TrialStatus::Invalid) EXPECT_EQ(t.feedback, kInvalidCost);
    if (t.status == TrialStatus::Pruned) ++pruned;
    if (t.cost) {
      EXPECT_EQ(t.feedback, *t.cost);
      ++evaluations[circuit_to_json(*t.circuit).dump()];
      running = std::min(running, *t.cost);
    }
    const auto c = t.circuit->complexity();
    EXPECT_LE(c.n_params, cfg.caps.theta_max);
    EXPECT_LE(c.gates, cfg.caps.gates_max);
    EXPECT_LE(c.depth, cfg.caps.depth_max);
  }
  EXPECT_GT(pruned, 0);
  for (const auto& [key, count] : evaluations) EXPECT_LE(count, cfg.duplicate_prune_limit) << key;
  ASSERT_TRUE(r.feasible());
  EXPECT_EQ(*r.history[*r.best].cost, running);
  // Earliest trial wins ties.
  for (std::size_t i = 0; i < *r.best; ++i)
    if (r.history[i].cost) EXPECT_GT(*r.history[i].cost, running);
  EXPECT_TRUE(r.test_report.has_value());
}

TEST(RunSearch, UnattainableThresholdKeepsCostsAboveOne) {
  auto cfg = tiny_config();
  cfg.objectives = {Objective::Ent};
  cfg.metrics.tau_ent = 1.5;
  cfg.metrics.n_entanglement_samples = 50;
  cfg.n_trials = 60;
  const auto r = run_search(cfg);
  ASSERT_TRUE(r.feasible());
  for (const auto& t : r.history)
    if (t.cost) EXPECT_GT(*t.cost, 1.0);
  EXPECT_GT(*r.test_cost, 1.0);
}

TEST(RunSearch, ReportsNoFeasibleCircuit) {
  auto cfg = tiny_config();
  cfg.gate_pool = {GateKind::H, GateKind::CX};
  cfg.n_trials = 30;
  const auto r = run_search(cfg);
  EXPECT_FALSE(r.feasible());
  EXPECT_FALSE(r.test_report.has_value());
  for (const auto& t : r.history) EXPECT_EQ(t.status, TrialStatus::Invalid);
}

TEST(RunSearch, CallbackSeesEveryTrial) {
  auto cfg = tiny_config();
  cfg.n_trials = 25;
  int calls = 0;
  run_search(cfg, [&](const TrialRecord& t) { EXPECT_EQ(t.index, calls++); });
  EXPECT_EQ(calls, 25);
}

TEST(Proposers, RandomIsUniformOnTwoChoices) {
  CategoricalSpace space{{2}, {}};
  RandomProposer random;
  Rng rng(4);
  int ones = 0;
  for (int i = 0; i < 10000; ++i) ones += random.propose(space, {}, rng)[0];
  // Binomial(10000, 1/2): σ = 50.
  EXPECT_NEAR(ones, 5000, 150);
}

TEST(Proposers, TpeColdStartIsValidShape) {
  CategoricalSpace space{{3, 5, 2}, {}};
  TpeProposer tpe;
  Rng rng(5);
  const auto p = tpe.propose(space, {}, rng);
  ASSERT_EQ(p.size(), 3u);
  for (std::size_t d = 0; d < p.size(); ++d) {
    EXPECT_GE(p[d], 0);
    EXPECT_LT(p[d], space.sizes[d]);
  }
  EXPECT_THROW(make_proposer("annealing"), Error);
}

TEST(Proposers, TpeBeatsRandomOnPlantedOptimum) {
  const CategoricalSpace space{{4, 4, 4, 4, 4}, {}};
  const std::vector<int> planted = {3, 1, 0, 2, 1};
  auto trials_to_optimum = [&](Proposer& p, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Observation> history;
    constexpr int kCap = 3000;
    for (int t = 0; t < kCap; ++t) {
      auto point = p.propose(space, history, rng);
      double mismatches = 0;
      for (std::size_t d = 0; d < point.size(); ++d) mismatches += point[d] != planted[d];
      if (mismatches == 0) return t + 1;
      history.push_back({std::move(point), mismatches});
    }
    return kCap;
  };
  std::vector<int> tpe_trials, random_trials;
  for (std::uint64_t run = 0; run < 50; ++run) {
    TpeProposer tpe;
    RandomProposer random;
    tpe_trials.push_back(trials_to_optimum(tpe, 1000 + run));
    random_trials.push_back(trials_to_optimum(random, 1000 + run));
  }
  std::nth_element(tpe_trials.begin(), tpe_trials.begin() + 25, tpe_trials.end());
  std::nth_element(random_trials.begin(), random_trials.begin() + 25, random_trials.end());
  EXPECT_LT(tpe_trials[25], random_trials[25]);
}

TEST(TrialJson, Fields) {
  auto cfg = tiny_config();
  cfg.n_trials = 5;
  const auto r = run_search(cfg);
  const auto j = trial_to_json(r.history[0]);
  for (const char* key : {"trial", "status", "decisions", "circuit", "report", "cost", "feedback", "wall_seconds"})
    EXPECT_TRUE(j.contains(key)) << key;
}

TEST(Objectives, ParseAndPrint) {
  EXPECT_EQ(parse_objective("Expr"), Objective::Expr);
  EXPECT_EQ(parse_objective("train"), Objective::Train);
  EXPECT_EQ(to_string(Objective::Ent), "ent");
  EXPECT_THROW(parse_objective("magic"), Error);
}

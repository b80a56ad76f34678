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

#include "pqc/cli/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "pqc/cli/benchmarks.hpp"
#include "pqc/cli/config.hpp"
#include "pqc/cli/run_dir.hpp"
#include "pqc/concentration.hpp"
#include "pqc/error.hpp"
#include "pqc/sim/circuit_json.hpp"

namespace pqc::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Context {
  std::vector<std::string> argv;
  std::ostream& out;
  std::ostream& err;
};

// ---- metrics ---------------------------------------------------------------

struct MetricsArgs {
  std::string circuit;
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
};

int metrics_command(const MetricsArgs& a, Context& ctx) {
  const Circuit circuit = load_circuit(a.circuit);
  MetricsJob job = a.config.empty() ? MetricsJob{} : metrics_job_from_json(read_json_file(a.config));
  if (a.seed) job.seed = *a.seed;

  RunDirectory run(a.out, "metrics", ctx.argv);
  run.set_config(to_json(job));
  run.add_seed("metrics", job.seed);
  run.write_text("circuit.json", dump_circuit(circuit));
  const MetricReport report = evaluate_metrics(circuit, job.inputs, job.seed);
  const json j = report_to_json(report);
  run.write_json("report.json", j);
  if (report.histogram) run.write_text("histogram.csv", histogram_csv(*report.histogram));
  run.finish();
  ctx.out << j.dump(2) << '\n';
  return kExitOk;
}

// ---- search ----------------------------------------------------------------

struct SearchArgs {
  std::string config;
  std::string out;
  std::optional<int> trials;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> proposer;
};

int search_command(const SearchArgs& a, Context& ctx) {
  SearchConfig cfg = search_config_from_json(read_json_file(a.config));
  if (a.trials) cfg.n_trials = *a.trials;
  if (a.seed) cfg.seed = *a.seed;
  if (a.proposer) cfg.proposer = *a.proposer;
  validate(cfg);

  RunDirectory run(a.out, "search", ctx.argv);
  run.set_config(to_json(cfg));
  run.add_seed("search", cfg.seed);
  run.write_text("history.jsonl", "");
  const SearchResult result =
      run_search(cfg, [&](const TrialRecord& t) { run.append_line("history.jsonl", trial_to_json(t).dump()); });

  int evaluated = 0, invalid = 0, pruned = 0;
  for (const auto& t : result.history) {
    evaluated += t.status == TrialStatus::Evaluated;
    invalid += t.status == TrialStatus::Invalid;
    pruned += t.status == TrialStatus::Pruned;
  }
  json summary = {{"feasible", result.feasible()},
                  {"n_trials", cfg.n_trials},
                  {"evaluated", evaluated},
                  {"invalid", invalid},
                  {"pruned", pruned}};
  if (result.feasible()) {
    const TrialRecord& best = result.history[*result.best];
    summary["best_trial"] = best.index;
    summary["best_cost"] = *best.cost;
    summary["test_cost"] = *result.test_cost;
    summary["best_counts"] = {{"n_params", best.report->counts.n_params},
                              {"gates", best.report->counts.gates},
                              {"depth", best.report->counts.depth}};
    run.write_text("best_circuit.json", dump_circuit(*best.circuit));
    run.write_json("best_report.json", report_to_json(*best.report));
    run.write_json("test_report.json", report_to_json(*result.test_report));
  }
  run.write_json("summary.json", summary);
  run.set_summary(summary);
  run.finish();
  ctx.out << summary.dump(2) << '\n';
  if (!result.feasible()) {
    ctx.err << "search: no feasible circuit in " << cfg.n_trials << " trials\n";
    return kExitDomainError;
  }
  return kExitOk;
}

// ---- vqe -------------------------------------------------------------------

struct VqeArgs {
  std::string config;
  std::string out;
  std::vector<std::string> hamiltonians;
  std::optional<std::uint64_t> seed;
};

int vqe_command(const VqeArgs& a, Context& ctx) {
  json raw = read_json_file(a.config);
  if (!a.hamiltonians.empty()) {
    raw.erase("hamiltonian");
    raw["hamiltonians"] = a.hamiltonians;
  }
  // Overridden paths are relative to the working directory, config paths to the file.
  const fs::path base = a.hamiltonians.empty() ? fs::path(a.config).parent_path() : fs::current_path();
  if (!a.hamiltonians.empty() && raw.contains("ansatz") && raw["ansatz"].is_string() &&
      raw["ansatz"].get<std::string>() != "spin_conserving_pool")
    raw["ansatz"] = (fs::path(a.config).parent_path() / raw["ansatz"].get<std::string>()).string();
  VqeJob job = vqe_job_from_json(raw, base);
  if (a.seed) {
    job.config.seed = *a.seed;
    job.snapshot["seed"] = *a.seed;
  }

  std::vector<PauliSum> hamiltonians;
  for (const auto& p : job.hamiltonians) hamiltonians.push_back(load_pauli_sum(p));

  RunDirectory run(a.out, "vqe", ctx.argv);
  run.set_config(job.snapshot);
  run.add_seed("vqe", job.config.seed);
  const std::vector<VqeTrace> traces = geometry_sweep(job.config, hamiltonians);

  json summary;
  if (traces.size() == 1) {
    run.write_text("trace.csv", trace_csv(traces[0]));
    summary = trace_summary(traces[0]);
    summary["hamiltonian"] = job.hamiltonians[0].string();
  } else {
    summary["geometries"] = json::array();
    for (std::size_t i = 0; i < traces.size(); ++i) {
      const std::string name = "trace_" + std::to_string(i) + "_" + job.hamiltonians[i].stem().string() + ".csv";
      run.write_text(name, trace_csv(traces[i]));
      json g = trace_summary(traces[i]);
      g["hamiltonian"] = job.hamiltonians[i].string();
      g["trace"] = name;
      summary["geometries"].push_back(g);
    }
  }
  run.write_json("summary.json", summary);
  run.set_summary(summary);
  run.finish();
  ctx.out << summary.dump(2) << '\n';
  return kExitOk;
}

// ---- verify-bound ----------------------------------------------------------

struct VerifyArgs {
  int batches = 2000;
  int m = 500;
  double delta = 0.05;
  double eps = 0.05;
  double range = 2.0;
  int cases = 10000;
  int m_min = 3;
  int m_max = 100;
  std::uint64_t seed = 0;
  std::string out;
};

std::string fixed(double v, int digits) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

int verify_command(const VerifyArgs& a, Context& ctx) {
  struct Row {
    std::string check, value, threshold;
    bool pass;
  };
  std::vector<Row> rows;
  json details = json::array();

  const auto m_req = required_samples(a.eps, a.delta, a.range);
  rows.push_back({"required_samples(eps=" + fixed(a.eps, 3) + ", delta=" + fixed(a.delta, 3) + ", R=" + fixed(a.range, 1) + ")",
                  std::to_string(m_req), "eps(m) <= eps",
                  concentration_epsilon(m_req, a.delta, a.range) <= a.eps});
  details.push_back({{"check", "required_samples"}, {"m", m_req}});

  for (SampleLaw law : {SampleLaw::Uniform, SampleLaw::Rademacher, SampleLaw::SkewedBernoulli}) {
    const auto r = coverage_suite(law, a.batches, a.m, a.delta, derive_seed(a.seed, {1, static_cast<std::uint64_t>(law)}));
    rows.push_back({"coverage " + std::string(to_string(law)) + " (m=" + std::to_string(a.m) + ", " +
                        std::to_string(a.batches) + " batches)",
                    fixed(r.coverage, 4), ">= " + fixed(1 - a.delta, 4), r.pass});
    details.push_back({{"check", "coverage"},
                       {"law", std::string(to_string(law))},
                       {"coverage", r.coverage},
                       {"epsilon", r.epsilon},
                       {"pass", r.pass}});
  }

  const auto sb = self_bounding_suite(a.cases, a.m_min, a.m_max, derive_seed(a.seed, {2}));
  rows.push_back({"self-bounding max Delta_k (" + std::to_string(a.cases) + " samples)", fixed(sb.worst_max_delta, 6),
                  "<= 1 + 1e-12", sb.worst_max_delta <= 1 + 1e-12});
  rows.push_back({"self-bounding sum Delta_k^2 - m/(m-1) Z", fixed(sb.worst_sum_margin, 6), "<= 1e-12",
                  sb.failures == 0});
  details.push_back({{"check", "self_bounding"},
                     {"cases", sb.cases},
                     {"failures", sb.failures},
                     {"worst_max_delta", sb.worst_max_delta},
                     {"worst_sum_margin", sb.worst_sum_margin}});

  std::size_t width = 5;
  for (const auto& r : rows) width = std::max(width, r.check.size());
  bool all = true;
  ctx.out << std::left << std::setw(static_cast<int>(width) + 2) << "check" << std::setw(14) << "value"
          << std::setw(16) << "threshold" << "result\n";
  for (const auto& r : rows) {
    ctx.out << std::left << std::setw(static_cast<int>(width) + 2) << r.check << std::setw(14) << r.value
            << std::setw(16) << r.threshold << (r.pass ? "PASS" : "FAIL") << '\n';
    all = all && r.pass;
  }

  if (!a.out.empty()) {
    RunDirectory run(a.out, "verify-bound", ctx.argv);
    run.set_config({{"batches", a.batches},
                    {"m", a.m},
                    {"delta", a.delta},
                    {"eps", a.eps},
                    {"range", a.range},
                    {"cases", a.cases},
                    {"m_min", a.m_min},
                    {"m_max", a.m_max},
                    {"seed", a.seed}});
    run.add_seed("verify-bound", a.seed);
    run.write_json("verify.json", {{"pass", all}, {"checks", details}});
    run.set_summary({{"pass", all}});
    run.finish();
  }
  return all ? kExitOk : kExitDomainError;
}

// ---- oracle ----------------------------------------------------------------

struct OracleArgs {
  std::string hamiltonian;
  std::string out;
};

int oracle_command(const OracleArgs& a, Context& ctx) {
  const PauliSum h = load_pauli_sum(a.hamiltonian);
  const GroundState g = exact_ground_energy(h);
  const json result = {{"hamiltonian", a.hamiltonian},
                       {"n_qubits", h.num_qubits()},
                       {"terms", h.size()},
                       {"ground_energy", g.energy}};
  if (!a.out.empty()) {
    RunDirectory run(a.out, "oracle", ctx.argv);
    run.set_config({{"hamiltonian", fs::absolute(a.hamiltonian).string()}});
    run.write_json("oracle.json", result);
    run.set_summary(result);
    run.finish();
  }
  ctx.out << result.dump(2) << '\n';
  return kExitOk;
}

// ---- bench -----------------------------------------------------------------

struct BenchArgs {
  int id = 1;
  int reps = 1;
  int n = 4;
  std::string out;
};

int bench_command(const BenchArgs& a, Context& ctx) {
  const Circuit c = benchmark_circuit(a.id, a.n, a.reps);
  if (!a.out.empty()) {
    const auto counts = c.complexity();
    RunDirectory run(a.out, "bench", ctx.argv);
    run.set_config({{"id", a.id}, {"reps", a.reps}, {"n", a.n}});
    run.write_text("circuit.json", dump_circuit(c));
    run.set_summary({{"n_params", counts.n_params}, {"gates", counts.gates}, {"depth", counts.depth}});
    run.finish();
  }
  ctx.out << dump_circuit(c);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"pqclab: parameterized quantum circuit metrics, architecture search and VQE", "pqclab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", toolkit_version());

  std::function<int(Context&)> action;

  MetricsArgs metrics;
  auto* m = app.add_subcommand("metrics", "Evaluate expressibility, trainability and entanglement of a circuit");
  m->add_option("--circuit", metrics.circuit, "Circuit JSON")->required()->check(CLI::ExistingFile);
  m->add_option("--config", metrics.config, "Metrics config JSON")->check(CLI::ExistingFile);
  m->add_option("--out", metrics.out, "Run directory")->required();
  m->add_option("--seed", metrics.seed, "Override the config seed");
  m->callback([&] { action = [&](Context& c) { return metrics_command(metrics, c); }; });

  SearchArgs search;
  auto* s = app.add_subcommand("search", "Run the hierarchical-cost architecture search");
  s->add_option("--config", search.config, "Search config JSON")->required()->check(CLI::ExistingFile);
  s->add_option("--out", search.out, "Run directory")->required();
  s->add_option("--trials", search.trials, "Override n_trials")->check(CLI::NonNegativeNumber);
  s->add_option("--seed", search.seed, "Override the config seed");
  s->add_option("--proposer", search.proposer, "random or tpe")->check(CLI::IsMember({"random", "tpe"}));
  s->callback([&] { action = [&](Context& c) { return search_command(search, c); }; });

  VqeArgs vqe;
  auto* v = app.add_subcommand("vqe", "Minimize a Pauli-sum energy over an ansatz");
  v->add_option("--config", vqe.config, "VQE config JSON")->required()->check(CLI::ExistingFile);
  v->add_option("--out", vqe.out, "Run directory")->required();
  v->add_option("--hamiltonian", vqe.hamiltonians, "Override the Hamiltonian file(s)")->check(CLI::ExistingFile);
  v->add_option("--seed", vqe.seed, "Override the config seed");
  v->callback([&] { action = [&](Context& c) { return vqe_command(vqe, c); }; });

  VerifyArgs verify;
  auto* b = app.add_subcommand("verify-bound", "Run the concentration coverage and self-bounding suites");
  b->add_option("--batches", verify.batches, "Coverage batches per law")->check(CLI::PositiveNumber);
  b->add_option("--m", verify.m, "Samples per coverage batch")->check(CLI::Range(3, 100000000));
  b->add_option("--delta", verify.delta, "Failure probability")->check(CLI::Range(1e-12, 1.0 - 1e-12));
  b->add_option("--eps", verify.eps, "Target half-width for the sample-size check")->check(CLI::PositiveNumber);
  b->add_option("--range", verify.range, "Clipping range R = U - L")->check(CLI::PositiveNumber);
  b->add_option("--cases", verify.cases, "Self-bounding samples")->check(CLI::PositiveNumber);
  b->add_option("--m-min", verify.m_min, "Smallest self-bounding sample size")->check(CLI::Range(3, 100000000));
  b->add_option("--m-max", verify.m_max, "Largest self-bounding sample size")->check(CLI::Range(3, 100000000));
  b->add_option("--seed", verify.seed, "Seed");
  b->add_option("--out", verify.out, "Optional run directory");
  b->callback([&] { action = [&](Context& c) { return verify_command(verify, c); }; });

  OracleArgs oracle;
  auto* o = app.add_subcommand("oracle", "Exact ground energy of a Pauli-sum Hamiltonian");
  o->add_option("--hamiltonian", oracle.hamiltonian, "Hamiltonian file")->required()->check(CLI::ExistingFile);
  o->add_option("--out", oracle.out, "Optional run directory");
  o->callback([&] { action = [&](Context& c) { return oracle_command(oracle, c); }; });

  BenchArgs bench;
  auto* k = app.add_subcommand("bench", "Emit a benchmark circuit as JSON");
  k->add_option("--id", bench.id, "Circuit id (1-19)")->required()->check(CLI::Range(1, 19));
  k->add_option("--reps", bench.reps, "Layer repetitions")->check(CLI::PositiveNumber);
  k->add_option("--n", bench.n, "Qubits")->check(CLI::Range(2, 30));
  k->add_option("--out", bench.out, "Optional run directory");
  k->callback([&] { action = [&](Context& c) { return bench_command(bench, c); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    if (app.get_subcommands().empty()) err << app.help();
    return kExitUsage;
  }

  std::vector<std::string> argv{"pqclab"};
  argv.insert(argv.end(), args.begin(), args.end());
  Context ctx{argv, out, err};
  try {
    return action(ctx);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomainError;
  }
}

}  // namespace pqc::cli

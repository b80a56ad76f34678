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

#include "pqc/cli/config.hpp"

#include <fstream>
#include <initializer_list>
#include <set>

#include "pqc/error.hpp"
#include "pqc/sim/circuit_json.hpp"

namespace pqc {
namespace {

using nlohmann::json;

void require_object(const json& j, const std::string& context) {
  if (!j.is_object()) throw Error(context + ": expected a JSON object");
}

void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& context) {
  require_object(j, context);
  const std::set<std::string> known(allowed.begin(), allowed.end());
  for (const auto& [key, value] : j.items())
    if (!known.contains(key)) throw Error(context + ": unknown key '" + key + "'");
}

template <typename T>
void read(const json& j, const char* key, T& out, const std::string& context) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(context + "." + key + ": " + e.what());
  }
}

std::pair<double, double> read_interval(const json& j, const std::string& context) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw Error(context + ": expected [lower, upper]");
  return {j[0].get<double>(), j[1].get<double>()};
}

MetricSelection selection_from_json(const json& j) {
  if (!j.is_array()) throw Error("compute: expected a list of metric names");
  MetricSelection s{false, false, false};
  for (const auto& name : j) {
    if (!name.is_string()) throw Error("compute: expected metric names");
    switch (parse_objective(name.get<std::string>())) {
      case Objective::Expr:
        s.expr = true;
        break;
      case Objective::Train:
        s.train = true;
        break;
      case Objective::Ent:
        s.ent = true;
        break;
    }
  }
  return s;
}

json selection_to_json(const MetricSelection& s) {
  json out = json::array();
  if (s.expr) out.push_back("expr");
  if (s.train) out.push_back("train");
  if (s.ent) out.push_back("ent");
  return out;
}

}  // namespace

MetricConfig metric_config_from_json(const json& j) {
  const std::string ctx = "metrics";
  check_keys(j,
             {"n_fidelity_pairs", "n_bins", "eps_truncation", "tau_expr", "expr_max", "tau_bp", "tau_ent",
              "m_gradient_samples", "clip", "delta", "fd_step", "param_domain", "n_entanglement_samples",
              "initial_states", "normalize_by_noise"},
             ctx);
  MetricConfig cfg;
  read(j, "n_fidelity_pairs", cfg.n_fidelity_pairs, ctx);
  read(j, "n_bins", cfg.n_bins, ctx);
  read(j, "eps_truncation", cfg.eps_truncation, ctx);
  read(j, "tau_expr", cfg.tau_expr, ctx);
  if (j.contains("expr_max") && !j["expr_max"].is_null()) {
    double v = 0;
    read(j, "expr_max", v, ctx);
    cfg.expr_max = v;
  }
  read(j, "tau_bp", cfg.tau_bp, ctx);
  read(j, "tau_ent", cfg.tau_ent, ctx);
  read(j, "m_gradient_samples", cfg.m_gradient_samples, ctx);
  if (j.contains("clip")) {
    const auto [lo, hi] = read_interval(j["clip"], ctx + ".clip");
    cfg.clip = {lo, hi};
  }
  read(j, "delta", cfg.delta, ctx);
  read(j, "fd_step", cfg.fd_step, ctx);
  if (j.contains("param_domain")) {
    const auto [lo, hi] = read_interval(j["param_domain"], ctx + ".param_domain");
    cfg.param_domain = {lo, hi};
  }
  read(j, "n_entanglement_samples", cfg.n_entanglement_samples, ctx);
  read(j, "initial_states", cfg.initial_states, ctx);
  read(j, "normalize_by_noise", cfg.normalize_by_noise, ctx);
  validate(cfg);
  return cfg;
}

json to_json(const MetricConfig& cfg) {
  return {{"n_fidelity_pairs", cfg.n_fidelity_pairs},
          {"n_bins", cfg.n_bins},
          {"eps_truncation", cfg.eps_truncation},
          {"tau_expr", cfg.tau_expr},
          {"expr_max", cfg.expr_max ? json(*cfg.expr_max) : json()},
          {"tau_bp", cfg.tau_bp},
          {"tau_ent", cfg.tau_ent},
          {"m_gradient_samples", cfg.m_gradient_samples},
          {"clip", {cfg.clip.lower, cfg.clip.upper}},
          {"delta", cfg.delta},
          {"fd_step", cfg.fd_step},
          {"param_domain", {cfg.param_domain.lower, cfg.param_domain.upper}},
          {"n_entanglement_samples", cfg.n_entanglement_samples},
          {"initial_states", cfg.initial_states},
          {"normalize_by_noise", cfg.normalize_by_noise}};
}

NoiseModel noise_from_json(const json& j) {
  const std::string ctx = "noise";
  check_keys(j, {"p1", "p2", "single_exc_two_qubit_units", "double_exc_two_qubit_units"}, ctx);
  NoiseModel n;
  read(j, "p1", n.p1, ctx);
  read(j, "p2", n.p2, ctx);
  read(j, "single_exc_two_qubit_units", n.single_exc_two_qubit_units, ctx);
  read(j, "double_exc_two_qubit_units", n.double_exc_two_qubit_units, ctx);
  if (!(n.p1 >= 0 && n.p1 < 1) || !(n.p2 >= 0 && n.p2 < 1)) throw Error("noise: p1 and p2 must lie in [0, 1)");
  return n;
}

json to_json(const NoiseModel& n) {
  return {{"p1", n.p1},
          {"p2", n.p2},
          {"single_exc_two_qubit_units", n.single_exc_two_qubit_units},
          {"double_exc_two_qubit_units", n.double_exc_two_qubit_units}};
}

ComplexityCaps caps_from_json(const json& j) {
  const std::string ctx = "caps";
  check_keys(j, {"theta_max", "gates_max", "depth_max"}, ctx);
  ComplexityCaps c;
  read(j, "theta_max", c.theta_max, ctx);
  read(j, "gates_max", c.gates_max, ctx);
  read(j, "depth_max", c.depth_max, ctx);
  if (c.theta_max < 1 || c.gates_max < 1 || c.depth_max < 1) throw Error("caps must be positive");
  return c;
}

json to_json(const ComplexityCaps& c) {
  return {{"theta_max", c.theta_max}, {"gates_max", c.gates_max}, {"depth_max", c.depth_max}};
}

PauliSum observable_from_json(const json& j) {
  try {
    if (j.is_string()) {
      const PauliString p(j.get<std::string>());
      PauliSum h(p.num_qubits());
      h.add(1.0, p);
      return h;
    }
    if (!j.is_array() || j.empty()) throw Error("observable: expected a Pauli string or [[coefficient, string], ...]");
    std::optional<PauliSum> h;
    for (const auto& term : j) {
      if (!term.is_array() || term.size() != 2) throw Error("observable: each term must be [coefficient, string]");
      const PauliString p(term[1].get<std::string>());
      if (!h) h.emplace(p.num_qubits());
      if (p.num_qubits() != h->num_qubits()) throw Error("observable: terms have different lengths");
      h->add(term[0].get<double>(), p);
    }
    return *h;
  } catch (const json::exception& e) {
    throw Error(std::string("observable: ") + e.what());
  }
}

json observable_to_json(const PauliSum& h) {
  json out = json::array();
  for (const auto& t : h.terms()) out.push_back({t.coefficient, t.string.ops()});
  return out;
}

MetricsJob metrics_job_from_json(const json& j) {
  check_keys(j, {"metrics", "noise", "observable", "caps", "compute", "seed"}, "metrics config");
  MetricsJob job;
  if (j.contains("metrics")) job.inputs.config = metric_config_from_json(j["metrics"]);
  if (j.contains("noise")) job.inputs.noise = noise_from_json(j["noise"]);
  if (j.contains("observable") && !j["observable"].is_null()) job.inputs.observable = observable_from_json(j["observable"]);
  if (j.contains("caps")) job.inputs.caps = caps_from_json(j["caps"]);
  if (j.contains("compute")) job.inputs.selection = selection_from_json(j["compute"]);
  read(j, "seed", job.seed, "metrics config");
  return job;
}

json to_json(const MetricsJob& job) {
  const auto& in = job.inputs;
  return {{"metrics", to_json(in.config)},
          {"noise", to_json(in.noise)},
          {"observable", in.observable ? observable_to_json(*in.observable) : json()},
          {"caps", to_json(in.caps)},
          {"compute", selection_to_json(in.selection)},
          {"seed", job.seed}};
}

SearchConfig search_config_from_json(const json& j) {
  const std::string ctx = "search config";
  check_keys(j,
             {"n", "gate_pool", "topology", "caps", "theta_min", "n_trials", "objectives", "metrics", "noise",
              "observable", "duplicate_prune_limit", "proposer", "seed"},
             ctx);
  SearchConfig cfg;
  read(j, "n", cfg.n, ctx);
  if (j.contains("gate_pool")) {
    std::vector<std::string> names;
    read(j, "gate_pool", names, ctx);
    cfg.gate_pool.clear();
    for (const auto& name : names) cfg.gate_pool.push_back(parse_gate_kind(name));
  }
  if (j.contains("topology") && !j["topology"].is_null()) {
    std::vector<std::pair<int, int>> pairs;
    for (const auto& p : j["topology"]) {
      if (!p.is_array() || p.size() != 2) throw Error(ctx + ".topology: expected [[a, b], ...]");
      pairs.emplace_back(p[0].get<int>(), p[1].get<int>());
    }
    cfg.topology = std::move(pairs);
  }
  if (j.contains("caps")) cfg.caps = caps_from_json(j["caps"]);
  read(j, "theta_min", cfg.theta_min, ctx);
  read(j, "n_trials", cfg.n_trials, ctx);
  if (j.contains("objectives")) {
    std::vector<std::string> names;
    read(j, "objectives", names, ctx);
    cfg.objectives.clear();
    for (const auto& name : names) cfg.objectives.push_back(parse_objective(name));
  }
  if (j.contains("metrics")) cfg.metrics = metric_config_from_json(j["metrics"]);
  if (j.contains("noise")) cfg.noise = noise_from_json(j["noise"]);
  if (j.contains("observable") && !j["observable"].is_null()) cfg.observable = observable_from_json(j["observable"]);
  read(j, "duplicate_prune_limit", cfg.duplicate_prune_limit, ctx);
  read(j, "proposer", cfg.proposer, ctx);
  read(j, "seed", cfg.seed, ctx);
  validate(cfg);
  return cfg;
}

json to_json(const SearchConfig& cfg) {
  json pool = json::array();
  for (GateKind k : cfg.gate_pool) pool.push_back(std::string(to_string(k)));
  json topology;
  if (cfg.topology) {
    topology = json::array();
    for (auto [a, b] : *cfg.topology) topology.push_back({a, b});
  }
  json objectives = json::array();
  for (Objective o : cfg.objectives) objectives.push_back(std::string(to_string(o)));
  return {{"n", cfg.n},
          {"gate_pool", pool},
          {"topology", topology},
          {"caps", to_json(cfg.caps)},
          {"theta_min", cfg.theta_min},
          {"n_trials", cfg.n_trials},
          {"objectives", objectives},
          {"metrics", to_json(cfg.metrics)},
          {"noise", to_json(cfg.noise)},
          {"observable", cfg.observable ? observable_to_json(*cfg.observable) : json()},
          {"duplicate_prune_limit", cfg.duplicate_prune_limit},
          {"proposer", cfg.proposer},
          {"seed", cfg.seed}};
}

VqeJob vqe_job_from_json(const json& j, const std::filesystem::path& base_dir) {
  const std::string ctx = "vqe config";
  check_keys(j,
             {"hamiltonian", "hamiltonians", "ansatz", "reference", "n_electrons", "init", "theta0", "optimizer",
              "seed"},
             ctx);
  auto resolve = [&](const std::string& p) { return std::filesystem::absolute(base_dir / p).lexically_normal(); };
  VqeJob job;
  if (j.contains("hamiltonian") == j.contains("hamiltonians"))
    throw Error(ctx + ": give exactly one of 'hamiltonian' or 'hamiltonians'");
  if (j.contains("hamiltonian")) {
    std::string p;
    read(j, "hamiltonian", p, ctx);
    job.hamiltonians.push_back(resolve(p));
  } else {
    std::vector<std::string> ps;
    read(j, "hamiltonians", ps, ctx);
    if (ps.empty()) throw Error(ctx + ": 'hamiltonians' is empty");
    for (const auto& p : ps) job.hamiltonians.push_back(resolve(p));
  }

  // The ansatz width defaults to the first Hamiltonian's.
  const int n = load_pauli_sum(job.hamiltonians.front()).num_qubits();
  if (!j.contains("ansatz")) throw Error(ctx + ": missing 'ansatz'");
  const json& a = j["ansatz"];
  if (a.is_object()) {
    job.config.ansatz = circuit_from_json(a);
  } else if (a.is_string() && a.get<std::string>() == "spin_conserving_pool") {
    if (n % 2 != 0) throw Error(ctx + ": spin_conserving_pool needs an even qubit count");
    job.config.ansatz = excitation_ansatz(n, spin_conserving_pool(n / 2));
  } else if (a.is_string()) {
    job.config.ansatz = load_circuit(resolve(a.get<std::string>()));
  } else {
    throw Error(ctx + ".ansatz: expected a circuit object, a path, or \"spin_conserving_pool\"");
  }

  std::string reference;
  read(j, "reference", reference, ctx);
  if (reference == "hf") {
    int electrons = 0;
    if (!j.contains("n_electrons")) throw Error(ctx + ": reference \"hf\" needs 'n_electrons'");
    read(j, "n_electrons", electrons, ctx);
    if (n % 2 != 0) throw Error(ctx + ": reference \"hf\" needs an even qubit count");
    reference = hartree_fock_bitstring(n / 2, electrons);
  }
  job.config.reference = reference;

  std::string init = "zeros";
  read(j, "init", init, ctx);
  if (init == "zeros") {
    job.config.init = InitialParams::Zeros;
  } else if (init == "uniform") {
    job.config.init = InitialParams::Uniform;
  } else {
    throw Error(ctx + ".init: expected \"zeros\" or \"uniform\"");
  }
  if (j.contains("theta0") && !j["theta0"].is_null()) {
    std::vector<double> theta;
    read(j, "theta0", theta, ctx);
    job.config.theta0 = std::move(theta);
  }
  if (j.contains("optimizer")) {
    const json& o = j["optimizer"];
    const std::string octx = ctx + ".optimizer";
    check_keys(o, {"max_iterations", "gradient_step", "learning_rate", "tolerance"}, octx);
    auto& s = job.config.optimizer;
    read(o, "max_iterations", s.max_iterations, octx);
    read(o, "gradient_step", s.gradient_step, octx);
    read(o, "learning_rate", s.learning_rate, octx);
    read(o, "tolerance", s.tolerance, octx);
  }
  read(j, "seed", job.config.seed, ctx);

  json paths = json::array();
  for (const auto& p : job.hamiltonians) paths.push_back(p.string());
  const auto& s = job.config.optimizer;
  job.snapshot = {{"hamiltonians", paths},
                  {"ansatz", circuit_to_json(job.config.ansatz)},
                  {"reference", job.config.reference},
                  {"init", init},
                  {"theta0", job.config.theta0 ? json(*job.config.theta0) : json()},
                  {"optimizer",
                   {{"max_iterations", s.max_iterations},
                    {"gradient_step", s.gradient_step},
                    {"learning_rate", s.learning_rate},
                    {"tolerance", s.tolerance}}},
                  {"seed", job.config.seed}};
  return job;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

}  // namespace pqc

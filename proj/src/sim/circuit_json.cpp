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

#include "pqc/sim/circuit_json.hpp"

#include <fstream>
#include <sstream>

#include "pqc/error.hpp"

namespace pqc {

nlohmann::json circuit_to_json(const Circuit& circuit) {
  nlohmann::json gates = nlohmann::json::array();
  for (const auto& g : circuit.gates()) {
    gates.push_back({{"kind", std::string(to_string(g.kind))}, {"qubits", g.qubits}, {"params", g.params}});
  }
  return {{"n", circuit.num_qubits()}, {"n_params", circuit.num_params()}, {"gates", std::move(gates)}};
}

Circuit circuit_from_json(const nlohmann::json& doc) {
  try {
    Circuit c(doc.at("n").get<int>(), doc.at("n_params").get<int>());
    for (const auto& g : doc.at("gates")) {
      c.append({parse_gate_kind(g.at("kind").get<std::string>()), g.at("qubits").get<std::vector<int>>(),
                g.value("params", std::vector<int>{})});
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed circuit JSON: ") + e.what());
  }
}

std::string dump_circuit(const Circuit& circuit) { return circuit_to_json(circuit).dump(2) + "\n"; }

Circuit load_circuit(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open circuit file " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(path.string() + ": " + e.what());
  }
  return circuit_from_json(doc);
}

}  // namespace pqc

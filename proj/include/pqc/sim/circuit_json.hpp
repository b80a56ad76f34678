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

#include <filesystem>
#include <string>

#include "json.hpp"
#include "pqc/sim/circuit.hpp"

namespace pqc {

/// {"n": ..., "n_params": ..., "gates": [{"kind", "qubits", "params"}, ...]}
nlohmann::json circuit_to_json(const Circuit& circuit);
Circuit circuit_from_json(const nlohmann::json& doc);

/// Canonical text form (two-space indent, sorted keys, trailing newline).
std::string dump_circuit(const Circuit& circuit);
Circuit load_circuit(const std::filesystem::path& path);

}  // namespace pqc

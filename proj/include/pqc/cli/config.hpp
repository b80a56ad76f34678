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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "pqc/metrics.hpp"
#include "pqc/search/search.hpp"
#include "pqc/vqe.hpp"

namespace pqc {

// JSON mirrors of the configuration types. Parsers start from the defaults,
// reject unknown keys, and throw pqc::Error on malformed values.

MetricConfig metric_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const MetricConfig& cfg);

NoiseModel noise_from_json(const nlohmann::json& j);
nlohmann::json to_json(const NoiseModel& noise);

ComplexityCaps caps_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ComplexityCaps& caps);

/// Either "IIIZ" (unit coefficient) or [[coefficient, "IIIZ"], ...].
PauliSum observable_from_json(const nlohmann::json& j);
nlohmann::json observable_to_json(const PauliSum& h);

/// Metrics command file: {"metrics": {...}, "noise": {...}, "observable": ...,
/// "caps": {...}, "compute": ["expr", "train", "ent"], "seed": 0}.
struct MetricsJob {
  MetricInputs inputs;
  std::uint64_t seed = 0;
};
MetricsJob metrics_job_from_json(const nlohmann::json& j);
nlohmann::json to_json(const MetricsJob& job);

/// Field names follow SearchConfig.
SearchConfig search_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SearchConfig& cfg);

/// VQE command file. Paths are resolved against `base_dir`.
/// {"hamiltonian": path} or {"hamiltonians": [paths]}; "ansatz": inline
/// circuit, circuit file path, or "spin_conserving_pool"; "reference":
/// bitstring or "hf" (with "n_electrons"); "init": "zeros" | "uniform";
/// optional "theta0"; "optimizer": {...}; "seed".
struct VqeJob {
  std::vector<std::filesystem::path> hamiltonians;
  VqeConfig config;
  nlohmann::json snapshot;  ///< normalized config with absolute paths and the inline ansatz
};
VqeJob vqe_job_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir);

/// Reads and parses a JSON file; errors carry the path.
nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace pqc

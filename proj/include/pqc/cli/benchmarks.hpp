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

#include <vector>

#include "pqc/sim/circuit.hpp"

namespace pqc {

/// Circuits 1-19 of the Sim et al. expressibility/entangling-capability
/// collection. Each repetition allocates fresh parameters. Ids outside 1..19
/// throw pqc::Error.
Circuit benchmark_circuit(int id, int n = 4, int reps = 1);

/// Ids available from benchmark_circuit.
std::vector<int> benchmark_ids();

}  // namespace pqc

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

#include "pqc/cli/benchmarks.hpp"

#include <numeric>
#include <string>

#include "pqc/error.hpp"

namespace pqc {
namespace {

using K = GateKind;

void layer(Circuit& c, K kind) {
  for (int q = 0; q < c.num_qubits(); ++q) c.append_fresh(kind, {q});
}

void layer(Circuit& c, K kind, const std::vector<int>& qubits) {
  for (int q : qubits) c.append_fresh(kind, {q});
}

void pairs(Circuit& c, K kind, const std::vector<std::pair<int, int>>& ps) {
  for (auto [a, b] : ps) c.append_fresh(kind, {a, b});
}

// (i, i-1) for i = n-1 .. 1.
std::vector<std::pair<int, int>> ladder(int n) {
  std::vector<std::pair<int, int>> out;
  for (int i = n - 1; i >= 1; --i) out.emplace_back(i, i - 1);
  return out;
}

// Disjoint neighbour pairs starting at `first`: (first+1, first), (first+3, first+2), ...
std::vector<std::pair<int, int>> brick(int n, int first) {
  std::vector<std::pair<int, int>> out;
  for (int i = first; i + 1 < n; i += 2) out.emplace_back(i + 1, i);
  return out;
}

std::vector<std::pair<int, int>> ring_forward(int n) {
  std::vector<std::pair<int, int>> out;
  for (int i = n - 1; i >= 0; --i) out.emplace_back(i, (i + 1) % n);
  return out;
}

std::vector<std::pair<int, int>> ring_backward(int n) {
  std::vector<std::pair<int, int>> out{{n - 1, n - 2}};
  for (int i = 0; i < n - 1; ++i) out.emplace_back(i, (i - 1 + n) % n);
  return out;
}

std::vector<std::pair<int, int>> all_to_all(int n) {
  std::vector<std::pair<int, int>> out;
  for (int i = n - 1; i >= 0; --i)
    for (int j = n - 1; j >= 0; --j)
      if (j != i) out.emplace_back(i, j);
  return out;
}

void append_layer(Circuit& c, int id) {
  const int n = c.num_qubits();
  std::vector<int> inner(static_cast<std::size_t>(std::max(n - 2, 0)));
  std::iota(inner.begin(), inner.end(), 1);
  switch (id) {
    case 1:
      layer(c, K::RX);
      layer(c, K::RZ);
      break;
    case 2:
    case 3:
    case 4:
      layer(c, K::RX);
      layer(c, K::RZ);
      pairs(c, id == 2 ? K::CX : id == 3 ? K::CRZ : K::CRX, ladder(n));
      break;
    case 5:
    case 6:
      layer(c, K::RX);
      layer(c, K::RZ);
      pairs(c, id == 5 ? K::CRZ : K::CRX, all_to_all(n));
      layer(c, K::RX);
      layer(c, K::RZ);
      break;
    case 7:
    case 8: {
      const K ent = id == 7 ? K::CRZ : K::CRX;
      layer(c, K::RX);
      layer(c, K::RZ);
      pairs(c, ent, brick(n, 0));
      layer(c, K::RX);
      layer(c, K::RZ);
      pairs(c, ent, brick(n, 1));
      break;
    }
    case 9:
      layer(c, K::H);
      pairs(c, K::CZ, ladder(n));
      layer(c, K::RX);
      break;
    case 10:
      layer(c, K::RY);
      pairs(c, K::CZ, ladder(n));
      pairs(c, K::CZ, {{n - 1, 0}});
      layer(c, K::RY);
      break;
    case 11:
    case 12: {
      const K ent = id == 11 ? K::CX : K::CZ;
      layer(c, K::RY);
      layer(c, K::RZ);
      pairs(c, ent, brick(n, 0));
      layer(c, K::RY, inner);
      layer(c, K::RZ, inner);
      pairs(c, ent, brick(n, 1));
      break;
    }
    case 13:
    case 14:
    case 15: {
      const K ent = id == 13 ? K::CRZ : id == 14 ? K::CRX : K::CX;
      layer(c, K::RY);
      pairs(c, ent, ring_forward(n));
      layer(c, K::RY);
      pairs(c, ent, ring_backward(n));
      break;
    }
    case 16:
    case 17: {
      const K ent = id == 16 ? K::CRZ : K::CRX;
      layer(c, K::RX);
      layer(c, K::RZ);
      pairs(c, ent, brick(n, 0));
      pairs(c, ent, brick(n, 1));
      break;
    }
    case 18:
    case 19:
      layer(c, K::RX);
      layer(c, K::RZ);
      pairs(c, id == 18 ? K::CRZ : K::CRX, ring_forward(n));
      break;
    default:
      throw Error("unknown benchmark circuit id " + std::to_string(id));
  }
}

}  // namespace

Circuit benchmark_circuit(int id, int n, int reps) {
  if (id < 1 || id > 19) throw Error("unknown benchmark circuit id " + std::to_string(id));
  if (n < 2) throw Error("benchmark circuits need at least 2 qubits");
  if (reps < 1) throw Error("benchmark repetitions must be >= 1");
  Circuit c(n);
  for (int r = 0; r < reps; ++r) append_layer(c, id);
  return c;
}

std::vector<int> benchmark_ids() {
  std::vector<int> ids(19);
  std::iota(ids.begin(), ids.end(), 1);
  return ids;
}

}  // namespace pqc

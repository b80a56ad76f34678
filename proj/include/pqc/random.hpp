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
#include <initializer_list>
#include <random>

namespace pqc {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Counter-based seed splitting: the stream for (seed, c0, c1, ...) is a pure
/// function of its coordinates, so tasks can be seeded independently of the
/// order in which they run.
constexpr std::uint64_t derive_seed(std::uint64_t seed,
                                    std::initializer_list<std::uint64_t> counters) noexcept {
  std::uint64_t h = mix64(seed);
  for (std::uint64_t c : counters) {
    h = mix64(h ^ mix64(c + 0x632BE59BD9B4E019ULL));
  }
  return h;
}

inline Rng make_rng(std::uint64_t seed, std::initializer_list<std::uint64_t> counters) {
  return Rng(derive_seed(seed, counters));
}

// Stream tags used across modules.
namespace stream {
inline constexpr std::uint64_t kExpressibility = 0x45787072;  // "Expr"
inline constexpr std::uint64_t kTrainability = 0x54726169;    // "Trai"
inline constexpr std::uint64_t kEntanglement = 0x456E7467;    // "Entg"
inline constexpr std::uint64_t kInitialStates = 0x496E6974;   // "Init"
inline constexpr std::uint64_t kProposer = 0x50726F70;        // "Prop"
inline constexpr std::uint64_t kTrial = 0x54726C73;           // "Trls"
inline constexpr std::uint64_t kTestSet = 0x54657374;         // "Test"
inline constexpr std::uint64_t kVqe = 0x56514520;             // "VQE "
}  // namespace stream

}  // namespace pqc

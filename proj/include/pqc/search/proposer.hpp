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

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "pqc/random.hpp"

namespace pqc {

/// Product of categorical dimensions. `active(point)` flags the dimensions
/// that influence the objective for that point; inactive values are ignored
/// when fitting.
struct CategoricalSpace {
  std::vector<int> sizes;
  std::function<std::vector<bool>(const std::vector<int>&)> active;

  std::vector<bool> active_mask(const std::vector<int>& point) const;
};

struct Observation {
  std::vector<int> point;
  double value = 0;  ///< lower is better
};

class Proposer {
 public:
  virtual ~Proposer() = default;
  virtual std::vector<int> propose(const CategoricalSpace& space, const std::vector<Observation>& history,
                                   Rng& rng) = 0;
  virtual std::string name() const = 0;
};

/// Uniform independent draw per dimension.
class RandomProposer final : public Proposer {
 public:
  std::vector<int> propose(const CategoricalSpace& space, const std::vector<Observation>& history,
                           Rng& rng) override;
  std::string name() const override { return "random"; }
};

struct TpeSettings {
  int n_startup = 10;
  double gamma = 0.25;
  int n_candidates = 24;
  /// Weight of the uniform prior mixed into each categorical estimate.
  double prior_weight = 1.0;
};

/// Tree-structured Parzen estimator over categorical dimensions, modelled
/// independently: each dimension gets smoothed frequency estimates l from the
/// best gamma fraction of observations and g from the rest, and the candidate
/// drawn from l with the largest Σ log(l / g) over its active dimensions wins.
class TpeProposer final : public Proposer {
 public:
  explicit TpeProposer(TpeSettings settings = {});
  std::vector<int> propose(const CategoricalSpace& space, const std::vector<Observation>& history,
                           Rng& rng) override;
  std::string name() const override { return "tpe"; }

 private:
  TpeSettings settings_;
};

/// "random" or "tpe".
std::unique_ptr<Proposer> make_proposer(const std::string& name);

}  // namespace pqc

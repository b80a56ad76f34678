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

#include "pqc/search/proposer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "pqc/error.hpp"

namespace pqc {

std::vector<bool> CategoricalSpace::active_mask(const std::vector<int>& point) const {
  if (active) return active(point);
  return std::vector<bool>(sizes.size(), true);
}

std::vector<int> RandomProposer::propose(const CategoricalSpace& space, const std::vector<Observation>&, Rng& rng) {
  std::vector<int> point(space.sizes.size());
  for (std::size_t d = 0; d < point.size(); ++d)
    point[d] = std::uniform_int_distribution<int>(0, space.sizes[d] - 1)(rng);
  return point;
}

TpeProposer::TpeProposer(TpeSettings settings) : settings_(settings) {
  if (settings_.n_startup < 1 || !(settings_.gamma > 0 && settings_.gamma < 1) || settings_.n_candidates < 1 ||
      !(settings_.prior_weight > 0))
    throw Error("invalid TPE settings");
}

namespace {

using Table = std::vector<std::vector<double>>;

// Smoothed per-dimension category probabilities from the given observations.
Table fit(const CategoricalSpace& space, const std::vector<const Observation*>& obs, double prior) {
  Table t(space.sizes.size());
  std::vector<double> active_count(space.sizes.size(), 0.0);
  for (std::size_t d = 0; d < t.size(); ++d) t[d].assign(static_cast<std::size_t>(space.sizes[d]), 0.0);
  for (const Observation* o : obs) {
    const auto mask = space.active_mask(o->point);
    for (std::size_t d = 0; d < t.size(); ++d) {
      if (!mask[d]) continue;
      t[d][static_cast<std::size_t>(o->point[d])] += 1;
      active_count[d] += 1;
    }
  }
  for (std::size_t d = 0; d < t.size(); ++d) {
    const double k = static_cast<double>(space.sizes[d]);
    for (double& c : t[d]) c = (c + prior / k) / (active_count[d] + prior);
  }
  return t;
}

}  // namespace

std::vector<int> TpeProposer::propose(const CategoricalSpace& space, const std::vector<Observation>& history,
                                      Rng& rng) {
  if (static_cast<int>(history.size()) < settings_.n_startup) return RandomProposer{}.propose(space, history, rng);

  // Repeated proposals of one point would otherwise swamp the good density;
  // each distinct point counts once with its best value.
  std::map<std::vector<int>, const Observation*> unique;
  for (const auto& o : history) {
    auto [it, inserted] = unique.emplace(o.point, &o);
    if (!inserted && o.value < it->second->value) it->second = &o;
  }
  std::vector<const Observation*> sorted;
  sorted.reserve(unique.size());
  for (const auto& [point, o] : unique) sorted.push_back(o);
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const Observation* a, const Observation* b) { return a->value < b->value; });
  const auto n_good = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(settings_.gamma * static_cast<double>(sorted.size()))));
  const auto split = sorted.begin() + static_cast<std::ptrdiff_t>(n_good);
  const Table l = fit(space, {sorted.begin(), split}, settings_.prior_weight);
  const Table g = fit(space, {split, sorted.end()}, settings_.prior_weight);

  // Already observed points only win when every candidate has been seen.
  std::vector<int> best;
  std::pair<bool, double> best_key{false, -std::numeric_limits<double>::infinity()};
  for (int c = 0; c < settings_.n_candidates; ++c) {
    std::vector<int> point(space.sizes.size());
    for (std::size_t d = 0; d < point.size(); ++d) {
      std::discrete_distribution<int> pick(l[d].begin(), l[d].end());
      point[d] = pick(rng);
    }
    const auto mask = space.active_mask(point);
    double score = 0;
    for (std::size_t d = 0; d < point.size(); ++d) {
      if (!mask[d]) continue;
      const auto v = static_cast<std::size_t>(point[d]);
      score += std::log(l[d][v]) - std::log(g[d][v]);
    }
    const std::pair<bool, double> key{!unique.contains(point), score};
    if (best.empty() || key > best_key) {
      best_key = key;
      best = std::move(point);
    }
  }
  return best;
}

std::unique_ptr<Proposer> make_proposer(const std::string& name) {
  if (name == "random") return std::make_unique<RandomProposer>();
  if (name == "tpe") return std::make_unique<TpeProposer>();
  throw Error("unknown proposer '" + name + "' (expected random or tpe)");
}

}  // namespace pqc

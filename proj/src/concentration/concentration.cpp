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

#include "pqc/concentration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <numeric>
#include <string>

#include "pqc/error.hpp"
#include "pqc/random.hpp"

namespace pqc {

namespace {

constexpr double kAlmostSureSlack = 1e-12;

void check_range_and_delta(double delta, double range) {
  if (!(delta > 0 && delta < 1)) throw Error("delta must lie in (0, 1)");
  if (!(range > 0)) throw Error("range R must be positive");
}

}  // namespace

std::vector<double> clip(std::span<const double> values, double lower, double upper) {
  if (!(lower < upper)) throw Error("clip: need L < U");
  std::vector<double> out(values.size());
  std::transform(values.begin(), values.end(), out.begin(),
                 [&](double x) { return std::min(upper, std::max(lower, x)); });
  return out;
}

double sample_variance(std::span<const double> x) {
  if (x.size() < 3) throw Error("sample_variance needs m >= 3, got " + std::to_string(x.size()));
  const double m = static_cast<double>(x.size());
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / m;
  double ss = 0;
  for (double v : x) ss += (v - mean) * (v - mean);
  return ss / (m - 1);
}

double concentration_epsilon(std::int64_t m, double delta, double range) {
  if (m < 3) throw Error("concentration_epsilon needs m >= 3");
  check_range_and_delta(delta, range);
  return std::sqrt(2 * range * range * std::log(2 / delta) / static_cast<double>(m - 1));
}

std::int64_t required_samples(double epsilon, double delta, double range) {
  if (!(epsilon > 0)) throw Error("epsilon must be positive");
  check_range_and_delta(delta, range);
  const double x = 2 * range * range * std::log(2 / delta) / (epsilon * epsilon);
  // x is m - 1 at equality; shave rounding noise before the ceiling.
  auto m = static_cast<std::int64_t>(std::ceil(x * (1 - 1e-12))) + 1;
  while (m > 3 && concentration_epsilon(m - 1, delta, range) <= epsilon) --m;
  while (concentration_epsilon(std::max<std::int64_t>(m, 3), delta, range) > epsilon) ++m;
  return std::max<std::int64_t>(m, 3);
}

GradientSample::GradientSample(std::vector<double> values, ClipBounds bounds)
    : values_(std::move(values)), bounds_(bounds) {
  if (!(bounds_.lower < bounds_.upper)) throw Error("gradient sample bounds need L < U");
  if (values_.size() < 3) throw Error("gradient sample needs m >= 3");
  for (double v : values_) {
    if (!(v >= bounds_.lower && v <= bounds_.upper)) throw Error("gradient sample value outside [L, U]");
  }
}

VarianceEstimate estimate_variance(const GradientSample& sample, double delta) {
  const double r = sample.bounds().range();
  const double s2 = sample_variance(sample.values());
  return {s2, concentration_epsilon(sample.size(), delta, r), delta,
          static_cast<double>(sample.size()) / (r * r) * s2};
}

std::vector<double> influences(const GradientSample& sample) {
  const auto& x = sample.values();
  const double m = static_cast<double>(x.size());
  const double r = sample.bounds().range();
  const double total = std::accumulate(x.begin(), x.end(), 0.0);
  std::vector<double> delta(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double loo_mean = (total - x[k]) / (m - 1);
    const double d = x[k] - loo_mean;
    delta[k] = d * d / (r * r);
  }
  return delta;
}

SelfBoundingCheck self_bounding_check(const GradientSample& sample) {
  const double m = static_cast<double>(sample.size());
  const double r = sample.bounds().range();
  const auto delta = influences(sample);
  SelfBoundingCheck out;
  out.z = m / (r * r) * sample_variance(sample.values());
  for (double d : delta) {
    out.max_delta = std::max(out.max_delta, d);
    out.sum_sq_delta += d * d;
  }
  out.ok = out.max_delta <= 1 + kAlmostSureSlack && out.sum_sq_delta <= m / (m - 1) * out.z + kAlmostSureSlack;
  return out;
}

std::string_view to_string(VarianceBranch branch) noexcept {
  return branch == VarianceBranch::VarianceBounded ? "VarianceBounded" : "NoBarrenPlateau";
}

VarianceBranch variance_branch(double s2, double expected_s2, double epsilon) {
  if (!(s2 >= 0 && s2 <= 1) || !(expected_s2 >= 0 && expected_s2 <= 1)) {
    throw Error("variance_branch: variances must lie in [0, 1]");
  }
  if (!(epsilon >= 0)) throw Error("variance_branch: epsilon must be non-negative");
  return std::sqrt(expected_s2) + std::sqrt(s2) <= 1 ? VarianceBranch::VarianceBounded
                                                      : VarianceBranch::NoBarrenPlateau;
}

std::string_view to_string(SampleLaw law) noexcept {
  switch (law) {
    case SampleLaw::Uniform:
      return "uniform";
    case SampleLaw::Rademacher:
      return "rademacher";
    case SampleLaw::SkewedBernoulli:
      return "skewed-bernoulli";
  }
  return "?";
}

double population_variance(SampleLaw law) noexcept {
  switch (law) {
    case SampleLaw::Uniform:
      return 1.0 / 3.0;
    case SampleLaw::Rademacher:
      return 1.0;
    case SampleLaw::SkewedBernoulli:
      return 4 * 0.1 * 0.9;
  }
  return 0;
}

namespace {

void draw(SampleLaw law, Rng& rng, std::vector<double>& out) {
  std::uniform_real_distribution<double> uniform(-1, 1);
  std::bernoulli_distribution fair(0.5), skewed(0.1);
  for (double& v : out) {
    switch (law) {
      case SampleLaw::Uniform:
        v = uniform(rng);
        break;
      case SampleLaw::Rademacher:
        v = fair(rng) ? 1.0 : -1.0;
        break;
      case SampleLaw::SkewedBernoulli:
        v = skewed(rng) ? 1.0 : -1.0;
        break;
    }
  }
}

}  // namespace

CoverageReport coverage_suite(SampleLaw law, int batches, int m, double delta, std::uint64_t seed) {
  if (batches < 1) throw Error("coverage_suite needs at least one batch");
  CoverageReport out{law, batches, m, delta, concentration_epsilon(m, delta, 2.0), 0, false};
  const double sigma = std::sqrt(population_variance(law));
  std::vector<double> x(static_cast<std::size_t>(m));
  int covered = 0;
  for (int b = 0; b < batches; ++b) {
    Rng rng = make_rng(seed, {static_cast<std::uint64_t>(law), static_cast<std::uint64_t>(b)});
    draw(law, rng, x);
    if (std::abs(std::sqrt(sample_variance(x)) - sigma) <= out.epsilon) ++covered;
  }
  out.coverage = static_cast<double>(covered) / batches;
  out.pass = out.coverage >= 1 - delta;
  return out;
}

SelfBoundingSuiteReport self_bounding_suite(int cases, int m_min, int m_max, std::uint64_t seed) {
  if (cases < 1 || m_min < 3 || m_max < m_min) throw Error("self_bounding_suite: need cases >= 1 and 3 <= m_min <= m_max");
  SelfBoundingSuiteReport out;
  out.cases = cases;
  out.worst_sum_margin = -std::numeric_limits<double>::infinity();
  for (int c = 0; c < cases; ++c) {
    Rng rng = make_rng(seed, {static_cast<std::uint64_t>(c)});
    const int m = std::uniform_int_distribution<int>(m_min, m_max)(rng);
    std::vector<double> x(static_cast<std::size_t>(m));
    if (c % 2 == 0) {
      draw(SampleLaw::Uniform, rng, x);
    } else {
      // Half balanced boundary patterns, half a single minority entry.
      std::bernoulli_distribution coin(c % 4 == 1 ? 0.5 : 1.0 / m);
      for (double& v : x) v = coin(rng) ? 1.0 : -1.0;
    }
    const auto check = self_bounding_check(GradientSample(x, {}));
    const double md = static_cast<double>(m);
    out.worst_max_delta = std::max(out.worst_max_delta, check.max_delta);
    out.worst_sum_margin = std::max(out.worst_sum_margin, check.sum_sq_delta - md / (md - 1) * check.z);
    if (!check.ok) ++out.failures;
  }
  out.pass = out.failures == 0;
  return out;
}

}  // namespace pqc

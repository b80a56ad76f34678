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
#include <span>
#include <string_view>
#include <vector>

namespace pqc {

/// Element-wise clipping interval [L, U]; R = U - L.
struct ClipBounds {
  double lower = -1.0;
  double upper = 1.0;

  double range() const noexcept { return upper - lower; }
};

/// min(U, max(L, x)) element-wise. Throws if L >= U.
std::vector<double> clip(std::span<const double> values, double lower, double upper);
inline std::vector<double> clip(std::span<const double> values, ClipBounds b) {
  return clip(values, b.lower, b.upper);
}

/// Unbiased sample variance (1/(m-1)) Σ (x_i - mean)^2. Requires m >= 3.
double sample_variance(std::span<const double> x);

/// Half-width on the standard deviation: sqrt(2 R^2 ln(2/δ) / (m-1)).
double concentration_epsilon(std::int64_t m, double delta, double range);

/// Smallest m >= 3 with concentration_epsilon(m, δ, R) <= ε.
std::int64_t required_samples(double epsilon, double delta, double range);

/// Clipped gradient draws X_1..X_m in [L, U], m >= 3.
class GradientSample {
 public:
  GradientSample(std::vector<double> values, ClipBounds bounds);

  const std::vector<double>& values() const noexcept { return values_; }
  ClipBounds bounds() const noexcept { return bounds_; }
  std::int64_t size() const noexcept { return static_cast<std::int64_t>(values_.size()); }

 private:
  std::vector<double> values_;
  ClipBounds bounds_;
};

struct VarianceEstimate {
  double s2 = 0;       ///< unbiased sample variance
  double epsilon = 0;  ///< concentration half-width on sqrt(s2)
  double delta = 0;    ///< failure probability
  double z = 0;        ///< (m / R^2) s2
};

VarianceEstimate estimate_variance(const GradientSample& sample, double delta);

/// Single-coordinate influences of Z(X) = (m/R^2) s^2:
/// Δ_k = (X_k - leave-one-out mean)^2 / R^2.
std::vector<double> influences(const GradientSample& sample);

struct SelfBoundingCheck {
  double max_delta = 0;
  double sum_sq_delta = 0;
  double z = 0;
  bool ok = false;
};

/// Checks max_k Δ_k <= 1 and Σ Δ_k^2 <= (m/(m-1)) Z, each with 1e-12 slack.
SelfBoundingCheck self_bounding_check(const GradientSample& sample);

enum class VarianceBranch { VarianceBounded, NoBarrenPlateau };

std::string_view to_string(VarianceBranch branch) noexcept;

/// For s2, E[s2] in [0,1] with |sqrt(s2) - sqrt(E[s2])| <= ε: VarianceBounded
/// when sqrt(E[s2]) + sqrt(s2) <= 1 (then |s2 - E[s2]| <= ε), otherwise
/// NoBarrenPlateau (then E[s2] > ((1 - ε)/2)^2).
VarianceBranch variance_branch(double s2, double expected_s2, double epsilon);

/// Sampling laws on [-1, 1] used by the verification suites.
enum class SampleLaw { Uniform, Rademacher, SkewedBernoulli };

std::string_view to_string(SampleLaw law) noexcept;
/// Population variance of the law (1/3, 1, and 0.36 for P(+1) = 0.1).
double population_variance(SampleLaw law) noexcept;

struct CoverageReport {
  SampleLaw law = SampleLaw::Uniform;
  int batches = 0;
  int m = 0;
  double delta = 0;
  double epsilon = 0;
  double coverage = 0;  ///< fraction with |sqrt(s2) - sqrt(Var)| <= epsilon
  bool pass = false;    ///< coverage >= 1 - delta
};

/// Draws `batches` i.i.d. samples of size m and measures how often the
/// concentration interval contains the population standard deviation.
CoverageReport coverage_suite(SampleLaw law, int batches, int m, double delta, std::uint64_t seed);

struct SelfBoundingSuiteReport {
  int cases = 0;
  int failures = 0;
  double worst_max_delta = 0;
  /// Largest Σ Δ_k^2 - (m/(m-1)) Z seen; <= 0 up to rounding when the bound holds.
  double worst_sum_margin = 0;
  bool pass = false;
};

/// Random bounded samples on [-1, 1] with m uniform in [m_min, m_max]:
/// alternating uniform draws and adversarial boundary patterns (values in
/// {-1, 1}, with one or many minority entries).
SelfBoundingSuiteReport self_bounding_suite(int cases, int m_min, int m_max, std::uint64_t seed);

}  // namespace pqc

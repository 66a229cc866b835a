// Copyright 2026 The qaoa1 Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "qaoa1/analytic.hpp"
#include "qaoa1/ising.hpp"

namespace qaoa1 {

struct SamplingPlan {
  double omega_max = 0.0;
  double nu_max = 0.0;
  double delta_gamma = 1.0;
  std::optional<double> period;
  std::optional<std::size_t> num_samples;
};

/// Largest angular frequency in gamma of the level-1 landscape at any fixed beta.
double max_angular_frequency(const IsingModel& model, const NeighborhoodIndex& index);
double max_angular_frequency(const IsingModel& model);

SamplingPlan sampling_plan(const IsingModel& model, const NeighborhoodIndex& index);
SamplingPlan sampling_plan(const IsingModel& model);

/// Spacing of the model's plan divided by the spacing after folding the fields
/// into an ancilla. Throws InputError for field-free models.
double sampling_ratio_after_field_elimination(const IsingModel& model);

/// Minimises over beta at one gamma: returns (constant-free value, beta).
using BetaOptimizer = std::function<std::pair<double, double>(double gamma)>;

struct BetaPolicy {
  enum class Kind { fixed, analytic_optimal };
  Kind kind = Kind::fixed;
  double beta = 0.0;
  BetaOptimizer optimizer;

  static BetaPolicy fixed(double beta) { return {Kind::fixed, beta, {}}; }
  static BetaPolicy analytic_optimal(BetaOptimizer optimizer) {
    return {Kind::analytic_optimal, 0.0, std::move(optimizer)};
  }
};

/// Uniform samples gamma_k = start + k * step. Values include the model constant.
/// `beta_star` is filled only under the analytic-optimal policy.
struct LandscapeSamples {
  std::vector<double> gammas;
  std::vector<double> values;
  std::vector<double> beta_star;
  SamplingPlan plan;
  double start = 0.0;
  double step = 0.0;
  bool full_period = false;
};

struct SampleRange {
  double start = 0.0;
  double stop = 0.0;
};

/// Samples one period at the plan's count, or `count` points when given. Models
/// without a period need an explicit range.
LandscapeSamples sample_landscape(const IsingModel& model, const NeighborhoodIndex& index,
                                  const SamplingPlan& plan, const BetaPolicy& policy,
                                  std::optional<std::size_t> count = std::nullopt,
                                  std::optional<SampleRange> range = std::nullopt);

/// Writes `# key=value` plan lines followed by `gamma,value[,beta_star]` rows.
void write_landscape_csv(std::ostream& out, const LandscapeSamples& samples);

/// Trigonometric interpolant through samples covering one period.
class TrigInterpolant {
 public:
  TrigInterpolant(double start, double period, std::vector<double> cosines,
                  std::vector<double> sines);
  double operator()(double gamma) const;
  double period() const noexcept { return period_; }
  std::size_t harmonics() const noexcept { return cosines_.empty() ? 0 : cosines_.size() - 1; }

 private:
  double start_;
  double period_;
  std::vector<double> cosines_;
  std::vector<double> sines_;
};

/// Throws InputError unless the samples cover exactly one period at a fixed beta.
TrigInterpolant reconstruct(const LandscapeSamples& samples);

/// lambda_max - lambda_min of the constant-free energy (exhaustive, n <= 24).
double hp_spectrum_range(const IsingModel& model);

/// Largest angular frequency whose DFT magnitude exceeds 1e-8 of the total
/// spectral mass, for uniform samples over one period.
double empirical_bandwidth(const LandscapeSamples& samples);

}  // namespace qaoa1

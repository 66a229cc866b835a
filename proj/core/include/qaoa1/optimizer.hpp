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

#include <cstddef>
#include <string>
#include <vector>

#include "qaoa1/analytic.hpp"
#include "qaoa1/ising.hpp"
#include "qaoa1/spectral.hpp"

namespace qaoa1 {

enum class FieldMode { automatic, field_free, with_fields };

struct UnivariateValue {
  double value = 0.0;
  double beta_star = 0.0;
};

/// beta* in [0, pi) minimising a*sin(4b) - b*sin^2(2b); 0 when both vanish.
double optimal_beta_field_free(const CoefficientTriple& coeffs);

/// -sqrt(a^2 + b^2/4) - b/2, the value at optimal_beta_field_free.
double optimal_value_field_free(const CoefficientTriple& coeffs);

/// Stationary betas of a*sin(2b) + b*sin(4b) + c*sin^2(2b): +-acos(x)/2 for
/// the real roots x in [-1, 1] of the quartic in x = cos(2b). At most 8 values;
/// {0} when all coefficients vanish.
std::vector<double> beta_candidates_with_fields(const CoefficientTriple& coeffs);

/// Minimum over beta of the constant-free expectation at `gamma`.
UnivariateValue univariate_cost(const IsingModel& model, const NeighborhoodIndex& index,
                                double gamma, FieldMode mode = FieldMode::automatic);

enum class OptimizationMethod { subdivision, gradient_near_zero, line_search, closed_form };
std::string to_string(OptimizationMethod method);

struct OptimizationResult {
  double gamma_star = 0.0;
  double beta_star = 0.0;
  double value = 0.0;  // constant-free
  std::size_t evaluations = 0;
  OptimizationMethod method = OptimizationMethod::line_search;
};

/// Interval layout of one subdivision round, recorded before pruning.
struct SubdivisionRound {
  double width = 0.0;
  double best_q = 0.0;
  std::vector<double> lower;  // left ends of the evaluated intervals
  std::vector<bool> kept;
};

struct SubdivisionLog {
  std::vector<SubdivisionRound> rounds;
};

/// Branch-and-prune maximisation of value^2 over one period. Requires integral
/// weights and epsilon > 0.
OptimizationResult subdivision_optimize(const IsingModel& model, const NeighborhoodIndex& index,
                                        double epsilon, SubdivisionLog* log = nullptr);

/// Descent from gamma = delta_gamma / 2 to the first local minimum on gamma >= 0,
/// with every step shorter than delta_gamma.
OptimizationResult gradient_descent_near_zero(const IsingModel& model,
                                              const NeighborhoodIndex& index);

/// Grid search at the plan's sample count (`samples` == 0) or at `samples`
/// points in [0, pi); optionally followed by a bounded local descent.
OptimizationResult line_search(const IsingModel& model, const NeighborhoodIndex& index,
                               bool refine, std::size_t samples = 0);

/// Moments and structure of a (D+1)-regular weighted ensemble: |Fbar| = a D^lambda
/// non-triangle neighbours and |F| = b D^mu triangle neighbours per edge.
struct MomentSummary {
  double ej = 0.0;
  double ej2 = 1.0;
  double degree = 1.0;
  double a = 1.0;
  double b = 0.0;
  double lambda = 1.0;
  double mu = 1.0;
};

double eta(double theta, const MomentSummary& m);
double zeta(double theta1, double theta2, const MomentSummary& m);

/// Leading-order optimal gamma for the ensemble.
double predicted_gamma_star(const MomentSummary& m);

/// Leading-order scaled expected cost at gamma = alpha / sqrt(D).
double scaled_expected_cost(double alpha, double beta, const MomentSummary& m);

}  // namespace qaoa1

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
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qaoa1/analytic.hpp"
#include "qaoa1/ising.hpp"
#include "qaoa1/optimizer.hpp"
#include "qaoa1/oracle.hpp"
#include "qaoa1/spectral.hpp"

namespace qaoa1 {

/// <Z_i> per vertex and <Z_u Z_v> per edge (edge ids of the model).
struct Correlators {
  std::vector<double> single;
  std::vector<double> pair;
};

Correlators correlators(const IsingModel& model, const NeighborhoodIndex& index,
                        const QaoaAngles& angles);

enum class TunerMethod { gradient_near_zero, line_search, subdivision };
std::string to_string(TunerMethod method);
TunerMethod parse_tuner_method(const std::string& text);

/// `native` tunes with the with-fields expressions; `eliminate` folds the
/// fields into an ancilla spin first and runs on the field-free model.
enum class FieldHandling { native, eliminate };
std::string to_string(FieldHandling handling);

struct TunerConfig {
  TunerMethod method = TunerMethod::gradient_near_zero;
  std::size_t line_samples = 0;  // 0: Nyquist count of the sampling plan
  bool refine = true;
  double epsilon = 1e-6;
  FieldHandling fields = FieldHandling::native;
};

OptimizationResult tune(const IsingModel& model, const NeighborhoodIndex& index,
                        const TunerConfig& config);

enum class StepKind { assign, substitute };

/// assign: s_u = sign. substitute: s_u = sign * s_v, u eliminated, v kept.
struct ReductionStep {
  StepKind kind = StepKind::assign;
  Vertex u = 0;
  Vertex v = 0;
  int sign = 1;
  std::size_t step_index = 0;
  double magnitude = 0.0;
  double gamma = 0.0;
  double beta = 0.0;
};

struct ReductionTrace {
  std::size_t original_size = 0;
  std::vector<ReductionStep> steps;
  double constant_accumulated = 0.0;  // constant of the reduced model
  std::vector<Vertex> survivors;      // reduced-model vertex i is survivors[i]
  IsingModel final_model;
  GroundTruth final_truth;
};

struct SolverReport {
  std::string method;
  TunerConfig tuner;
  std::size_t steps = 0;
  std::uint64_t seed = 0;
  double gamma_star = 0.0;  // angles tuned on the input model
  double beta_star = 0.0;
  double qaoa_expectation = 0.0;  // constant-free <H> at those angles
  double energy = 0.0;            // constant-free energy of the returned assignment
  double constant = 0.0;
  std::optional<double> approximation_ratio;
  std::optional<double> qaoa_ratio;
  std::size_t evaluations = 0;
  double wall_time_ms = 0.0;
  SamplingPlan plan;
  std::vector<std::string> warnings;
};

struct SolverOutcome {
  SpinAssignment assignment;
  ReductionTrace trace;
  SolverReport report;
};

/// Recursive rounding on the strongest single or pair correlation per step.
/// The recursion is deterministic; `seed` is echoed in the report.
SolverOutcome rqaoa(const IsingModel& model, std::size_t steps, const TunerConfig& tuner,
                    std::uint64_t seed = 0);

/// Rounding on single-spin correlations only.
SolverOutcome iter_qaoa(const IsingModel& model, std::size_t steps, const TunerConfig& tuner,
                        std::uint64_t seed = 0);

/// Replays the trace in reverse; `remainder` assigns the reduced model's spins.
SpinAssignment backtrack(const ReductionTrace& trace, const SpinAssignment& remainder);

}  // namespace qaoa1

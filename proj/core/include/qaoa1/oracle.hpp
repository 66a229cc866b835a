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

#include <complex>
#include <cstdint>
#include <vector>

#include "qaoa1/analytic.hpp"
#include "qaoa1/ising.hpp"

namespace qaoa1 {

inline constexpr std::size_t kMaxStatevectorQubits = 20;
inline constexpr std::size_t kMaxBruteForceSpins = 24;

/// Exact extremes of the constant-free energy.
struct GroundTruth {
  double e_min = 0.0;
  double e_max = 0.0;
  SpinAssignment argmin;
  std::uint64_t degeneracy = 0;
};

/// Constant-free energy of every basis state; bit i of the index set means
/// spin i is -1.
std::vector<double> cost_table(const IsingModel& model);

/// e^{-i beta sum X} e^{-i gamma H} applied to the uniform superposition.
std::vector<std::complex<double>> qaoa_state(const IsingModel& model, const QaoaAngles& angles);

/// Constant-free <H> of the level-1 state.
double statevector_expectation(const IsingModel& model, const QaoaAngles& angles);
/// <Z_i> for every spin.
std::vector<double> statevector_z(const IsingModel& model, const QaoaAngles& angles);
/// <Z_u Z_v>.
double statevector_zz(const IsingModel& model, const QaoaAngles& angles, Vertex u, Vertex v);

/// Exhaustive search over all assignments (half of them for field-free models).
GroundTruth brute_force(const IsingModel& model);

/// achieved / e_min: 1 at the optimum, 0 at the random-guess level.
double approximation_ratio(double achieved, const GroundTruth& truth);

}  // namespace qaoa1

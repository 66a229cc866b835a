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

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "qaoa1/analytic.hpp"
#include "qaoa1/ising.hpp"

namespace qaoa1::testing {

/// ER(p) model with integer couplings in [lo, hi] \ {0}; fields drawn the same
/// way when `fields` is set.
IsingModel random_integer_model(std::size_t n, double p, int lo, int hi, bool fields,
                                std::mt19937_64& rng);

/// Sum over ordered pairs of a dense symmetric matrix holding half of each
/// stored coupling, plus fields and constant.
double double_sum_energy(const IsingModel& model, const std::vector<int>& spins);

/// Spins for the bitmask `mask`: bit i set means s_i = +1.
std::vector<int> spins_from_mask(std::uint64_t mask, std::size_t n);

struct Extremes {
  double min = 0.0;
  double max = 0.0;
  std::uint64_t count_min = 0;
};

/// Plain counting enumeration of the constant-free energy.
Extremes enumerate_extremes(const IsingModel& model);

/// Least-squares coefficients of f over `basis` sampled at `betas`.
std::vector<double> fit_basis(const std::function<double(double)>& f,
                              const std::vector<std::function<double(double)>>& basis,
                              const std::vector<double>& betas);

/// Minimum of f over `points` equispaced betas in [0, pi).
double dense_beta_min(const std::function<double(double)>& f, std::size_t points);

struct DenseOptimum {
  double gamma = 0.0;
  double value = 0.0;
};

/// Global minimum of g on [lo, hi): `points` grid samples followed by golden
/// section refinement around the best few cells.
DenseOptimum dense_minimize(const std::function<double(double)>& g, double lo, double hi,
                            std::size_t points);

/// Univariate cost minimised densely over gamma in one period.
DenseOptimum dense_line_search(const IsingModel& model, const NeighborhoodIndex& index,
                               std::size_t points);

}  // namespace qaoa1::testing

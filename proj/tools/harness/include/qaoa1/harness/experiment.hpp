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
#include <optional>
#include <string>
#include <vector>

#include "qaoa1/harness/json_io.hpp"
#include "qaoa1/ising.hpp"
#include "qaoa1/recursive.hpp"

namespace qaoa1::harness {

enum class GraphFamily { erdos_renyi, regular, bipartite };
std::string to_string(GraphFamily family);
GraphFamily parse_graph_family(const std::string& text);

struct EnsembleSpec {
  GraphFamily family = GraphFamily::erdos_renyi;
  std::vector<std::size_t> sizes;
  double p = 0.5;
  std::size_t degree = 3;
  WeightDist weights = GaussianRounded{0.0, 100.0};
  std::optional<WeightDist> fields;
  std::size_t instances = 10;
  std::uint64_t seed_base = 0;
  bool solvers = false;
  std::size_t remainder = 8;  // spins left for exhaustive search by the solvers
  TunerConfig tuner;
};

/// Seed of instance `index` at size `n`; fields use seed + 1.
std::uint64_t instance_seed(std::uint64_t base, std::size_t n, std::size_t index);

IsingModel make_instance(const EnsembleSpec& spec, std::size_t n, std::uint64_t seed);

struct InstanceRow {
  std::size_t n = 0;
  std::size_t index = 0;
  std::uint64_t seed = 0;
  std::size_t edges = 0;
  double delta_gamma = 0.0;
  OptimizationResult gradient;
  OptimizationResult line;
  bool match = true;
  std::optional<double> qaoa_ratio;
  std::optional<double> rqaoa_ratio;
  std::optional<double> iter_ratio;
};

struct Summary {
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  std::size_t count = 0;
};

struct SizeAggregate {
  std::size_t n = 0;
  std::size_t instances = 0;
  double adversarial_fraction = 0.0;
  std::optional<Summary> qaoa_ratio;
  std::optional<Summary> rqaoa_ratio;
  std::optional<Summary> iter_ratio;
};

struct ExperimentResult {
  EnsembleSpec spec;
  std::vector<InstanceRow> rows;
  std::vector<SizeAggregate> aggregates;
};

/// Gradient from near zero versus full line search (and optionally the
/// recursive solvers) on every instance. Rows are ordered by (size, index)
/// whatever the worker count.
ExperimentResult run_experiment(const EnsembleSpec& spec, std::size_t workers);

/// |gamma_a - gamma_b| <= delta_gamma / 2.
bool same_optimum(double gamma_a, double gamma_b, double delta_gamma);

/// Hardware concurrency capped by QAOA1_THREADS when set.
std::size_t worker_count();

/// Runs task(i) for i in [0, count) on `workers` threads.
void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& task);

Json to_json(const EnsembleSpec& spec);
Json to_json(const ExperimentResult& result);

}  // namespace qaoa1::harness

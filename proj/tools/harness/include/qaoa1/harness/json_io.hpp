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

#include <json.hpp>
#include <string>

#include "qaoa1/ising.hpp"
#include "qaoa1/optimizer.hpp"
#include "qaoa1/recursive.hpp"
#include "qaoa1/spectral.hpp"

namespace qaoa1::harness {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Serialises with every float printed to 17 significant digits.
std::string dump(const Json& value, int indent = 2);

Json to_json(const IsingModel& model);
IsingModel model_from_json(const Json& value);
Json to_json(const WeightClass& wc);
Json to_json(const SamplingPlan& plan);
Json to_json(const OptimizationResult& result);
Json to_json(const TunerConfig& config);
Json to_json(const ReductionTrace& trace);
Json to_json(const SolverReport& report);
Json to_json(const SpinAssignment& s);

/// n, |E|, weight class and (optionally) the generating seed.
Json instance_descriptor(const IsingModel& model);

}  // namespace qaoa1::harness

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

#include "qaoa1/harness/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

#include "qaoa1/errors.hpp"
#include "qaoa1/optimizer.hpp"
#include "qaoa1/oracle.hpp"

namespace qaoa1::harness {

namespace {

Summary summarise(const std::vector<double>& values) {
  Summary s;
  s.count = values.size();
  s.min = *std::min_element(values.begin(), values.end());
  s.max = *std::max_element(values.begin(), values.end());
  double total = 0.0;
  for (double v : values) total += v;
  s.mean = total / static_cast<double>(values.size());
  return s;
}

Json to_json(const Summary& s) {
  return Json{{"mean", s.mean}, {"min", s.min}, {"max", s.max}, {"count", s.count}};
}

void put_optional(Json& out, const char* key, const std::optional<double>& v) {
  if (v) out[key] = *v;
}

InstanceRow run_instance(const EnsembleSpec& spec, std::size_t n, std::size_t index) {
  InstanceRow row;
  row.n = n;
  row.index = index;
  row.seed = instance_seed(spec.seed_base, n, index);
  const IsingModel model = make_instance(spec, n, row.seed);
  const NeighborhoodIndex idx = build_index(model);
  row.edges = model.edges().size();
  row.delta_gamma = sampling_plan(model, idx).delta_gamma;
  row.gradient = gradient_descent_near_zero(model, idx);
  row.line = line_search(model, idx, true);
  // Degenerate optima (equal depth at different gamma) still count as global.
  row.match = same_optimum(row.gradient.gamma_star, row.line.gamma_star, row.delta_gamma) ||
              std::abs(row.gradient.value - row.line.value) <=
                  1e-9 * std::max(1.0, std::abs(row.line.value));
  if (spec.solvers && n <= kMaxBruteForceSpins && !model.edges().empty()) {
    const std::size_t steps = n > spec.remainder ? n - spec.remainder : 0;
    const SolverOutcome r = rqaoa(model, steps, spec.tuner, row.seed);
    row.rqaoa_ratio = r.report.approximation_ratio;
    row.qaoa_ratio = r.report.qaoa_ratio;
    row.iter_ratio = iter_qaoa(model, steps, spec.tuner, row.seed).report.approximation_ratio;
  }
  return row;
}

}  // namespace

std::string to_string(GraphFamily family) {
  switch (family) {
    case GraphFamily::erdos_renyi: return "er";
    case GraphFamily::regular: return "regular";
    case GraphFamily::bipartite: return "bipartite";
  }
  return "er";
}

GraphFamily parse_graph_family(const std::string& text) {
  if (text == "er" || text == "erdos_renyi") return GraphFamily::erdos_renyi;
  if (text == "regular") return GraphFamily::regular;
  if (text == "bipartite") return GraphFamily::bipartite;
  throw InputError("unknown graph family '" + text + "' (expected er, regular or bipartite)");
}

std::uint64_t instance_seed(std::uint64_t base, std::size_t n, std::size_t index) {
  return base * 1'000'003ULL + static_cast<std::uint64_t>(n) * 10'007ULL + 2 * index;
}

IsingModel make_instance(const EnsembleSpec& spec, std::size_t n, std::uint64_t seed) {
  IsingModel model;
  switch (spec.family) {
    case GraphFamily::erdos_renyi: model = generate_erdos_renyi(n, spec.p, spec.weights, seed); break;
    case GraphFamily::regular: model = generate_d_regular(n, spec.degree, spec.weights, seed); break;
    case GraphFamily::bipartite:
      if (n % 2 != 0) throw InputError("bipartite instances need an even vertex count");
      model = generate_bipartite_regular(n / 2, spec.degree, spec.weights, seed);
      break;
  }
  if (spec.fields) model = with_random_fields(model, *spec.fields, seed + 1);
  return model;
}

bool same_optimum(double gamma_a, double gamma_b, double delta_gamma) {
  return std::abs(gamma_a - gamma_b) <= 0.5 * delta_gamma;
}

std::size_t worker_count() {
  std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("QAOA1_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap > 0) workers = std::min(workers, static_cast<std::size_t>(cap));
  }
  return workers;
}

void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& task) {
  workers = std::max<std::size_t>(1, std::min(workers, count));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          task(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

ExperimentResult run_experiment(const EnsembleSpec& spec, std::size_t workers) {
  if (spec.sizes.empty()) throw InputError("experiment needs at least one size");
  if (spec.instances == 0) throw InputError("experiment needs at least one instance");
  ExperimentResult result;
  result.spec = spec;
  const std::size_t total = spec.sizes.size() * spec.instances;
  result.rows.resize(total);
  parallel_for(total, workers, [&](std::size_t job) {
    const std::size_t n = spec.sizes[job / spec.instances];
    result.rows[job] = run_instance(spec, n, job % spec.instances);
  });

  for (std::size_t s = 0; s < spec.sizes.size(); ++s) {
    SizeAggregate agg;
    agg.n = spec.sizes[s];
    agg.instances = spec.instances;
    std::size_t mismatches = 0;
    std::vector<double> qaoa, rq, iter;
    for (std::size_t i = 0; i < spec.instances; ++i) {
      const InstanceRow& row = result.rows[s * spec.instances + i];
      if (!row.match) ++mismatches;
      if (row.qaoa_ratio) qaoa.push_back(*row.qaoa_ratio);
      if (row.rqaoa_ratio) rq.push_back(*row.rqaoa_ratio);
      if (row.iter_ratio) iter.push_back(*row.iter_ratio);
    }
    agg.adversarial_fraction = static_cast<double>(mismatches) / static_cast<double>(spec.instances);
    if (!qaoa.empty()) agg.qaoa_ratio = summarise(qaoa);
    if (!rq.empty()) agg.rqaoa_ratio = summarise(rq);
    if (!iter.empty()) agg.iter_ratio = summarise(iter);
    result.aggregates.push_back(agg);
  }
  return result;
}

Json to_json(const EnsembleSpec& spec) {
  Json out{{"family", to_string(spec.family)}, {"sizes", spec.sizes}};
  if (spec.family == GraphFamily::erdos_renyi) {
    out["p"] = spec.p;
  } else {
    out["degree"] = spec.degree;
  }
  out["weights"] = to_string(spec.weights);
  out["fields"] = spec.fields ? Json(to_string(*spec.fields)) : Json(nullptr);
  out["instances"] = spec.instances;
  out["seed_base"] = spec.seed_base;
  out["solvers"] = spec.solvers;
  if (spec.solvers) {
    out["remainder"] = spec.remainder;
    out["tuner"] = harness::to_json(spec.tuner);
  }
  return out;
}

Json to_json(const ExperimentResult& result) {
  Json rows = Json::array();
  for (const InstanceRow& row : result.rows) {
    Json r{{"n", row.n},
           {"index", row.index},
           {"seed", row.seed},
           {"edges", row.edges},
           {"delta_gamma", row.delta_gamma},
           {"gradient", Json{{"gamma_star", row.gradient.gamma_star},
                             {"value", row.gradient.value},
                             {"evaluations", row.gradient.evaluations}}},
           {"line_search", Json{{"gamma_star", row.line.gamma_star},
                                {"value", row.line.value},
                                {"evaluations", row.line.evaluations}}},
           {"match", row.match}};
    put_optional(r, "qaoa_ratio", row.qaoa_ratio);
    put_optional(r, "rqaoa_ratio", row.rqaoa_ratio);
    put_optional(r, "iter_qaoa_ratio", row.iter_ratio);
    rows.push_back(std::move(r));
  }
  Json aggregates = Json::array();
  for (const SizeAggregate& agg : result.aggregates) {
    Json a{{"n", agg.n}, {"instances", agg.instances}, {"adversarial_fraction", agg.adversarial_fraction}};
    if (agg.qaoa_ratio) a["qaoa_ratio"] = to_json(*agg.qaoa_ratio);
    if (agg.rqaoa_ratio) a["rqaoa_ratio"] = to_json(*agg.rqaoa_ratio);
    if (agg.iter_ratio) a["iter_qaoa_ratio"] = to_json(*agg.iter_ratio);
    aggregates.push_back(std::move(a));
  }
  return Json{{"schema", kSchemaVersion},
              {"command", "experiment"},
              {"config", to_json(result.spec)},
              {"aggregates", aggregates},
              {"instances", rows}};
}

}  // namespace qaoa1::harness

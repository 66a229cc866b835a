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

#include "qaoa1/recursive.hpp"

#include <chrono>
#include <cmath>
#include <map>
#include <utility>

#include "qaoa1/errors.hpp"

namespace qaoa1 {

namespace {

int sign_of(double x) { return x < 0.0 ? -1 : 1; }

// Mutable Hamiltonian on fixed labels; eliminated spins become isolated and
// field-free.
class WorkingModel {
 public:
  explicit WorkingModel(const IsingModel& model)
      : n_(model.size()),
        fields_(model.fields().begin(), model.fields().end()),
        constant_(model.constant()),
        active_(model.size(), true) {
    for (const Edge& e : model.edges()) couplings_[{e.u, e.v}] = e.weight;
  }

  IsingModel snapshot() const {
    std::vector<Edge> edges;
    edges.reserve(couplings_.size());
    for (const auto& [key, w] : couplings_) edges.push_back({key.first, key.second, w});
    return IsingModel(n_, std::move(edges), fields_, constant_);
  }

  bool active(Vertex i) const { return active_[i]; }
  double field(Vertex i) const { return fields_[i]; }
  double constant() const { return constant_; }

  void assign(Vertex u, int sign) {
    for (auto it = couplings_.begin(); it != couplings_.end();) {
      const auto [a, b] = it->first;
      if (a == u || b == u) {
        fields_[a == u ? b : a] += sign * it->second;
        it = couplings_.erase(it);
      } else {
        ++it;
      }
    }
    constant_ += sign * fields_[u];
    retire(u);
  }

  void substitute(Vertex u, Vertex v, int sign) {
    std::vector<std::pair<Vertex, double>> moved;
    for (auto it = couplings_.begin(); it != couplings_.end();) {
      const auto [a, b] = it->first;
      if (a == u || b == u) {
        const Vertex other = a == u ? b : a;
        if (other == v) {
          constant_ += sign * it->second;
        } else {
          moved.emplace_back(other, it->second);
        }
        it = couplings_.erase(it);
      } else {
        ++it;
      }
    }
    for (const auto& [j, w] : moved) {
      const std::pair<Vertex, Vertex> key = v < j ? std::pair{v, j} : std::pair{j, v};
      const double merged = couplings_[key] + sign * w;
      if (merged == 0.0) {
        couplings_.erase(key);
      } else {
        couplings_[key] = merged;
      }
    }
    fields_[v] += sign * fields_[u];
    retire(u);
  }

  std::vector<Vertex> survivors() const {
    std::vector<Vertex> out;
    for (std::size_t i = 0; i < n_; ++i) {
      if (active_[i]) out.push_back(static_cast<Vertex>(i));
    }
    return out;
  }

  IsingModel reduced(const std::vector<Vertex>& survivors) const {
    std::vector<Vertex> relabel(n_, 0);
    for (std::size_t i = 0; i < survivors.size(); ++i) {
      relabel[survivors[i]] = static_cast<Vertex>(i);
    }
    std::vector<Edge> edges;
    for (const auto& [key, w] : couplings_) edges.push_back({relabel[key.first], relabel[key.second], w});
    std::vector<double> h(survivors.size());
    for (std::size_t i = 0; i < survivors.size(); ++i) h[i] = fields_[survivors[i]];
    return IsingModel(survivors.size(), std::move(edges), std::move(h), constant_);
  }

 private:
  void retire(Vertex u) {
    fields_[u] = 0.0;
    active_[u] = false;
  }

  std::size_t n_;
  std::map<std::pair<Vertex, Vertex>, double> couplings_;
  std::vector<double> fields_;
  double constant_;
  std::vector<bool> active_;
};

SolverOutcome solve(const IsingModel& input, std::size_t steps, const TunerConfig& tuner,
                    std::uint64_t seed, bool use_pairs, const char* name) {
  const auto started = std::chrono::steady_clock::now();
  const bool ancilla = tuner.fields == FieldHandling::eliminate && input.has_fields();
  const IsingModel model = ancilla ? eliminate_fields(input) : input;
  const std::size_t n = model.size();
  if (steps > 0 && steps >= n) {
    throw InputError("steps must be at most n - 1 (n = " + std::to_string(n) + ")");
  }
  if (n - steps > kMaxBruteForceSpins) {
    throw InputError("remainder of " + std::to_string(n - steps) +
                     " spins exceeds the exhaustive-search limit of " +
                     std::to_string(kMaxBruteForceSpins));
  }

  SolverOutcome out;
  SolverReport& report = out.report;
  report.method = name;
  report.tuner = tuner;
  report.steps = steps;
  report.seed = seed;
  report.constant = input.constant();

  const NeighborhoodIndex first_index = build_index(model);
  report.plan = sampling_plan(model, first_index);
  const OptimizationResult first = tune(model, first_index, tuner);
  report.gamma_star = first.gamma_star;
  report.beta_star = first.beta_star;
  report.qaoa_expectation =
      expectation_with_fields(model, first_index, {first.gamma_star, first.beta_star}) -
      model.constant();
  report.evaluations = first.evaluations;

  WorkingModel work(model);
  ReductionTrace& trace = out.trace;
  trace.original_size = n;
  for (std::size_t t = 0; t < steps; ++t) {
    const IsingModel current = work.snapshot();
    const NeighborhoodIndex index = build_index(current);
    OptimizationResult angles = first;
    if (t > 0) {
      angles = tune(current, index, tuner);
      report.evaluations += angles.evaluations;
    }
    const Correlators m = correlators(current, index, {angles.gamma_star, angles.beta_star});

    std::optional<Vertex> best_vertex;
    double vertex_mag = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!work.active(static_cast<Vertex>(i))) continue;
      if (std::abs(m.single[i]) > vertex_mag) {
        vertex_mag = std::abs(m.single[i]);
        best_vertex = static_cast<Vertex>(i);
      }
    }
    std::optional<std::size_t> best_edge;
    double edge_mag = -1.0;
    if (use_pairs) {
      for (std::size_t k = 0; k < m.pair.size(); ++k) {
        if (std::abs(m.pair[k]) > edge_mag) {
          edge_mag = std::abs(m.pair[k]);
          best_edge = k;
        }
      }
    }

    ReductionStep step;
    step.step_index = t;
    step.gamma = angles.gamma_star;
    step.beta = angles.beta_star;
    if (best_edge && edge_mag > vertex_mag) {
      const Edge& e = current.edges()[*best_edge];
      step.kind = StepKind::substitute;
      step.u = e.v;
      step.v = e.u;
      step.sign = sign_of(m.pair[*best_edge]);
      step.magnitude = edge_mag;
      work.substitute(step.u, step.v, step.sign);
    } else if (!use_pairs && vertex_mag == 0.0) {
      Vertex pick = *best_vertex;
      double strongest = -1.0;
      for (std::size_t i = 0; i < n; ++i) {
        const auto vi = static_cast<Vertex>(i);
        if (work.active(vi) && std::abs(work.field(vi)) > strongest) {
          strongest = std::abs(work.field(vi));
          pick = vi;
        }
      }
      step.kind = StepKind::assign;
      step.u = pick;
      step.sign = -sign_of(work.field(pick));
      step.magnitude = 0.0;
      report.warnings.push_back("step " + std::to_string(t) +
                                ": all single-spin correlations vanish; assigned spin " +
                                std::to_string(pick) + " against its field");
      work.assign(step.u, step.sign);
    } else {
      step.kind = StepKind::assign;
      step.u = *best_vertex;
      step.sign = sign_of(m.single[*best_vertex]);
      step.magnitude = vertex_mag;
      work.assign(step.u, step.sign);
    }
    trace.steps.push_back(step);
  }

  trace.survivors = work.survivors();
  trace.final_model = work.reduced(trace.survivors);
  trace.constant_accumulated = trace.final_model.constant();
  trace.final_truth = brute_force(trace.final_model);

  SpinAssignment full = backtrack(trace, trace.final_truth.argmin);
  if (ancilla) {
    if (full[n - 1] < 0) full = full.flipped();
    std::vector<std::int8_t> spins(full.spins().begin(), full.spins().end() - 1);
    full = SpinAssignment(std::move(spins));
  }
  out.assignment = full;
  report.energy = energy(input, full) - input.constant();

  if (input.size() <= kMaxBruteForceSpins) {
    const GroundTruth truth = brute_force(input);
    if (truth.e_min < 0.0) {
      report.approximation_ratio = approximation_ratio(report.energy, truth);
      report.qaoa_ratio = approximation_ratio(report.qaoa_expectation, truth);
    }
  }
  report.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  return out;
}

}  // namespace

Correlators correlators(const IsingModel& model, const NeighborhoodIndex& index,
                        const QaoaAngles& angles) {
  const TermTable t = term_table(model, index, angles.gamma);
  const double s2 = std::sin(2.0 * angles.beta);
  const double s4 = std::sin(4.0 * angles.beta);
  Correlators out;
  out.single.resize(t.vertex_sin2.size());
  out.pair.resize(t.edge_sin4.size());
  for (std::size_t i = 0; i < out.single.size(); ++i) out.single[i] = s2 * t.vertex_sin2[i];
  for (std::size_t k = 0; k < out.pair.size(); ++k) {
    out.pair[k] = s4 * t.edge_sin4[k] + s2 * s2 * t.edge_sin2sq[k];
  }
  return out;
}

std::string to_string(TunerMethod method) {
  switch (method) {
    case TunerMethod::gradient_near_zero: return "gradient";
    case TunerMethod::line_search: return "line_search";
    case TunerMethod::subdivision: return "subdivision";
  }
  return "unknown";
}

TunerMethod parse_tuner_method(const std::string& text) {
  if (text == "gradient" || text == "gradient_near_zero") return TunerMethod::gradient_near_zero;
  if (text == "line_search" || text == "line") return TunerMethod::line_search;
  if (text == "subdivision") return TunerMethod::subdivision;
  throw InputError("unknown tuning method '" + text +
                   "' (expected gradient, line_search or subdivision)");
}

std::string to_string(FieldHandling handling) {
  return handling == FieldHandling::native ? "native" : "eliminate";
}

OptimizationResult tune(const IsingModel& model, const NeighborhoodIndex& index,
                        const TunerConfig& config) {
  switch (config.method) {
    case TunerMethod::gradient_near_zero: return gradient_descent_near_zero(model, index);
    case TunerMethod::line_search:
      return line_search(model, index, config.refine, config.line_samples);
    case TunerMethod::subdivision: return subdivision_optimize(model, index, config.epsilon);
  }
  throw ConfigError("unknown tuning method");
}

SolverOutcome rqaoa(const IsingModel& model, std::size_t steps, const TunerConfig& tuner,
                    std::uint64_t seed) {
  return solve(model, steps, tuner, seed, true, "rqaoa");
}

SolverOutcome iter_qaoa(const IsingModel& model, std::size_t steps, const TunerConfig& tuner,
                        std::uint64_t seed) {
  return solve(model, steps, tuner, seed, false, "iter_qaoa");
}

SpinAssignment backtrack(const ReductionTrace& trace, const SpinAssignment& remainder) {
  if (remainder.size() != trace.survivors.size()) {
    throw InputError("remainder assigns " + std::to_string(remainder.size()) +
                     " spins, trace has " + std::to_string(trace.survivors.size()) +
                     " survivors");
  }
  std::vector<std::int8_t> s(trace.original_size, 0);
  for (std::size_t i = 0; i < trace.survivors.size(); ++i) s[trace.survivors[i]] = remainder[i];
  for (auto it = trace.steps.rbegin(); it != trace.steps.rend(); ++it) {
    if (it->kind == StepKind::assign) {
      s[it->u] = static_cast<std::int8_t>(it->sign);
    } else {
      if (s[it->v] == 0) throw InputError("trace substitutes into an unassigned spin");
      s[it->u] = static_cast<std::int8_t>(it->sign * s[it->v]);
    }
  }
  for (auto x : s) {
    if (x == 0) throw InputError("trace leaves a spin unassigned");
  }
  return SpinAssignment(std::move(s));
}

}  // namespace qaoa1

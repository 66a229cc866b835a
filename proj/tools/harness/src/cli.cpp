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

#include "qaoa1/harness/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "qaoa1/analytic.hpp"
#include "qaoa1/errors.hpp"
#include "qaoa1/harness/experiment.hpp"
#include "qaoa1/harness/json_io.hpp"
#include "qaoa1/optimizer.hpp"
#include "qaoa1/oracle.hpp"
#include "qaoa1/recursive.hpp"
#include "qaoa1/spectral.hpp"

namespace qaoa1::harness {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot write '" + path + "'");
  file << text;
}

Json envelope(const char* command) { return Json{{"schema", kSchemaVersion}, {"command", command}}; }

struct GenerateArgs {
  std::string family = "er";
  std::size_t n = 0;
  double p = 0.5;
  std::size_t degree = 3;
  std::string weights = "gaussian:0:100";
  std::string fields;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_generate(const GenerateArgs& a, std::ostream& out) {
  EnsembleSpec spec;
  spec.family = parse_graph_family(a.family);
  spec.p = a.p;
  spec.degree = a.degree;
  spec.weights = parse_weight_dist(a.weights);
  if (!a.fields.empty()) spec.fields = parse_weight_dist(a.fields);
  const IsingModel model = make_instance(spec, a.n, a.seed);
  std::ostringstream text;
  text << "# family=" << a.family << " n=" << a.n << " seed=" << a.seed << " weights=" << a.weights;
  if (spec.family == GraphFamily::erdos_renyi) {
    text << " p=" << format_number(a.p);
  } else {
    text << " degree=" << a.degree;
  }
  if (!a.fields.empty()) text << " fields=" << a.fields;
  text << '\n';
  write_model(text, model);
  emit(text.str(), a.out, out);
  return kExitOk;
}

struct LandscapeArgs {
  std::string model;
  std::string beta_policy = "fixed";
  double beta = 3.0 * std::numbers::pi / 8.0;
  std::optional<double> start;
  std::optional<double> stop;
  std::optional<std::size_t> resolution;
  std::string out;
};

int cmd_landscape(const LandscapeArgs& a, std::ostream& out, std::ostream& err) {
  const IsingModel model = load_model(a.model);
  const NeighborhoodIndex idx = build_index(model);
  const SamplingPlan plan = sampling_plan(model, idx);
  BetaPolicy policy;
  if (a.beta_policy == "fixed") {
    policy = BetaPolicy::fixed(a.beta);
  } else if (a.beta_policy == "optimal") {
    policy = BetaPolicy::analytic_optimal([&](double gamma) {
      const UnivariateValue v = univariate_cost(model, idx, gamma);
      return std::pair{v.value, v.beta_star};
    });
  } else {
    throw InputError("unknown beta policy '" + a.beta_policy + "' (expected fixed or optimal)");
  }
  std::optional<SampleRange> range;
  if (a.start || a.stop) {
    if (!a.start || !a.stop) throw InputError("--start and --stop must be given together");
    range = SampleRange{*a.start, *a.stop};
  }
  if (a.resolution) {
    const double width = range ? range->stop - range->start : plan.period.value_or(0.0);
    const auto nyquist = static_cast<std::size_t>(std::ceil(width / plan.delta_gamma));
    if (*a.resolution < nyquist) {
      err << "warning: resolution " << *a.resolution << " is below the Nyquist count " << nyquist
          << " (spacing exceeds delta_gamma=" << format_number(plan.delta_gamma)
          << "); the sampled landscape may alias\n";
    }
  }
  const LandscapeSamples samples = sample_landscape(model, idx, plan, policy, a.resolution, range);
  std::ostringstream text;
  write_landscape_csv(text, samples);
  emit(text.str(), a.out, out);
  return kExitOk;
}

struct ModelArgs {
  std::string model;
  std::string out;
};

int cmd_maxfreq(const ModelArgs& a, std::ostream& out) {
  const IsingModel model = load_model(a.model);
  const NeighborhoodIndex idx = build_index(model);
  Json doc = envelope("maxfreq");
  doc["instance"] = instance_descriptor(model);
  doc["plan"] = to_json(sampling_plan(model, idx));
  if (model.size() <= kMaxBruteForceSpins) doc["hp_spectrum_range"] = hp_spectrum_range(model);
  if (model.has_fields()) {
    doc["field_elimination_ratio"] = sampling_ratio_after_field_elimination(model);
  }
  emit(dump(doc) + "\n", a.out, out);
  return kExitOk;
}

struct TuneArgs {
  std::string model;
  std::string method = "gradient";
  double epsilon = 1e-6;
  std::size_t samples = 0;
  bool no_refine = false;
  std::string out;
};

TunerConfig tuner_config(const std::string& method, double epsilon, std::size_t samples,
                         bool no_refine, const std::string& fields) {
  TunerConfig cfg;
  cfg.method = parse_tuner_method(method);
  cfg.epsilon = epsilon;
  cfg.line_samples = samples;
  cfg.refine = !no_refine;
  if (fields == "native") {
    cfg.fields = FieldHandling::native;
  } else if (fields == "eliminate") {
    cfg.fields = FieldHandling::eliminate;
  } else {
    throw InputError("unknown field handling '" + fields + "' (expected native or eliminate)");
  }
  return cfg;
}

int cmd_tune(const TuneArgs& a, std::ostream& out) {
  const TunerConfig cfg = tuner_config(a.method, a.epsilon, a.samples, a.no_refine, "native");
  const IsingModel model = load_model(a.model);
  const auto started = Clock::now();
  const NeighborhoodIndex idx = build_index(model);
  const OptimizationResult r = tune(model, idx, cfg);
  const double ms = elapsed_ms(started);
  Json doc = envelope("tune");
  doc["instance"] = instance_descriptor(model);
  doc["config"] = Json{{"model", a.model}, {"tuner", to_json(cfg)}};
  doc["gamma_star"] = r.gamma_star;
  doc["beta_star"] = r.beta_star;
  doc["value"] = r.value;
  doc["expectation"] = r.value + model.constant();
  doc["constant"] = model.constant();
  doc["evaluations"] = r.evaluations;
  doc["wall_time_ms"] = ms;
  doc["plan"] = to_json(sampling_plan(model, idx));
  emit(dump(doc) + "\n", a.out, out);
  return kExitOk;
}

struct SolveArgs {
  std::string model;
  std::string method = "rqaoa";
  std::size_t steps = 0;
  std::string tuner = "gradient";
  double epsilon = 1e-6;
  std::size_t samples = 0;
  bool no_refine = false;
  std::string fields = "native";
  std::uint64_t seed = 0;
  std::string out;
  std::string assignment;
};

void write_assignment(const SpinAssignment& s, const std::string& path) {
  if (path.empty()) return;
  std::ostringstream text;
  text << "spins " << s.size() << '\n';
  for (std::size_t i = 0; i < s.size(); ++i) text << (i ? " " : "") << static_cast<int>(s[i]);
  text << '\n';
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot write '" + path + "'");
  file << text.str();
}

int cmd_solve(const SolveArgs& a, std::ostream& out) {
  const IsingModel model = load_model(a.model);
  Json doc = envelope("solve");
  Json instance = instance_descriptor(model);
  instance["source"] = a.model;
  doc["instance"] = instance;
  if (a.method == "brute_force") {
    const auto started = Clock::now();
    const GroundTruth truth = brute_force(model);
    doc["config"] = Json{{"method", "brute_force"}, {"seed", a.seed}};
    doc["energy"] = truth.e_min;
    doc["constant"] = model.constant();
    doc["e_max"] = truth.e_max;
    doc["degeneracy"] = truth.degeneracy;
    if (truth.e_min < 0.0) doc["approximation_ratio"] = 1.0;
    doc["wall_time_ms"] = elapsed_ms(started);
    doc["assignment"] = to_json(truth.argmin);
    write_assignment(truth.argmin, a.assignment);
    emit(dump(doc) + "\n", a.out, out);
    return kExitOk;
  }
  const TunerConfig cfg = tuner_config(a.tuner, a.epsilon, a.samples, a.no_refine, a.fields);
  SolverOutcome result;
  if (a.method == "rqaoa") {
    result = rqaoa(model, a.steps, cfg, a.seed);
  } else if (a.method == "iter_qaoa") {
    result = iter_qaoa(model, a.steps, cfg, a.seed);
  } else {
    throw InputError("unknown solver '" + a.method + "' (expected rqaoa, iter_qaoa or brute_force)");
  }
  doc["config"] = Json{{"method", a.method}, {"steps", a.steps}, {"tuner", to_json(cfg)}, {"seed", a.seed}};
  const Json report = to_json(result.report);
  for (auto it = report.begin(); it != report.end(); ++it) {
    const std::string& key = it.key();
    if (key != "method" && key != "tuner" && key != "steps" && key != "seed") doc[key] = it.value();
  }
  doc["assignment"] = to_json(result.assignment);
  doc["trace"] = to_json(result.trace);
  write_assignment(result.assignment, a.assignment);
  emit(dump(doc) + "\n", a.out, out);
  return kExitOk;
}

struct ExperimentArgs {
  std::string family = "er";
  std::vector<std::size_t> sizes;
  double p = 0.5;
  std::size_t degree = 3;
  std::string weights = "gaussian:0:100";
  std::string fields;
  std::size_t instances = 10;
  std::uint64_t seed = 0;
  bool solvers = false;
  std::size_t remainder = 8;
  std::string tuner = "gradient";
  std::string field_handling = "native";
  std::string out;
};

int cmd_experiment(const ExperimentArgs& a, std::ostream& out) {
  EnsembleSpec spec;
  spec.family = parse_graph_family(a.family);
  spec.sizes = a.sizes;
  spec.p = a.p;
  spec.degree = a.degree;
  spec.weights = parse_weight_dist(a.weights);
  if (!a.fields.empty()) spec.fields = parse_weight_dist(a.fields);
  spec.instances = a.instances;
  spec.seed_base = a.seed;
  spec.solvers = a.solvers;
  spec.remainder = a.remainder;
  spec.tuner = tuner_config(a.tuner, 1e-6, 0, false, a.field_handling);
  const ExperimentResult result = run_experiment(spec, worker_count());
  emit(dump(to_json(result)) + "\n", a.out, out);
  return kExitOk;
}

struct VerifyArgs {
  std::size_t instances = 100;
  std::size_t max_n = 10;
  std::uint64_t seed = 0;
  double tolerance = 1e-9;
  std::string out;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  if (a.max_n < 2 || a.max_n > kMaxStatevectorQubits) {
    throw InputError("--max-n must lie in [2, " + std::to_string(kMaxStatevectorQubits) + "]");
  }
  std::mt19937_64 rng(a.seed);
  std::uniform_int_distribution<std::size_t> size(2, a.max_n);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  double expectation_error = 0.0;
  double correlator_error = 0.0;
  double coefficient_error = 0.0;
  std::size_t ground_state_failures = 0;
  const auto started = Clock::now();
  for (std::size_t t = 0; t < a.instances; ++t) {
    const std::uint64_t seed = rng();
    IsingModel model = generate_erdos_renyi(size(rng), 0.5, UniformInt{-5, 5}, seed);
    if (t % 2 == 0) model = with_random_fields(model, UniformInt{-5, 5}, seed + 1);
    const NeighborhoodIndex idx = build_index(model);
    for (int k = 0; k < 5; ++k) {
      const QaoaAngles q{angle(rng), angle(rng)};
      const double sv = statevector_expectation(model, q);
      expectation_error = std::max(expectation_error, std::abs(expectation_with_fields(model, idx, q) - sv));
      const CoefficientTriple c = coefficients_with_fields(model, idx, q.gamma);
      coefficient_error = std::max(coefficient_error, std::abs(evaluate_with_fields(c, q.beta) - sv));
      const Correlators m = correlators(model, idx, q);
      const auto z = statevector_z(model, q);
      for (std::size_t i = 0; i < model.size(); ++i) {
        correlator_error = std::max(correlator_error, std::abs(m.single[i] - z[i]));
      }
      for (std::size_t e = 0; e < model.edges().size(); ++e) {
        const Edge& edge = model.edges()[e];
        correlator_error =
            std::max(correlator_error, std::abs(m.pair[e] - statevector_zz(model, q, edge.u, edge.v)));
      }
    }
    const auto table = cost_table(model);
    const double table_min = *std::min_element(table.begin(), table.end());
    if (brute_force(model).e_min != table_min) ++ground_state_failures;
  }
  const bool pass = expectation_error <= a.tolerance && correlator_error <= a.tolerance &&
                    coefficient_error <= a.tolerance && ground_state_failures == 0;
  Json doc = envelope("verify");
  doc["config"] = Json{{"instances", a.instances}, {"max_n", a.max_n}, {"seed", a.seed}, {"tolerance", a.tolerance}};
  doc["max_expectation_error"] = expectation_error;
  doc["max_coefficient_error"] = coefficient_error;
  doc["max_correlator_error"] = correlator_error;
  doc["ground_state_failures"] = ground_state_failures;
  doc["pass"] = pass;
  doc["wall_time_ms"] = elapsed_ms(started);
  emit(dump(doc) + "\n", a.out, out);
  return pass ? kExitOk : kExitNumeric;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Level-1 QAOA landscapes, parameter tuning and recursive solvers for Ising models"};
  app.name("qaoa1");
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write a random instance in the edge-list format");
  generate->add_option("--family", gen.family, "er, regular or bipartite")->capture_default_str();
  generate->add_option("--n", gen.n, "Vertex count")->required();
  generate->add_option("--p", gen.p, "Edge probability (er)")->capture_default_str();
  generate->add_option("--degree", gen.degree, "Degree (regular, bipartite)")->capture_default_str();
  generate->add_option("--weights", gen.weights, "gaussian:MEAN:VAR, uniform:LO:HI or pm1")
      ->capture_default_str();
  generate->add_option("--fields", gen.fields, "Field distribution; omit for a field-free model");
  generate->add_option("--seed", gen.seed)->capture_default_str();
  generate->add_option("--out", gen.out, "Output file (default stdout)");

  LandscapeArgs land;
  auto* landscape = app.add_subcommand("landscape", "Sample the gamma landscape as CSV");
  landscape->add_option("--model", land.model)->required();
  landscape->add_option("--beta-policy", land.beta_policy, "fixed or optimal")->capture_default_str();
  landscape->add_option("--beta", land.beta, "Mixer angle for the fixed policy")->capture_default_str();
  landscape->add_option("--start", land.start, "Range start (required for real weights)");
  landscape->add_option("--stop", land.stop, "Range end");
  landscape->add_option("--resolution", land.resolution, "Row count override");
  landscape->add_option("--out", land.out);

  ModelArgs freq;
  auto* maxfreq = app.add_subcommand("maxfreq", "Report the sampling plan and spectrum range");
  maxfreq->add_option("--model", freq.model)->required();
  maxfreq->add_option("--out", freq.out);

  TuneArgs tune_args;
  auto* tune_cmd = app.add_subcommand("tune", "Optimise (gamma, beta)");
  tune_cmd->add_option("--model", tune_args.model)->required();
  tune_cmd->add_option("--method", tune_args.method, "gradient, line_search or subdivision")
      ->capture_default_str();
  tune_cmd->add_option("--epsilon", tune_args.epsilon)->capture_default_str();
  tune_cmd->add_option("--samples", tune_args.samples, "Line-search samples in [0, pi); 0 uses the plan")
      ->capture_default_str();
  tune_cmd->add_flag("--no-refine", tune_args.no_refine, "Skip the local refinement of line search");
  tune_cmd->add_option("--out", tune_args.out);

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "Run RQAOA, Iter-QAOA or exhaustive search");
  solve->add_option("--model", solve_args.model)->required();
  solve->add_option("--method", solve_args.method, "rqaoa, iter_qaoa or brute_force")->capture_default_str();
  solve->add_option("--steps", solve_args.steps, "Number of eliminations")->capture_default_str();
  solve->add_option("--tuner", solve_args.tuner, "gradient, line_search or subdivision")->capture_default_str();
  solve->add_option("--epsilon", solve_args.epsilon)->capture_default_str();
  solve->add_option("--samples", solve_args.samples)->capture_default_str();
  solve->add_flag("--no-refine", solve_args.no_refine);
  solve->add_option("--fields", solve_args.fields, "native or eliminate")->capture_default_str();
  solve->add_option("--seed", solve_args.seed)->capture_default_str();
  solve->add_option("--out", solve_args.out, "Report file (default stdout)");
  solve->add_option("--assignment", solve_args.assignment, "Write the spins to this file");

  ExperimentArgs exp;
  auto* experiment = app.add_subcommand("experiment", "Run an ensemble and aggregate the results");
  experiment->add_option("--family", exp.family)->capture_default_str();
  experiment->add_option("--sizes", exp.sizes, "Vertex counts")->required()->delimiter(',');
  experiment->add_option("--p", exp.p)->capture_default_str();
  experiment->add_option("--degree", exp.degree)->capture_default_str();
  experiment->add_option("--weights", exp.weights)->capture_default_str();
  experiment->add_option("--fields", exp.fields);
  experiment->add_option("--instances", exp.instances)->capture_default_str();
  experiment->add_option("--seed", exp.seed, "Seed base")->capture_default_str();
  experiment->add_flag("--solvers", exp.solvers, "Also run RQAOA and Iter-QAOA (n <= 24)");
  experiment->add_option("--remainder", exp.remainder, "Spins left for exhaustive search")
      ->capture_default_str();
  experiment->add_option("--method", exp.tuner, "Tuner used by the solvers")->capture_default_str();
  experiment->add_option("--field-handling", exp.field_handling, "native or eliminate")
      ->capture_default_str();
  experiment->add_option("--out", exp.out);

  VerifyArgs ver;
  auto* verify = app.add_subcommand("verify", "Check closed forms against the statevector oracle");
  verify->add_option("--instances", ver.instances)->capture_default_str();
  verify->add_option("--max-n", ver.max_n)->capture_default_str();
  verify->add_option("--seed", ver.seed)->capture_default_str();
  verify->add_option("--tolerance", ver.tolerance)->capture_default_str();
  verify->add_option("--out", ver.out);

  std::vector<const char*> argv;
  argv.push_back("qaoa1");
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (generate->parsed()) return cmd_generate(gen, out);
    if (landscape->parsed()) return cmd_landscape(land, out, err);
    if (maxfreq->parsed()) return cmd_maxfreq(freq, out);
    if (tune_cmd->parsed()) return cmd_tune(tune_args, out);
    if (solve->parsed()) return cmd_solve(solve_args, out);
    if (experiment->parsed()) return cmd_experiment(exp, out);
    if (verify->parsed()) return cmd_verify(ver, out);
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << '\n';
    return kExitCapacity;
  } catch (const NumericError& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace qaoa1::harness

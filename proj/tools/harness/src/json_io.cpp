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

#include "qaoa1/harness/json_io.hpp"

#include <sstream>

#include "qaoa1/errors.hpp"

namespace qaoa1::harness {

namespace {

void write(std::ostream& out, const Json& v, int indent, int depth) {
  const std::string pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
  const std::string close_pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
  const char* nl = indent > 0 ? "\n" : "";
  const char* sep = indent > 0 ? ": " : ":";
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        out << "{}";
        return;
      }
      out << '{' << nl;
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out << ',' << nl;
        first = false;
        out << pad << Json(it.key()).dump() << sep;
        write(out, it.value(), indent, depth + 1);
      }
      out << nl << close_pad << '}';
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        out << "[]";
        return;
      }
      out << '[' << nl;
      bool first = true;
      for (const auto& item : v) {
        if (!first) out << ',' << nl;
        first = false;
        out << pad;
        write(out, item, indent, depth + 1);
      }
      out << nl << close_pad << ']';
      return;
    }
    case Json::value_t::number_float: {
      const double x = v.get<double>();
      if (!std::isfinite(x)) {
        out << "null";
      } else {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", x);
        out << buf;
      }
      return;
    }
    default:
      out << v.dump();
  }
}

double read_number(const Json& v, const char* what) {
  if (!v.is_number()) throw InputError(std::string("model json: '") + what + "' must be a number");
  return v.get<double>();
}

}  // namespace

std::string dump(const Json& value, int indent) {
  std::ostringstream out;
  write(out, value, indent, 0);
  return out.str();
}

Json to_json(const IsingModel& model) {
  Json nodes = Json::array();
  for (std::size_t i = 0; i < model.size(); ++i) {
    if (model.fields()[i] != 0.0) nodes.push_back({i, model.fields()[i]});
  }
  Json edges = Json::array();
  for (const Edge& e : model.edges()) edges.push_back({e.u, e.v, e.weight});
  return Json{{"n", model.size()}, {"nodes", nodes}, {"edges", edges}, {"constant", model.constant()}};
}

IsingModel model_from_json(const Json& value) {
  if (!value.is_object() || !value.contains("n")) throw InputError("model json needs an 'n' field");
  const auto n = value.at("n").get<std::size_t>();
  std::vector<double> h(n, 0.0);
  if (value.contains("nodes")) {
    for (const auto& node : value.at("nodes")) {
      const auto i = node.at(0).get<std::size_t>();
      if (i >= n) throw InputError("model json: node index out of range");
      h[i] = read_number(node.at(1), "field");
    }
  }
  std::vector<Edge> edges;
  if (value.contains("edges")) {
    for (const auto& e : value.at("edges")) {
      edges.push_back({e.at(0).get<Vertex>(), e.at(1).get<Vertex>(), read_number(e.at(2), "weight")});
    }
  }
  const double constant = value.contains("constant") ? read_number(value.at("constant"), "constant") : 0.0;
  return IsingModel(n, std::move(edges), std::move(h), constant);
}

Json to_json(const WeightClass& wc) {
  if (!wc.integral) return Json{{"kind", "real"}};
  return Json{{"kind", "integer"}, {"scale", wc.scale}};
}

Json to_json(const SamplingPlan& plan) {
  Json out{{"omega_max", plan.omega_max}, {"nu_max", plan.nu_max}, {"delta_gamma", plan.delta_gamma}};
  out["period"] = plan.period ? Json(*plan.period) : Json(nullptr);
  out["num_samples"] = plan.num_samples ? Json(*plan.num_samples) : Json(nullptr);
  return out;
}

Json to_json(const OptimizationResult& result) {
  return Json{{"method", to_string(result.method)},
              {"gamma_star", result.gamma_star},
              {"beta_star", result.beta_star},
              {"value", result.value},
              {"evaluations", result.evaluations}};
}

Json to_json(const TunerConfig& config) {
  Json out{{"method", to_string(config.method)}, {"fields", to_string(config.fields)}};
  if (config.method == TunerMethod::line_search) {
    out["samples"] = config.line_samples;
    out["refine"] = config.refine;
  }
  if (config.method == TunerMethod::subdivision) out["epsilon"] = config.epsilon;
  return out;
}

Json to_json(const ReductionTrace& trace) {
  Json steps = Json::array();
  for (const ReductionStep& s : trace.steps) {
    Json step{{"step", s.step_index},
              {"kind", s.kind == StepKind::assign ? "assign" : "substitute"},
              {"u", s.u}};
    if (s.kind == StepKind::substitute) step["v"] = s.v;
    step["sign"] = s.sign;
    step["magnitude"] = s.magnitude;
    step["gamma_star"] = s.gamma;
    step["beta_star"] = s.beta;
    steps.push_back(std::move(step));
  }
  return Json{{"original_size", trace.original_size},
              {"steps", steps},
              {"constant_accumulated", trace.constant_accumulated},
              {"survivors", trace.survivors},
              {"final_model", to_json(trace.final_model)},
              {"final_e_min", trace.final_truth.e_min},
              {"final_argmin", to_json(trace.final_truth.argmin)}};
}

Json to_json(const SolverReport& report) {
  Json out{{"method", report.method},
           {"tuner", to_json(report.tuner)},
           {"steps", report.steps},
           {"seed", report.seed},
           {"gamma_star", report.gamma_star},
           {"beta_star", report.beta_star},
           {"qaoa_expectation", report.qaoa_expectation},
           {"energy", report.energy},
           {"constant", report.constant}};
  if (report.approximation_ratio) out["approximation_ratio"] = *report.approximation_ratio;
  if (report.qaoa_ratio) out["qaoa_ratio"] = *report.qaoa_ratio;
  out["evaluations"] = report.evaluations;
  out["wall_time_ms"] = report.wall_time_ms;
  out["plan"] = to_json(report.plan);
  out["warnings"] = report.warnings;
  return out;
}

Json to_json(const SpinAssignment& s) {
  Json out = Json::array();
  for (auto x : s.spins()) out.push_back(static_cast<int>(x));
  return out;
}

Json instance_descriptor(const IsingModel& model) {
  return Json{{"n", model.size()},
              {"edges", model.edges().size()},
              {"has_fields", model.has_fields()},
              {"weight_class", to_json(model.weight_class())}};
}

}  // namespace qaoa1::harness

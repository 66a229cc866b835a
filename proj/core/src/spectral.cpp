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

#include "qaoa1/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <ostream>

#include "qaoa1/errors.hpp"
#include "qaoa1/oracle.hpp"

namespace qaoa1 {

namespace {

template <typename T>
T absolute(T x) {
  return x < T{0} ? -x : x;
}

// Half of the maximum angular frequency, with weights already mapped to T.
template <typename T>
T half_bandwidth(const IsingModel& model, const NeighborhoodIndex& index,
                 const std::vector<T>& coupling, const std::vector<T>& field) {
  T best{0};
  for (std::size_t i = 0; i < model.size(); ++i) {
    if (field[i] == T{0}) continue;
    T sum = absolute(field[i]);
    for (const Incidence& inc : index.neighbors(static_cast<Vertex>(i))) {
      sum += absolute(coupling[inc.edge]);
    }
    best = std::max(best, sum);
  }

  std::vector<T> plus_terms, minus_terms;
  const auto& edges = model.edges();
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const Vertex u = edges[k].u;
    const Vertex v = edges[k].v;
    const auto nu = index.neighbors(u);
    const auto nv = index.neighbors(v);
    T sum_d{0}, sum_e{0}, only_d{0}, only_e{0};
    plus_terms.assign(1, absolute(field[u] + field[v]));
    minus_terms.assign(1, absolute(field[u] - field[v]));
    std::size_t i = 0, j = 0;
    while (i < nu.size() || j < nv.size()) {
      const Vertex a = i < nu.size() ? nu[i].neighbor : static_cast<Vertex>(-1);
      const Vertex b = j < nv.size() ? nv[j].neighbor : static_cast<Vertex>(-1);
      if (a < b) {
        if (a != v) {
          sum_d += absolute(coupling[nu[i].edge]);
          only_d += absolute(coupling[nu[i].edge]);
        }
        ++i;
      } else if (b < a) {
        if (b != u) {
          sum_e += absolute(coupling[nv[j].edge]);
          only_e += absolute(coupling[nv[j].edge]);
        }
        ++j;
      } else {
        const T uf = coupling[nu[i].edge];
        const T vf = coupling[nv[j].edge];
        sum_d += absolute(uf);
        sum_e += absolute(vf);
        plus_terms.push_back(absolute(uf + vf));
        minus_terms.push_back(absolute(uf - vf));
        ++i;
        ++j;
      }
    }
    const T first = absolute(coupling[k]) +
                    std::max(absolute(field[v]) + sum_e, absolute(field[u]) + sum_d);
    best = std::max(best, first);

    T plus{0}, minus{0};
    for (T x : plus_terms) plus += x;
    for (T x : minus_terms) minus += x;
    // Equal cosine-frequency multisets make the two products identical, so the
    // bracket vanishes for every gamma.
    auto drop_zeros = [](std::vector<T>& xs) {
      xs.erase(std::remove(xs.begin(), xs.end(), T{0}), xs.end());
      std::sort(xs.begin(), xs.end());
    };
    drop_zeros(plus_terms);
    drop_zeros(minus_terms);
    if (plus_terms != minus_terms) best = std::max(best, only_e + only_d + std::max(plus, minus));
  }
  return best;
}

void require_uniform(const LandscapeSamples& samples) {
  if (samples.gammas.size() != samples.values.size() || samples.gammas.empty()) {
    throw InputError("landscape samples are empty or inconsistent");
  }
  for (std::size_t k = 0; k < samples.gammas.size(); ++k) {
    const double expected = samples.start + static_cast<double>(k) * samples.step;
    if (std::abs(samples.gammas[k] - expected) > 1e-9 * std::max(1.0, std::abs(expected))) {
      throw InputError("landscape samples are not uniformly spaced");
    }
  }
}

void require_full_period(const LandscapeSamples& samples) {
  require_uniform(samples);
  if (!samples.full_period || !samples.plan.period) {
    throw InputError("landscape samples do not cover one full period");
  }
}

struct Spectrum {
  std::vector<double> cosines;
  std::vector<double> sines;
};

// Real DFT of samples over one period; coefficients of cos(m t) and sin(m t).
Spectrum real_dft(const std::vector<double>& values) {
  const std::size_t n = values.size();
  std::vector<double> cos_table(n), sin_table(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
    cos_table[j] = std::cos(angle);
    sin_table[j] = std::sin(angle);
  }
  const std::size_t top = n / 2;
  Spectrum s;
  s.cosines.assign(top + 1, 0.0);
  s.sines.assign(top + 1, 0.0);
  for (std::size_t m = 0; m <= top; ++m) {
    double c = 0.0, sn = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t j = (m * k) % n;
      c += values[k] * cos_table[j];
      sn += values[k] * sin_table[j];
    }
    const bool edge_bin = m == 0 || (n % 2 == 0 && m == top);
    const double scale = (edge_bin ? 1.0 : 2.0) / static_cast<double>(n);
    s.cosines[m] = c * scale;
    s.sines[m] = edge_bin ? 0.0 : sn * scale;
  }
  return s;
}

}  // namespace

double max_angular_frequency(const IsingModel& model, const NeighborhoodIndex& index) {
  if (!index.matches(model)) throw InputError("neighborhood index was built for another model");
  const auto& edges = model.edges();
  const auto h = model.fields();
  const WeightClass wc = model.weight_class();
  if (wc.integral) {
    const auto scale = static_cast<double>(wc.scale);
    std::vector<std::int64_t> coupling(edges.size()), field(h.size());
    for (std::size_t k = 0; k < edges.size(); ++k) {
      coupling[k] = std::llround(edges[k].weight * scale);
    }
    for (std::size_t i = 0; i < h.size(); ++i) field[i] = std::llround(h[i] * scale);
    return 2.0 * static_cast<double>(half_bandwidth(model, index, coupling, field)) / scale;
  }
  std::vector<double> coupling(edges.size());
  for (std::size_t k = 0; k < edges.size(); ++k) coupling[k] = edges[k].weight;
  const std::vector<double> field(h.begin(), h.end());
  return 2.0 * half_bandwidth(model, index, coupling, field);
}

double max_angular_frequency(const IsingModel& model) {
  return max_angular_frequency(model, build_index(model));
}

SamplingPlan sampling_plan(const IsingModel& model, const NeighborhoodIndex& index) {
  SamplingPlan plan;
  plan.omega_max = max_angular_frequency(model, index);
  plan.nu_max = plan.omega_max / (2.0 * std::numbers::pi);
  plan.delta_gamma = 1.0 / (2.0 * plan.nu_max + 1.0);
  const WeightClass wc = model.weight_class();
  if (wc.integral) {
    plan.period = std::numbers::pi * static_cast<double>(wc.scale);
    plan.num_samples = static_cast<std::size_t>(std::ceil(*plan.period / plan.delta_gamma));
  }
  return plan;
}

SamplingPlan sampling_plan(const IsingModel& model) {
  return sampling_plan(model, build_index(model));
}

double sampling_ratio_after_field_elimination(const IsingModel& model) {
  if (!model.has_fields()) throw InputError("model has no fields to eliminate");
  return sampling_plan(model).delta_gamma / sampling_plan(eliminate_fields(model)).delta_gamma;
}

LandscapeSamples sample_landscape(const IsingModel& model, const NeighborhoodIndex& index,
                                  const SamplingPlan& plan, const BetaPolicy& policy,
                                  std::optional<std::size_t> count,
                                  std::optional<SampleRange> range) {
  if (policy.kind == BetaPolicy::Kind::analytic_optimal && !policy.optimizer) {
    throw ConfigError("analytic-optimal beta policy needs a beta optimizer");
  }
  if (count && *count == 0) throw InputError("sample count must be positive");

  LandscapeSamples out;
  out.plan = plan;
  double stop = 0.0;
  if (range) {
    if (!(range->stop > range->start)) throw InputError("sampling range must be nonempty");
    out.start = range->start;
    stop = range->stop;
    out.full_period = plan.period && std::abs((stop - out.start) - *plan.period) <=
                                         1e-12 * std::max(1.0, *plan.period);
  } else if (plan.period) {
    out.start = 0.0;
    stop = *plan.period;
    out.full_period = true;
  } else {
    throw InputError("landscape has no period; a sampling range is required");
  }
  const double width = stop - out.start;
  std::size_t n = 0;
  if (count) {
    n = *count;
  } else if (!range && plan.num_samples) {
    n = *plan.num_samples;
  } else {
    n = static_cast<std::size_t>(std::max(1.0, std::ceil(width / plan.delta_gamma)));
  }
  out.step = width / static_cast<double>(n);

  out.gammas.resize(n);
  out.values.resize(n);
  if (policy.kind == BetaPolicy::Kind::analytic_optimal) out.beta_star.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double gamma = out.start + static_cast<double>(k) * out.step;
    out.gammas[k] = gamma;
    if (policy.kind == BetaPolicy::Kind::fixed) {
      out.values[k] = expectation_with_fields(model, index, {gamma, policy.beta});
    } else {
      const auto [value, beta] = policy.optimizer(gamma);
      out.values[k] = value + model.constant();
      out.beta_star[k] = beta;
    }
  }
  return out;
}

void write_landscape_csv(std::ostream& out, const LandscapeSamples& samples) {
  const SamplingPlan& plan = samples.plan;
  out << "# omega_max=" << format_number(plan.omega_max) << '\n';
  out << "# nu_max=" << format_number(plan.nu_max) << '\n';
  out << "# delta_gamma=" << format_number(plan.delta_gamma) << '\n';
  if (plan.period) out << "# period=" << format_number(*plan.period) << '\n';
  if (plan.num_samples) out << "# num_samples=" << *plan.num_samples << '\n';
  out << "# rows=" << samples.gammas.size() << '\n';
  const bool with_beta = !samples.beta_star.empty();
  out << (with_beta ? "gamma,value,beta_star\n" : "gamma,value\n");
  for (std::size_t k = 0; k < samples.gammas.size(); ++k) {
    out << format_number(samples.gammas[k]) << ',' << format_number(samples.values[k]);
    if (with_beta) out << ',' << format_number(samples.beta_star[k]);
    out << '\n';
  }
}

TrigInterpolant::TrigInterpolant(double start, double period, std::vector<double> cosines,
                                 std::vector<double> sines)
    : start_(start), period_(period), cosines_(std::move(cosines)), sines_(std::move(sines)) {}

double TrigInterpolant::operator()(double gamma) const {
  const double t = 2.0 * std::numbers::pi * (gamma - start_) / period_;
  double value = cosines_.empty() ? 0.0 : cosines_[0];
  for (std::size_t m = 1; m < cosines_.size(); ++m) {
    const double angle = static_cast<double>(m) * t;
    value += cosines_[m] * std::cos(angle) + sines_[m] * std::sin(angle);
  }
  return value;
}

TrigInterpolant reconstruct(const LandscapeSamples& samples) {
  require_full_period(samples);
  if (!samples.beta_star.empty()) {
    throw InputError("reconstruction needs samples taken at a fixed beta");
  }
  Spectrum s = real_dft(samples.values);
  return TrigInterpolant(samples.start, *samples.plan.period, std::move(s.cosines),
                         std::move(s.sines));
}

double hp_spectrum_range(const IsingModel& model) {
  const GroundTruth truth = brute_force(model);
  return truth.e_max - truth.e_min;
}

double empirical_bandwidth(const LandscapeSamples& samples) {
  require_full_period(samples);
  const Spectrum s = real_dft(samples.values);
  std::vector<double> magnitude(s.cosines.size());
  double total = 0.0;
  for (std::size_t m = 0; m < magnitude.size(); ++m) {
    magnitude[m] = std::hypot(s.cosines[m], s.sines[m]);
    total += magnitude[m];
  }
  if (total == 0.0) return 0.0;
  std::size_t top = 0;
  for (std::size_t m = 0; m < magnitude.size(); ++m) {
    if (magnitude[m] > 1e-8 * total) top = m;
  }
  return 2.0 * std::numbers::pi * static_cast<double>(top) / *samples.plan.period;
}

}  // namespace qaoa1

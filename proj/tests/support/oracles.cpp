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

#include "oracles.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "qaoa1/optimizer.hpp"
#include "qaoa1/spectral.hpp"

namespace qaoa1::testing {

namespace {

int draw_nonzero(int lo, int hi, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dist(lo, hi);
  for (;;) {
    const int x = dist(rng);
    if (x != 0) return x;
  }
}

}  // namespace

IsingModel random_integer_model(std::size_t n, double p, int lo, int hi, bool fields,
                                std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (coin(rng)) edges.push_back({u, v, static_cast<double>(draw_nonzero(lo, hi, rng))});
    }
  }
  std::vector<double> h(n, 0.0);
  if (fields) {
    for (auto& x : h) x = draw_nonzero(lo, hi, rng);
  }
  return IsingModel(n, std::move(edges), std::move(h));
}

double double_sum_energy(const IsingModel& model, const std::vector<int>& spins) {
  const std::size_t n = model.size();
  std::vector<double> j(n * n, 0.0);
  for (const Edge& e : model.edges()) {
    j[e.u * n + e.v] = e.weight / 2.0;
    j[e.v * n + e.u] = e.weight / 2.0;
  }
  double total = model.constant();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) total += j[a * n + b] * spins[a] * spins[b];
    total += model.fields()[a] * spins[a];
  }
  return total;
}

std::vector<int> spins_from_mask(std::uint64_t mask, std::size_t n) {
  std::vector<int> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = (mask >> i) & 1U ? 1 : -1;
  return s;
}

Extremes enumerate_extremes(const IsingModel& model) {
  Extremes out{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
               0};
  const std::uint64_t total = std::uint64_t{1} << model.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    const double e = double_sum_energy(model, spins_from_mask(mask, model.size())) -
                     model.constant();
    if (e < out.min) {
      out.min = e;
      out.count_min = 1;
    } else if (e == out.min) {
      ++out.count_min;
    }
    out.max = std::max(out.max, e);
  }
  return out;
}

std::vector<double> fit_basis(const std::function<double(double)>& f,
                              const std::vector<std::function<double(double)>>& basis,
                              const std::vector<double>& betas) {
  Eigen::MatrixXd design(betas.size(), basis.size());
  Eigen::VectorXd rhs(betas.size());
  for (std::size_t r = 0; r < betas.size(); ++r) {
    for (std::size_t c = 0; c < basis.size(); ++c) design(r, c) = basis[c](betas[r]);
    rhs(r) = f(betas[r]);
  }
  const Eigen::VectorXd x = design.colPivHouseholderQr().solve(rhs);
  return {x.data(), x.data() + x.size()};
}

double dense_beta_min(const std::function<double(double)>& f, std::size_t points) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < points; ++k) {
    best = std::min(best, f(std::numbers::pi * static_cast<double>(k) / points));
  }
  return best;
}

DenseOptimum dense_minimize(const std::function<double(double)>& g, double lo, double hi,
                            std::size_t points) {
  const double step = (hi - lo) / static_cast<double>(points);
  std::vector<double> values(points);
  for (std::size_t k = 0; k < points; ++k) values[k] = g(lo + step * k);
  std::vector<std::size_t> order(points);
  for (std::size_t k = 0; k < points; ++k) order[k] = k;
  const std::size_t keep = std::min<std::size_t>(8, points);
  std::partial_sort(order.begin(), order.begin() + keep, order.end(),
                    [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  DenseOptimum best{lo + step * order[0], values[order[0]]};
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  for (std::size_t r = 0; r < keep; ++r) {
    const double centre = lo + step * order[r];
    double a = centre - step;
    double b = centre + step;
    double x1 = b - ratio * (b - a);
    double x2 = a + ratio * (b - a);
    double f1 = g(x1);
    double f2 = g(x2);
    for (int it = 0; it < 80; ++it) {
      if (f1 < f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - ratio * (b - a);
        f1 = g(x1);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + ratio * (b - a);
        f2 = g(x2);
      }
    }
    const double x = f1 < f2 ? x1 : x2;
    const double fx = std::min(f1, f2);
    if (fx < best.value) best = {x, fx};
  }
  return best;
}

DenseOptimum dense_line_search(const IsingModel& model, const NeighborhoodIndex& index,
                               std::size_t points) {
  const SamplingPlan plan = sampling_plan(model, index);
  const double period = plan.period.value_or(std::numbers::pi);
  return dense_minimize([&](double g) { return univariate_cost(model, index, g).value; }, 0.0,
                        period, points);
}

}  // namespace qaoa1::testing

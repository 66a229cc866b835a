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

#include "qaoa1/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "qaoa1/errors.hpp"

namespace qaoa1 {

namespace {

struct Neighbor {
  Vertex other;
  double weight;
};

std::vector<std::vector<Neighbor>> adjacency(const IsingModel& model) {
  std::vector<std::vector<Neighbor>> adj(model.size());
  for (const Edge& e : model.edges()) {
    adj[e.u].push_back({e.v, e.weight});
    adj[e.v].push_back({e.u, e.weight});
  }
  return adj;
}

// Visits the first 2^free_bits states in Gray-code order with their
// constant-free energies; spins at or above free_bits stay +1.
template <typename Visit>
void gray_walk(const IsingModel& model, std::size_t free_bits, Visit&& visit) {
  const std::size_t n = model.size();
  const auto adj = adjacency(model);
  const auto h = model.fields();
  std::vector<double> local(n);
  std::vector<int> spin(n, 1);
  double energy = 0.0;
  for (const Edge& e : model.edges()) energy += e.weight;
  for (std::size_t i = 0; i < n; ++i) {
    local[i] = h[i];
    for (const Neighbor& nb : adj[i]) local[i] += nb.weight;
    energy += h[i];
  }
  std::uint64_t bits = 0;
  visit(bits, energy);
  const std::uint64_t count = std::uint64_t{1} << free_bits;
  for (std::uint64_t k = 1; k < count; ++k) {
    const auto i = static_cast<std::size_t>(std::countr_zero(k));
    energy -= 2.0 * spin[i] * local[i];
    const double delta = -2.0 * spin[i];
    for (const Neighbor& nb : adj[i]) local[nb.other] += delta * nb.weight;
    spin[i] = -spin[i];
    bits ^= std::uint64_t{1} << i;
    visit(bits, energy);
  }
}

void require_statevector_size(const IsingModel& model) {
  if (model.size() > kMaxStatevectorQubits) {
    throw CapacityError("statevector simulation supports at most " +
                        std::to_string(kMaxStatevectorQubits) + " spins, model has " +
                        std::to_string(model.size()));
  }
}

}  // namespace

std::vector<double> cost_table(const IsingModel& model) {
  require_statevector_size(model);
  std::vector<double> table(std::size_t{1} << model.size());
  gray_walk(model, model.size(), [&](std::uint64_t bits, double e) { table[bits] = e; });
  return table;
}

std::vector<std::complex<double>> qaoa_state(const IsingModel& model, const QaoaAngles& angles) {
  const std::vector<double> cost = cost_table(model);
  const std::size_t dim = cost.size();
  const double amp = 1.0 / std::sqrt(static_cast<double>(dim));
  std::vector<std::complex<double>> psi(dim);
  for (std::size_t z = 0; z < dim; ++z) psi[z] = std::polar(amp, -angles.gamma * cost[z]);

  const double c = std::cos(angles.beta);
  const std::complex<double> mis(0.0, -std::sin(angles.beta));
  for (std::size_t q = 0; q < model.size(); ++q) {
    const std::size_t stride = std::size_t{1} << q;
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
      for (std::size_t z = base; z < base + stride; ++z) {
        const std::complex<double> a0 = psi[z];
        const std::complex<double> a1 = psi[z + stride];
        psi[z] = c * a0 + mis * a1;
        psi[z + stride] = mis * a0 + c * a1;
      }
    }
  }
  return psi;
}

double statevector_expectation(const IsingModel& model, const QaoaAngles& angles) {
  const auto psi = qaoa_state(model, angles);
  const auto cost = cost_table(model);
  double total = 0.0;
  for (std::size_t z = 0; z < psi.size(); ++z) total += std::norm(psi[z]) * cost[z];
  return total;
}

std::vector<double> statevector_z(const IsingModel& model, const QaoaAngles& angles) {
  const auto psi = qaoa_state(model, angles);
  std::vector<double> z_exp(model.size(), 0.0);
  for (std::size_t z = 0; z < psi.size(); ++z) {
    const double p = std::norm(psi[z]);
    for (std::size_t i = 0; i < model.size(); ++i) z_exp[i] += ((z >> i) & 1u) ? -p : p;
  }
  return z_exp;
}

double statevector_zz(const IsingModel& model, const QaoaAngles& angles, Vertex u, Vertex v) {
  if (u >= model.size() || v >= model.size()) throw InputError("spin index out of range");
  const auto psi = qaoa_state(model, angles);
  double total = 0.0;
  for (std::size_t z = 0; z < psi.size(); ++z) {
    const bool odd = (((z >> u) ^ (z >> v)) & 1u) != 0;
    total += odd ? -std::norm(psi[z]) : std::norm(psi[z]);
  }
  return total;
}

GroundTruth brute_force(const IsingModel& model) {
  const std::size_t n = model.size();
  if (n > kMaxBruteForceSpins) {
    throw CapacityError("exhaustive search supports at most " +
                        std::to_string(kMaxBruteForceSpins) + " spins, model has " +
                        std::to_string(n));
  }
  if (n == 0) return {0.0, 0.0, SpinAssignment{}, 1};

  // Without fields s and -s share an energy, so the last spin is pinned to +1.
  const bool symmetric = !model.has_fields();
  const std::size_t free_bits = symmetric ? n - 1 : n;
  double e_min = 0.0, e_max = 0.0;
  std::uint64_t best = 0, count = 0;
  bool first = true;
  gray_walk(model, free_bits, [&](std::uint64_t bits, double e) {
    if (first) {
      e_min = e_max = e;
      best = bits;
      count = 1;
      first = false;
      return;
    }
    const double tol = 1e-12 * std::max(1.0, std::abs(e_min));
    if (e < e_min - tol) {
      e_min = e;
      best = bits;
      count = 1;
    } else if (std::abs(e - e_min) <= tol) {
      ++count;
    }
    e_max = std::max(e_max, e);
  });

  GroundTruth truth;
  truth.argmin = SpinAssignment::from_bits(best, n);
  truth.e_min = energy(model, truth.argmin) - model.constant();
  truth.e_max = e_max;
  truth.degeneracy = symmetric ? 2 * count : count;
  return truth;
}

double approximation_ratio(double achieved, const GroundTruth& truth) {
  if (!(truth.e_min < 0.0)) {
    throw DomainError("approximation ratio needs a negative minimum energy");
  }
  return achieved / truth.e_min;
}

}  // namespace qaoa1

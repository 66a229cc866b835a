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

#include "qaoa1/analytic.hpp"

#include <algorithm>
#include <cmath>

#include "qaoa1/errors.hpp"

namespace qaoa1 {

NeighborhoodIndex::NeighborhoodIndex(const IsingModel& model) {
  const std::size_t n = model.size();
  const auto& edges = model.edges();
  offsets_.assign(n + 1, 0);
  for (const Edge& e : edges) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  for (std::size_t i = 0; i < n; ++i) offsets_[i + 1] += offsets_[i];
  incidences_.resize(offsets_[n]);
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  ends_.reserve(edges.size());
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const Edge& e = edges[k];
    const auto id = static_cast<std::uint32_t>(k);
    incidences_[cursor[e.u]++] = {e.v, id};
    incidences_[cursor[e.v]++] = {e.u, id};
    ends_.emplace_back(e.u, e.v);
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::sort(incidences_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]),
              incidences_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]),
              [](const Incidence& a, const Incidence& b) { return a.neighbor < b.neighbor; });
  }

  common_offsets_.assign(edges.size() + 1, 0);
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const auto nu = neighbors(ends_[k].first);
    const auto nv = neighbors(ends_[k].second);
    std::size_t i = 0, j = 0;
    while (i < nu.size() && j < nv.size()) {
      if (nu[i].neighbor < nv[j].neighbor) {
        ++i;
      } else if (nv[j].neighbor < nu[i].neighbor) {
        ++j;
      } else {
        common_.push_back(nu[i].neighbor);
        ++i;
        ++j;
      }
    }
    common_offsets_[k + 1] = common_.size();
  }
}

std::vector<Vertex> NeighborhoodIndex::d_set(std::size_t edge) const {
  const auto [u, v] = ends_.at(edge);
  std::vector<Vertex> out;
  for (const Incidence& inc : neighbors(u)) {
    if (inc.neighbor != v) out.push_back(inc.neighbor);
  }
  return out;
}

std::vector<Vertex> NeighborhoodIndex::e_set(std::size_t edge) const {
  const auto [u, v] = ends_.at(edge);
  std::vector<Vertex> out;
  for (const Incidence& inc : neighbors(v)) {
    if (inc.neighbor != u) out.push_back(inc.neighbor);
  }
  return out;
}

bool NeighborhoodIndex::matches(const IsingModel& model) const {
  if (vertex_count() != model.size() || edge_count() != model.edges().size()) return false;
  const auto& edges = model.edges();
  for (std::size_t k = 0; k < edges.size(); ++k) {
    if (ends_[k].first != edges[k].u || ends_[k].second != edges[k].v) return false;
  }
  return true;
}

NeighborhoodIndex build_index(const IsingModel& model) { return NeighborhoodIndex(model); }

namespace {

void require_index(const IsingModel& model, const NeighborhoodIndex& index) {
  if (!index.matches(model)) throw InputError("neighborhood index was built for another model");
}

void require_field_free(const IsingModel& model) {
  if (model.has_fields()) throw InputError("model has nonzero fields");
}

}  // namespace

TermTable term_table(const IsingModel& model, const NeighborhoodIndex& index, double gamma) {
  require_index(model, index);
  const auto& edges = model.edges();
  const auto h = model.fields();
  const std::size_t m = edges.size();
  const std::size_t n = model.size();

  // Phase angles 2*J*gamma and 2*h*gamma.
  std::vector<double> ce(m), se(m), cv(n), sv(n);
  for (std::size_t k = 0; k < m; ++k) {
    const double g = 2.0 * edges[k].weight * gamma;
    ce[k] = std::cos(g);
    se[k] = std::sin(g);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double g = 2.0 * h[i] * gamma;
    cv[i] = std::cos(g);
    sv[i] = std::sin(g);
  }

  TermTable out;
  out.edge_sin4.resize(m);
  out.edge_sin2sq.resize(m);
  out.vertex_sin2.resize(n);

  for (std::size_t k = 0; k < m; ++k) {
    const Vertex u = edges[k].u;
    const Vertex v = edges[k].v;
    const auto nu = index.neighbors(u);
    const auto nv = index.neighbors(v);

    double prod_d = 1.0, prod_e = 1.0;        // over d and e
    double only_d = 1.0, only_e = 1.0;        // over d \ F and e \ F
    double common_plus = 1.0, common_minus = 1.0;
    std::size_t i = 0, j = 0;
    while (i < nu.size() || j < nv.size()) {
      const Vertex a = i < nu.size() ? nu[i].neighbor : static_cast<Vertex>(-1);
      const Vertex b = j < nv.size() ? nv[j].neighbor : static_cast<Vertex>(-1);
      if (a < b) {
        if (a != v) {
          prod_d *= ce[nu[i].edge];
          only_d *= ce[nu[i].edge];
        }
        ++i;
      } else if (b < a) {
        if (b != u) {
          prod_e *= ce[nv[j].edge];
          only_e *= ce[nv[j].edge];
        }
        ++j;
      } else {
        const std::uint32_t uf = nu[i].edge;
        const std::uint32_t vf = nv[j].edge;
        prod_d *= ce[uf];
        prod_e *= ce[vf];
        common_plus *= ce[uf] * ce[vf] - se[uf] * se[vf];
        common_minus *= ce[uf] * ce[vf] + se[uf] * se[vf];
        ++i;
        ++j;
      }
    }
    const double cos_sum = cv[u] * cv[v] - sv[u] * sv[v];
    const double cos_diff = cv[u] * cv[v] + sv[u] * sv[v];
    out.edge_sin4[k] = 0.5 * se[k] * (cv[v] * prod_e + cv[u] * prod_d);
    out.edge_sin2sq[k] = -0.5 * only_e * only_d * (cos_sum * common_plus - cos_diff * common_minus);
  }

  for (std::size_t v = 0; v < n; ++v) {
    if (sv[v] == 0.0) continue;
    double prod = sv[v];
    for (const Incidence& inc : index.neighbors(static_cast<Vertex>(v))) prod *= ce[inc.edge];
    out.vertex_sin2[v] = prod;
  }
  return out;
}

CoefficientTriple coefficients_with_fields(const IsingModel& model,
                                           const NeighborhoodIndex& index, double gamma) {
  const TermTable t = term_table(model, index, gamma);
  const auto& edges = model.edges();
  const auto h = model.fields();
  CoefficientTriple out;
  for (std::size_t k = 0; k < edges.size(); ++k) {
    out.b += edges[k].weight * t.edge_sin4[k];
    out.c += edges[k].weight * t.edge_sin2sq[k];
  }
  for (std::size_t i = 0; i < h.size(); ++i) out.a += h[i] * t.vertex_sin2[i];
  return out;
}

CoefficientTriple coefficients_field_free(const IsingModel& model, const NeighborhoodIndex& index,
                                          double gamma) {
  require_field_free(model);
  const CoefficientTriple t = coefficients_with_fields(model, index, gamma);
  return {t.b, -t.c, 0.0};
}

double evaluate_field_free(const CoefficientTriple& coeffs, double beta) {
  const double s2 = std::sin(2.0 * beta);
  return coeffs.a * std::sin(4.0 * beta) - coeffs.b * s2 * s2;
}

double evaluate_with_fields(const CoefficientTriple& coeffs, double beta) {
  const double s2 = std::sin(2.0 * beta);
  return coeffs.a * s2 + coeffs.b * std::sin(4.0 * beta) + coeffs.c * s2 * s2;
}

double expectation_with_fields(const IsingModel& model, const NeighborhoodIndex& index,
                               const QaoaAngles& angles) {
  return evaluate_with_fields(coefficients_with_fields(model, index, angles.gamma), angles.beta) +
         model.constant();
}

double expectation_field_free(const IsingModel& model, const NeighborhoodIndex& index,
                              const QaoaAngles& angles) {
  return evaluate_field_free(coefficients_field_free(model, index, angles.gamma), angles.beta) +
         model.constant();
}

}  // namespace qaoa1

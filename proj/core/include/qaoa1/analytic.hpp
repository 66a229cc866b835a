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
#include <span>
#include <utility>
#include <vector>

#include "qaoa1/ising.hpp"

namespace qaoa1 {

struct QaoaAngles {
  double gamma = 0.0;
  double beta = 0.0;
};

/// Coefficients of the beta basis at a fixed gamma. With fields the landscape
/// is a*sin(2b) + b*sin(4b) + c*sin^2(2b); without fields it is
/// a*sin(4b) - b*sin^2(2b) and c is zero.
struct CoefficientTriple {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

struct Incidence {
  Vertex neighbor = 0;
  std::uint32_t edge = 0;
};

/// Adjacency lists sorted by neighbor id, plus the common neighbourhood of
/// every edge. For edge {u, v}: d = N(u) \ {v}, e = N(v) \ {u}, F = N(u) & N(v).
class NeighborhoodIndex {
 public:
  NeighborhoodIndex() = default;
  explicit NeighborhoodIndex(const IsingModel& model);

  std::size_t vertex_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return ends_.size(); }

  std::span<const Incidence> neighbors(Vertex i) const {
    return {incidences_.data() + offsets_[i], incidences_.data() + offsets_[i + 1]};
  }
  std::size_t degree(Vertex i) const { return offsets_[i + 1] - offsets_[i]; }
  std::span<const Vertex> common(std::size_t edge) const {
    return {common_.data() + common_offsets_[edge], common_.data() + common_offsets_[edge + 1]};
  }

  std::vector<Vertex> d_set(std::size_t edge) const;
  std::vector<Vertex> e_set(std::size_t edge) const;

  /// True when the index was built from a model with this vertex and edge layout.
  bool matches(const IsingModel& model) const;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<Incidence> incidences_;
  std::vector<std::pair<Vertex, Vertex>> ends_;
  std::vector<std::size_t> common_offsets_;
  std::vector<Vertex> common_;
};

NeighborhoodIndex build_index(const IsingModel& model);

/// Beta-basis coefficients of every single observable at a fixed gamma.
///   <Z_u Z_v> = edge_sin4[k] * sin(4b) + edge_sin2sq[k] * sin^2(2b)
///   <Z_i>     = vertex_sin2[i] * sin(2b)
struct TermTable {
  std::vector<double> edge_sin4;
  std::vector<double> edge_sin2sq;
  std::vector<double> vertex_sin2;
};

TermTable term_table(const IsingModel& model, const NeighborhoodIndex& index, double gamma);

/// <gamma, beta| H |gamma, beta> including the model constant.
double expectation_with_fields(const IsingModel& model, const NeighborhoodIndex& index,
                               const QaoaAngles& angles);
/// Same value for field-free models; throws InputError when a field is set.
double expectation_field_free(const IsingModel& model, const NeighborhoodIndex& index,
                              const QaoaAngles& angles);

/// (A, B, 0) with <H> - constant = A sin(4b) - B sin^2(2b).
CoefficientTriple coefficients_field_free(const IsingModel& model, const NeighborhoodIndex& index,
                                          double gamma);
/// (A, B, C) with <H> - constant = A sin(2b) + B sin(4b) + C sin^2(2b).
CoefficientTriple coefficients_with_fields(const IsingModel& model,
                                           const NeighborhoodIndex& index, double gamma);

double evaluate_field_free(const CoefficientTriple& coeffs, double beta);
double evaluate_with_fields(const CoefficientTriple& coeffs, double beta);

}  // namespace qaoa1

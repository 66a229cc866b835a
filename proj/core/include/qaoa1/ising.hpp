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
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace qaoa1 {

using Vertex = std::uint32_t;

/// One undirected coupling. `weight` is the full coefficient of Z_u Z_v in
/// the Hamiltonian (the ordered double-sum J_uv + J_vu folded into one value).
struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  double weight = 0.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Whether every coupling and field becomes an integer after multiplying by
/// `scale`. Integral models have a landscape periodic in gamma with period
/// pi * scale.
struct WeightClass {
  bool integral = true;
  std::int64_t scale = 1;

  friend bool operator==(const WeightClass&, const WeightClass&) = default;
};

inline constexpr std::int64_t kMaxWeightScale = 1'000'000;

/// Immutable Ising Hamiltonian
///
///   H(s) = sum_{u<v} J_uv s_u s_v + sum_i h_i s_i + constant
///
/// Edges are stored once per unordered pair with u < v, sorted
/// lexicographically; an edge's position in `edges()` is its id. Zero
/// couplings are dropped on construction.
class IsingModel {
 public:
  IsingModel() = default;
  IsingModel(std::size_t n, std::vector<Edge> edges, std::vector<double> fields = {},
             double constant = 0.0);

  std::size_t size() const noexcept { return n_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::span<const double> fields() const noexcept { return fields_; }
  double field(Vertex i) const { return fields_.at(i); }
  double constant() const noexcept { return constant_; }
  WeightClass weight_class() const noexcept { return weight_class_; }
  bool has_fields() const noexcept;

  /// Coupling between u and v, 0 when absent. O(log |E|).
  double coupling(Vertex u, Vertex v) const;
  /// Edge id of {u, v}, or -1 when absent.
  std::ptrdiff_t find_edge(Vertex u, Vertex v) const;

  IsingModel with_constant(double constant) const;

  friend bool operator==(const IsingModel& a, const IsingModel& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_ && a.fields_ == b.fields_ &&
           a.constant_ == b.constant_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<double> fields_;
  double constant_ = 0.0;
  WeightClass weight_class_;
};

/// Smallest scale s <= kMaxWeightScale making every value integral, or the
/// `real` class when none exists.
WeightClass classify_weights(std::span<const double> values);

/// A configuration s in {-1, +1}^n.
class SpinAssignment {
 public:
  SpinAssignment() = default;
  explicit SpinAssignment(std::vector<std::int8_t> spins);
  /// Spin i is -1 when bit i of `bits` is set.
  static SpinAssignment from_bits(std::uint64_t bits, std::size_t n);

  std::size_t size() const noexcept { return spins_.size(); }
  std::int8_t operator[](std::size_t i) const { return spins_[i]; }
  std::span<const std::int8_t> spins() const noexcept { return spins_; }
  SpinAssignment flipped() const;

  friend bool operator==(const SpinAssignment&, const SpinAssignment&) = default;

 private:
  std::vector<std::int8_t> spins_;
};

/// f(x) = x^T A x + b^T x over x in {0,1}^n; `a` is row-major n x n.
struct QuboModel {
  std::size_t n = 0;
  std::vector<double> a;
  std::vector<double> b;

  double at(std::size_t i, std::size_t j) const { return a[i * n + j]; }
  double evaluate(std::span<const std::uint8_t> x) const;
};

/// Energy including the model's constant.
double energy(const IsingModel& model, const SpinAssignment& s);

/// Ising model with f(x) = energy(result, 2x - 1) for every binary x.
IsingModel from_qubo(const QuboModel& q);

/// Folds the fields into couplings to an ancilla spin appended as vertex n;
/// energy(model, s) == energy(result, (s, +1)). Field-free models are
/// returned unchanged.
IsingModel eliminate_fields(const IsingModel& model);

// -- random instances -------------------------------------------------------

struct GaussianRounded {
  double mean = 0.0;
  double variance = 1.0;
};
struct UniformInt {
  int lo = -1;
  int hi = 1;
};
struct PlusMinusOne {};

using WeightDist = std::variant<GaussianRounded, UniformInt, PlusMinusOne>;

/// Parses "gaussian:MEAN:VAR", "uniform:LO:HI" or "pm1".
WeightDist parse_weight_dist(const std::string& text);
std::string to_string(const WeightDist& dist);

IsingModel generate_erdos_renyi(std::size_t n, double p, const WeightDist& dist,
                                std::uint64_t seed);

/// Random simple D-regular graph by the pairing model; restarts on a dead end,
/// at most 1000 restarts.
IsingModel generate_d_regular(std::size_t n, std::size_t degree, const WeightDist& dist,
                              std::uint64_t seed);

/// Random D-regular bipartite graph on 2*side vertices (triangle-free): left
/// vertex i joins right vertex (i + o_k) mod side for D distinct random offsets,
/// followed by a random relabelling of the right side.
IsingModel generate_bipartite_regular(std::size_t side, std::size_t degree,
                                      const WeightDist& dist, std::uint64_t seed);

/// Replaces every field by a nonzero draw from `dist`.
IsingModel with_random_fields(const IsingModel& model, const WeightDist& dist,
                              std::uint64_t seed);

// -- edge-list files --------------------------------------------------------

IsingModel read_model(std::istream& in);
void write_model(std::ostream& out, const IsingModel& model);
IsingModel load_model(const std::filesystem::path& path);
void save_model(const IsingModel& model, const std::filesystem::path& path);

/// "%.17g" rendering; integers print without a fraction.
std::string format_number(double value);

}  // namespace qaoa1

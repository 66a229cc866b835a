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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "qaoa1/analytic.hpp"
#include "qaoa1/errors.hpp"
#include "qaoa1/oracle.hpp"

namespace qaoa1 {
namespace {

constexpr double kPi = std::numbers::pi;

std::vector<Vertex> as_vector(std::span<const Vertex> s) { return {s.begin(), s.end()}; }

TEST(NeighborhoodIndexTest, SingleEdge) {
  const IsingModel m(2, {{0, 1, 1.0}});
  const NeighborhoodIndex idx = build_index(m);
  EXPECT_TRUE(idx.d_set(0).empty());
  EXPECT_TRUE(idx.e_set(0).empty());
  EXPECT_TRUE(idx.common(0).empty());
}

TEST(NeighborhoodIndexTest, Triangle) {
  const IsingModel m(3, {{0, 1, 1.0}, {0, 2, 1.0}, {1, 2, 1.0}});
  const NeighborhoodIndex idx = build_index(m);
  EXPECT_EQ(as_vector(idx.common(0)), std::vector<Vertex>{2});
  EXPECT_EQ(idx.d_set(0), std::vector<Vertex>{2});
  EXPECT_EQ(idx.e_set(0), std::vector<Vertex>{2});
}

TEST(NeighborhoodIndexTest, Path) {
  const IsingModel m(3, {{0, 1, 1.0}, {1, 2, 1.0}});
  const NeighborhoodIndex idx = build_index(m);
  EXPECT_EQ(idx.e_set(0), std::vector<Vertex>{2});
  EXPECT_TRUE(idx.d_set(0).empty());
  EXPECT_TRUE(idx.common(0).empty());
}

TEST(NeighborhoodIndexTest, SetsMatchDefinitions) {
  std::mt19937_64 rng(4);
  const IsingModel m = testing::random_integer_model(12, 0.4, -3, 3, false, rng);
  const NeighborhoodIndex idx = build_index(m);
  for (std::size_t k = 0; k < m.edges().size(); ++k) {
    const Edge& e = m.edges()[k];
    std::vector<Vertex> d, ev, f;
    for (Vertex w = 0; w < m.size(); ++w) {
      const bool nu = m.coupling(e.u, w) != 0.0;
      const bool nv = m.coupling(e.v, w) != 0.0;
      if (nu && w != e.v) d.push_back(w);
      if (nv && w != e.u) ev.push_back(w);
      if (nu && nv) f.push_back(w);
    }
    EXPECT_EQ(idx.d_set(k), d);
    EXPECT_EQ(idx.e_set(k), ev);
    EXPECT_EQ(as_vector(idx.common(k)), f);
  }
}

TEST(ExpectationTest, ZeroAtGammaZero) {
  std::mt19937_64 rng(2);
  const IsingModel m = testing::random_integer_model(9, 0.5, -5, 5, true, rng).with_constant(3);
  const NeighborhoodIndex idx = build_index(m);
  for (double beta : {0.1, 0.7, 2.0}) {
    EXPECT_NEAR(expectation_with_fields(m, idx, {0.0, beta}), 3.0, 1e-12);
  }
}

TEST(ExpectationTest, SingleSpin) {
  const IsingModel m(1, {}, {1.0});
  EXPECT_NEAR(expectation_with_fields(m, build_index(m), {kPi / 4, kPi / 4}), 1.0, 1e-15);
}

TEST(ExpectationTest, SingleEdgeFieldFree) {
  const IsingModel m(2, {{0, 1, 1.0}});
  const NeighborhoodIndex idx = build_index(m);
  EXPECT_NEAR(expectation_field_free(m, idx, {kPi / 4, 3 * kPi / 8}), -1.0, 1e-15);
  for (double g : {0.1, 0.4, 1.3}) {
    for (double b : {0.2, 0.9}) {
      EXPECT_NEAR(expectation_field_free(m, idx, {g, b}), std::sin(4 * b) * std::sin(2 * g),
                  1e-15);
    }
  }
}

TEST(ExpectationTest, TriangleAtHalfPi) {
  const IsingModel m(3, {{0, 1, 1.0}, {0, 2, 1.0}, {1, 2, 1.0}});
  EXPECT_NEAR(expectation_field_free(m, build_index(m), {kPi / 2, 0.3}), 0.0, 1e-12);
}

TEST(ExpectationTest, FieldFreeRejectsFields) {
  const IsingModel m(2, {{0, 1, 1.0}}, {0.0, 1.0});
  EXPECT_THROW(expectation_field_free(m, build_index(m), {0.1, 0.1}), InputError);
  EXPECT_THROW(coefficients_field_free(m, build_index(m), 0.1), InputError);
}

TEST(ExpectationTest, MismatchedIndexRejected) {
  const IsingModel a(3, {{0, 1, 1.0}});
  const IsingModel b(3, {{1, 2, 1.0}});
  EXPECT_THROW(expectation_with_fields(a, build_index(b), {0.1, 0.1}), InputError);
}

TEST(ExpectationTest, MatchesStatevector) {
  std::mt19937_64 rng(100);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 2 + t % 9;
    const bool fields = t % 2 == 0;
    const IsingModel m = testing::random_integer_model(n, 0.5, -5, 5, fields, rng);
    const NeighborhoodIndex idx = build_index(m);
    const QaoaAngles a{angle(rng), angle(rng)};
    const double sv = statevector_expectation(m, a);
    EXPECT_NEAR(expectation_with_fields(m, idx, a), sv, 1e-9);
    if (!fields) EXPECT_NEAR(expectation_field_free(m, idx, a), sv, 1e-9);
  }
}

TEST(ExpectationTest, Symmetries) {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> angle(-3.0, 3.0);
  for (int t = 0; t < 20; ++t) {
    IsingModel m = testing::random_integer_model(8, 0.5, -5, 5, t % 2 == 0, rng);
    if (t % 4 == 1) {
      std::vector<Edge> halves;
      for (const Edge& e : m.edges()) halves.push_back({e.u, e.v, e.weight / 2});
      m = IsingModel(m.size(), halves, {m.fields().begin(), m.fields().end()});
    }
    const NeighborhoodIndex idx = build_index(m);
    const double g = angle(rng);
    const double b = angle(rng);
    const double base = expectation_with_fields(m, idx, {g, b});
    EXPECT_NEAR(expectation_with_fields(m, idx, {g, b + kPi}), base, 1e-12);
    EXPECT_NEAR(expectation_with_fields(m, idx, {-g, -b}), base, 1e-12);
    const double period = kPi * m.weight_class().scale;
    EXPECT_NEAR(expectation_with_fields(m, idx, {g + period, b}), base, 1e-11);
  }
}

TEST(CoefficientsTest, SingleEdgeFieldFree) {
  const IsingModel m(2, {{0, 1, 1.0}});
  const auto c = coefficients_field_free(m, build_index(m), kPi / 4);
  EXPECT_NEAR(c.a, 1.0, 1e-15);
  EXPECT_NEAR(c.b, 0.0, 1e-15);
  EXPECT_EQ(c.c, 0.0);
}

TEST(CoefficientsTest, SingleSpinWithFields) {
  const IsingModel m(1, {}, {1.0});
  const auto c = coefficients_with_fields(m, build_index(m), kPi / 4);
  EXPECT_NEAR(c.a, 1.0, 1e-15);
  EXPECT_EQ(c.b, 0.0);
  EXPECT_EQ(c.c, 0.0);
}

TEST(CoefficientsTest, ZeroAtGammaZero) {
  std::mt19937_64 rng(3);
  const IsingModel m = testing::random_integer_model(7, 0.6, -5, 5, true, rng);
  const auto c = coefficients_with_fields(m, build_index(m), 0.0);
  EXPECT_EQ(c.a, 0.0);
  EXPECT_EQ(c.b, 0.0);
  EXPECT_EQ(c.c, 0.0);
  const IsingModel f = testing::random_integer_model(7, 0.6, -5, 5, false, rng);
  const auto cf = coefficients_field_free(f, build_index(f), 0.0);
  EXPECT_EQ(cf.a, 0.0);
  EXPECT_EQ(cf.b, 0.0);
}

TEST(CoefficientsTest, FieldFreeMatchesLeastSquaresFit) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 10; ++t) {
    const IsingModel m = testing::random_integer_model(7, 0.6, -5, 5, false, rng);
    const NeighborhoodIndex idx = build_index(m);
    const double g = 0.1 + 0.27 * t;
    std::vector<double> betas;
    for (int k = 0; k < 8; ++k) betas.push_back(0.13 + 0.37 * k);
    const auto fit = testing::fit_basis(
        [&](double b) { return statevector_expectation(m, {g, b}); },
        {[](double b) { return std::sin(4 * b); },
         [](double b) { return -std::sin(2 * b) * std::sin(2 * b); }},
        betas);
    const auto c = coefficients_field_free(m, idx, g);
    EXPECT_NEAR(c.a, fit[0], 1e-10);
    EXPECT_NEAR(c.b, fit[1], 1e-10);
  }
}

TEST(CoefficientsTest, WithFieldsMatchesLeastSquaresFit) {
  std::mt19937_64 rng(32);
  for (int t = 0; t < 10; ++t) {
    const IsingModel m = testing::random_integer_model(7, 0.6, -5, 5, true, rng);
    const NeighborhoodIndex idx = build_index(m);
    const double g = 0.05 + 0.31 * t;
    std::vector<double> betas;
    for (int k = 0; k < 12; ++k) betas.push_back(0.07 + 0.26 * k);
    const auto fit = testing::fit_basis(
        [&](double b) { return statevector_expectation(m, {g, b}); },
        {[](double b) { return std::sin(2 * b); }, [](double b) { return std::sin(4 * b); },
         [](double b) { return std::sin(2 * b) * std::sin(2 * b); }},
        betas);
    const auto c = coefficients_with_fields(m, idx, g);
    EXPECT_NEAR(c.a, fit[0], 1e-10);
    EXPECT_NEAR(c.b, fit[1], 1e-10);
    EXPECT_NEAR(c.c, fit[2], 1e-10);
  }
}

TEST(CoefficientsTest, ReproduceExpectationForAllBeta) {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> angle(0.0, kPi);
  for (int t = 0; t < 10; ++t) {
    const bool fields = t % 2 == 0;
    const IsingModel m =
        testing::random_integer_model(9, 0.5, -5, 5, fields, rng).with_constant(1.5);
    const NeighborhoodIndex idx = build_index(m);
    const double g = angle(rng);
    const auto c = coefficients_with_fields(m, idx, g);
    for (int k = 0; k < 50; ++k) {
      const double b = angle(rng);
      EXPECT_NEAR(expectation_with_fields(m, idx, {g, b}) - m.constant(),
                  evaluate_with_fields(c, b), 1e-10);
      if (!fields) {
        EXPECT_NEAR(expectation_field_free(m, idx, {g, b}) - m.constant(),
                    evaluate_field_free(coefficients_field_free(m, idx, g), b), 1e-10);
      }
    }
  }
}

TEST(TermTableTest, ObservablesMatchStatevector) {
  std::mt19937_64 rng(34);
  const IsingModel m = testing::random_integer_model(8, 0.5, -5, 5, true, rng);
  const NeighborhoodIndex idx = build_index(m);
  const QaoaAngles a{0.37, 1.1};
  const TermTable t = term_table(m, idx, a.gamma);
  const auto z = statevector_z(m, a);
  for (std::size_t i = 0; i < m.size(); ++i) {
    EXPECT_NEAR(t.vertex_sin2[i] * std::sin(2 * a.beta), z[i], 1e-10);
  }
  for (std::size_t k = 0; k < m.edges().size(); ++k) {
    const Edge& e = m.edges()[k];
    const double s2 = std::sin(2 * a.beta);
    EXPECT_NEAR(t.edge_sin4[k] * std::sin(4 * a.beta) + t.edge_sin2sq[k] * s2 * s2,
                statevector_zz(m, a, e.u, e.v), 1e-10);
  }
}

}  // namespace
}  // namespace qaoa1

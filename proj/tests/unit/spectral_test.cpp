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
#include <sstream>

#include "oracles.hpp"
#include "qaoa1/errors.hpp"
#include "qaoa1/optimizer.hpp"
#include "qaoa1/oracle.hpp"
#include "qaoa1/spectral.hpp"

namespace qaoa1 {
namespace {

constexpr double kPi = std::numbers::pi;

IsingModel complete_graph(std::size_t n, double w) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) edges.push_back({u, v, w});
  }
  return IsingModel(n, edges);
}

LandscapeSamples fixed_samples(const IsingModel& m, double beta,
                               std::optional<std::size_t> count = std::nullopt) {
  const NeighborhoodIndex idx = build_index(m);
  return sample_landscape(m, idx, sampling_plan(m, idx), BetaPolicy::fixed(beta), count);
}

TEST(MaxFrequencyTest, SingleEdge) {
  EXPECT_EQ(max_angular_frequency(IsingModel(2, {{0, 1, 1.0}})), 2.0);
}

TEST(MaxFrequencyTest, TriangleFreeRegular) {
  for (std::size_t d : {3u, 4u, 5u}) {
    const IsingModel m = generate_bipartite_regular(2 * d + 2, d, PlusMinusOne{}, d);
    EXPECT_EQ(max_angular_frequency(m), 2.0 * d);
  }
}

TEST(MaxFrequencyTest, CompleteGraphK5) {
  const IsingModel m = complete_graph(5, 1.0);
  EXPECT_EQ(max_angular_frequency(m), 12.0);
  const LandscapeSamples s = fixed_samples(m, 0.3, 64);
  EXPECT_LE(empirical_bandwidth(s), 12.0 + 1e-9);
}

TEST(MaxFrequencyTest, SingleSpinUsesFieldAndCouplings) {
  const IsingModel m(3, {{0, 1, 2.0}, {0, 2, -1.0}}, {3.0, 0.0, 0.0});
  EXPECT_GE(max_angular_frequency(m), 2.0 * (3.0 + 2.0 + 1.0));
}

TEST(MaxFrequencyTest, SoundOnRandomModels) {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 15; ++t) {
    const IsingModel m = testing::random_integer_model(8, 0.5, -3, 3, t % 2 == 1, rng);
    const double omega = max_angular_frequency(m);
    const LandscapeSamples s = fixed_samples(m, 0.2 + 0.1 * t, 4 * (std::size_t(omega) + 4));
    EXPECT_LE(empirical_bandwidth(s), omega + 2.0 + 1e-9);
  }
}

TEST(SamplingPlanTest, TriangleFreeSpacing) {
  const IsingModel m = generate_bipartite_regular(8, 3, PlusMinusOne{}, 1);
  const SamplingPlan plan = sampling_plan(m);
  EXPECT_NEAR(plan.delta_gamma, kPi / (6.0 + kPi), 1e-15);
  ASSERT_TRUE(plan.period.has_value());
  EXPECT_NEAR(*plan.period, kPi, 0.0);
  EXPECT_EQ(*plan.num_samples, static_cast<std::size_t>(std::ceil(kPi / plan.delta_gamma)));
}

TEST(SamplingPlanTest, SherringtonKirkpatrickStyle) {
  const std::size_t n = 8;
  std::mt19937_64 rng(9);
  std::vector<Edge> edges;
  std::vector<double> h(n);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) edges.push_back({u, v, rng() % 2 ? 1.0 : -1.0});
    h[u] = rng() % 2 ? 1.0 : -1.0;
  }
  const IsingModel m(n, edges, h);
  const SamplingPlan plan = sampling_plan(m);
  EXPECT_GE(plan.omega_max, 2.0 * n);
  EXPECT_LE(plan.omega_max, 4.0 * n);
  EXPECT_NEAR(plan.delta_gamma, kPi / (plan.omega_max + kPi), 1e-15);
}

TEST(SamplingPlanTest, EdgelessModel) {
  const SamplingPlan plan = sampling_plan(IsingModel(4, {}));
  EXPECT_EQ(plan.omega_max, 0.0);
  EXPECT_EQ(plan.delta_gamma, 1.0);
  EXPECT_EQ(*plan.period, kPi);
  EXPECT_EQ(*plan.num_samples, 4u);
}

TEST(SamplingPlanTest, ScaledAndRealWeights) {
  const SamplingPlan half = sampling_plan(IsingModel(2, {{0, 1, 0.5}}));
  EXPECT_NEAR(*half.period, 2 * kPi, 1e-15);
  const SamplingPlan real = sampling_plan(IsingModel(2, {{0, 1, std::sqrt(2.0)}}));
  EXPECT_FALSE(real.period.has_value());
  EXPECT_FALSE(real.num_samples.has_value());
  EXPECT_NEAR(real.omega_max, 2 * std::sqrt(2.0), 1e-15);
}

TEST(FieldEliminationRatioTest, Definitions) {
  EXPECT_THROW(sampling_ratio_after_field_elimination(IsingModel(2, {{0, 1, 1.0}})), InputError);
  const IsingModel pair(2, {{0, 1, 1.0}}, {1.0, -1.0});
  EXPECT_GE(sampling_ratio_after_field_elimination(pair), 1.0);

  std::vector<Edge> star;
  for (Vertex v = 1; v < 5; ++v) star.push_back({0, v, v % 2 ? 1.0 : -1.0});
  const IsingModel m(5, star, {1.0, -1.0, 1.0, 1.0, -1.0});
  const double ratio = sampling_ratio_after_field_elimination(m);
  EXPECT_DOUBLE_EQ(ratio, sampling_plan(m).delta_gamma /
                              sampling_plan(eliminate_fields(m)).delta_gamma);
  EXPECT_GE(ratio, 1.0);

  std::vector<Edge> ring;
  for (Vertex v = 0; v < 8; ++v) {
    ring.push_back({v, static_cast<Vertex>((v + 1) % 8), v % 3 ? 1.0 : -1.0});
  }
  const IsingModel cycle(8, ring, std::vector<double>(8, 1.0));
  const double cycle_ratio = sampling_ratio_after_field_elimination(cycle);
  EXPECT_GT(cycle_ratio, 1.5);
  EXPECT_LE(cycle_ratio, 8.0 / 3.0);
}

TEST(SampleLandscapeTest, EdgelessIsConstant) {
  const IsingModel m = IsingModel(3, {}).with_constant(2.0);
  for (double v : fixed_samples(m, 0.4).values) EXPECT_EQ(v, 2.0);
}

TEST(SampleLandscapeTest, SingleEdgeClosedForm) {
  const LandscapeSamples s = fixed_samples(IsingModel(2, {{0, 1, 1.0}}), 3 * kPi / 8);
  ASSERT_EQ(s.gammas.size(), 6u);
  for (std::size_t k = 0; k < s.gammas.size(); ++k) {
    EXPECT_NEAR(s.values[k], -std::sin(2 * s.gammas[k]), 1e-15);
    EXPECT_NEAR(s.gammas[k], k * s.step, 1e-15);
  }
}

TEST(SampleLandscapeTest, Periodicity) {
  std::mt19937_64 rng(10);
  const IsingModel m = testing::random_integer_model(8, 0.5, -5, 5, true, rng);
  const NeighborhoodIndex idx = build_index(m);
  const SamplingPlan plan = sampling_plan(m, idx);
  const double p = *plan.period;
  const auto a = sample_landscape(m, idx, plan, BetaPolicy::fixed(0.3));
  const auto b = sample_landscape(m, idx, plan, BetaPolicy::fixed(0.3), a.gammas.size(),
                                  SampleRange{p, 2 * p});
  for (std::size_t k = 0; k < a.values.size(); ++k) EXPECT_NEAR(a.values[k], b.values[k], 1e-12);
}

TEST(SampleLandscapeTest, PolicyErrors) {
  const IsingModel m(2, {{0, 1, 1.0}});
  const NeighborhoodIndex idx = build_index(m);
  BetaPolicy broken;
  broken.kind = BetaPolicy::Kind::analytic_optimal;
  EXPECT_THROW(sample_landscape(m, idx, sampling_plan(m, idx), broken), ConfigError);
  const IsingModel real(2, {{0, 1, std::sqrt(3.0)}});
  const NeighborhoodIndex ridx = build_index(real);
  EXPECT_THROW(sample_landscape(real, ridx, sampling_plan(real, ridx), BetaPolicy::fixed(0.1)),
               InputError);
  const auto ranged = sample_landscape(real, ridx, sampling_plan(real, ridx),
                                       BetaPolicy::fixed(0.1), 10, SampleRange{0.0, 1.0});
  EXPECT_EQ(ranged.gammas.size(), 10u);
}

TEST(SampleLandscapeTest, AnalyticOptimalPolicy) {
  const IsingModel m(2, {{0, 1, 1.0}});
  const NeighborhoodIndex idx = build_index(m);
  const auto s = sample_landscape(
      m, idx, sampling_plan(m, idx), BetaPolicy::analytic_optimal([&](double g) {
        const auto u = univariate_cost(m, idx, g);
        return std::pair{u.value, u.beta_star};
      }));
  ASSERT_EQ(s.beta_star.size(), s.values.size());
  for (std::size_t k = 0; k < s.values.size(); ++k) {
    EXPECT_NEAR(s.values[k], -std::abs(std::sin(2 * s.gammas[k])), 1e-12);
  }
  std::ostringstream csv;
  write_landscape_csv(csv, s);
  EXPECT_NE(csv.str().find("gamma,value,beta_star\n"), std::string::npos);
}

TEST(LandscapeCsvTest, HeaderAndRows) {
  const LandscapeSamples s = fixed_samples(IsingModel(2, {{0, 1, 1.0}}), 3 * kPi / 8);
  std::ostringstream out;
  write_landscape_csv(out, s);
  std::istringstream in(out.str());
  std::string line;
  std::size_t comments = 0;
  std::size_t rows = 0;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.rfind('#', 0) == 0) {
      ++comments;
    } else if (line == "gamma,value") {
      header = true;
    } else {
      ++rows;
    }
  }
  EXPECT_TRUE(header);
  EXPECT_GE(comments, 5u);
  EXPECT_EQ(rows, *s.plan.num_samples);
  EXPECT_NE(out.str().find("# omega_max=2\n"), std::string::npos);
}

TEST(ReconstructTest, Constant) {
  const auto f = reconstruct(fixed_samples(IsingModel(2, {}).with_constant(5), 0.2));
  for (double g : {0.0, 0.3, 2.9}) EXPECT_NEAR(f(g), 5.0, 1e-14);
}

TEST(ReconstructTest, SingleEdge) {
  const double beta = 0.4;
  const auto f = reconstruct(fixed_samples(IsingModel(2, {{0, 1, 1.0}}), beta));
  for (int k = 0; k < 100; ++k) {
    const double g = 0.0371 * k;
    EXPECT_NEAR(f(g), std::sin(2 * g) * std::sin(4 * beta), 1e-9);
  }
}

TEST(ReconstructTest, RandomModel) {
  std::mt19937_64 rng(12);
  const IsingModel m = testing::random_integer_model(8, 0.5, -5, 5, true, rng);
  const NeighborhoodIndex idx = build_index(m);
  const auto f = reconstruct(fixed_samples(m, 0.7));
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const double g = kPi * k / 1000.0 + 1e-4;
    worst = std::max(worst, std::abs(f(g) - expectation_with_fields(m, idx, {g, 0.7})));
  }
  EXPECT_LE(worst, 1e-6);
}

TEST(ReconstructTest, RejectsPartialPeriod) {
  const IsingModel m(2, {{0, 1, 1.0}});
  const NeighborhoodIndex idx = build_index(m);
  const auto partial = sample_landscape(m, idx, sampling_plan(m, idx), BetaPolicy::fixed(0.1),
                                        8, SampleRange{0.0, 1.0});
  EXPECT_THROW(reconstruct(partial), InputError);
  EXPECT_THROW(empirical_bandwidth(partial), InputError);
  auto uneven = fixed_samples(m, 0.1);
  uneven.gammas[1] += 0.01;
  EXPECT_THROW(empirical_bandwidth(uneven), InputError);
}

TEST(HpSpectrumRangeTest, SmallCases) {
  EXPECT_EQ(hp_spectrum_range(IsingModel(2, {{0, 1, 1.0}})), 2.0);
  EXPECT_EQ(hp_spectrum_range(complete_graph(3, 1.0)), 4.0);
  std::mt19937_64 rng(13);
  const IsingModel m = testing::random_integer_model(12, 0.5, -5, 5, true, rng);
  const auto e = testing::enumerate_extremes(m);
  EXPECT_EQ(hp_spectrum_range(m), e.max - e.min);
  EXPECT_THROW(hp_spectrum_range(IsingModel(25, {})), CapacityError);
}

TEST(EmpiricalBandwidthTest, KnownSignals) {
  EXPECT_EQ(empirical_bandwidth(fixed_samples(IsingModel(3, {}), 0.1)), 0.0);
  EXPECT_NEAR(empirical_bandwidth(fixed_samples(IsingModel(2, {{0, 1, 1.0}}), 0.3)), 2.0, 1e-12);
}

TEST(EmpiricalBandwidthTest, TightOnTriangleFreeRegular) {
  for (std::size_t d : {3u, 4u, 5u}) {
    const IsingModel m = generate_bipartite_regular(2 * d + 3, d, PlusMinusOne{}, 40 + d);
    EXPECT_NEAR(empirical_bandwidth(fixed_samples(m, 0.3)), 2.0 * d, 1e-9);
  }
}

}  // namespace
}  // namespace qaoa1

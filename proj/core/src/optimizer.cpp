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

#include "qaoa1/optimizer.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "qaoa1/errors.hpp"

namespace qaoa1 {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_beta(double beta) {
  double b = std::fmod(beta, kPi);
  if (b < 0.0) b += kPi;
  if (b >= kPi) b = 0.0;
  return b;
}

// Real roots of c[0] x^d + ... + c[d] after dropping negligible leading terms.
std::vector<double> real_roots(std::vector<double> c) {
  double scale = 0.0;
  for (double x : c) scale = std::max(scale, std::abs(x));
  if (scale == 0.0) return {};
  std::size_t lead = 0;
  while (lead < c.size() && std::abs(c[lead]) <= 1e-14 * scale) ++lead;
  c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(lead));
  const std::size_t degree = c.size() - 1;
  if (degree == 0) return {};
  if (degree == 1) return {-c[1] / c[0]};

  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(degree),
                                                    static_cast<Eigen::Index>(degree));
  for (std::size_t j = 0; j < degree; ++j) {
    companion(0, static_cast<Eigen::Index>(j)) = -c[j + 1] / c[0];
  }
  for (std::size_t i = 1; i < degree; ++i) {
    companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  std::vector<double> out;
  for (const auto& z : solver.eigenvalues()) {
    // Double roots split into pairs with imaginary parts near sqrt(machine eps).
    if (std::abs(z.imag()) <= 1e-6 * (1.0 + std::abs(z.real()))) out.push_back(z.real());
  }
  return out;
}

// Newton steps on the beta derivative; only accepted when the value drops.
double polish_beta(const CoefficientTriple& k, double beta) {
  double best = evaluate_with_fields(k, beta);
  for (int iter = 0; iter < 4; ++iter) {
    const double c2 = std::cos(2.0 * beta), s4 = std::sin(4.0 * beta), c4 = std::cos(4.0 * beta);
    const double s2 = std::sin(2.0 * beta);
    const double slope = 2.0 * k.a * c2 + 4.0 * k.b * c4 + 2.0 * k.c * s4;
    const double curve = -4.0 * k.a * s2 - 16.0 * k.b * s4 + 8.0 * k.c * c4;
    if (!(curve > 0.0)) break;
    const double step = slope / curve;
    if (std::abs(step) > 1e-3) break;
    const double next = beta - step;
    const double value = evaluate_with_fields(k, next);
    if (!(value < best)) break;
    beta = next;
    best = value;
  }
  return beta;
}

// Univariate landscape with an evaluation counter.
class UnivariateCost {
 public:
  UnivariateCost(const IsingModel& model, const NeighborhoodIndex& index)
      : model_(model), index_(index),
        mode_(model.has_fields() ? FieldMode::with_fields : FieldMode::field_free) {}

  UnivariateValue operator()(double gamma) {
    ++evaluations_;
    const UnivariateValue v = univariate_cost(model_, index_, gamma, mode_);
    if (!std::isfinite(v.value)) throw NumericError("non-finite landscape value");
    return v;
  }
  std::size_t evaluations() const noexcept { return evaluations_; }

 private:
  const IsingModel& model_;
  const NeighborhoodIndex& index_;
  FieldMode mode_;
  std::size_t evaluations_ = 0;
};

struct Descent {
  double gamma;
  UnivariateValue at;
};

// Sign-gradient descent with Armijo backtracking on [lo, hi]; steps never
// exceed scale / 4 and halve whenever the direction reverses.
Descent descend(UnivariateCost& f, double start, double lo, double hi, double scale) {
  double gamma = std::clamp(start, lo, hi);
  UnivariateValue current = f(gamma);
  double previous_step = scale / 2.0;
  double previous_direction = 0.0;
  for (int iter = 0; iter < 100000; ++iter) {
    const double h = std::min(scale * 1e-3, 1e-5 * (1.0 + std::abs(gamma)));
    const double up = f(gamma + h).value;
    const double down = f(gamma - h).value;
    const double slope = (up - down) / (2.0 * h);
    if (!std::isfinite(slope)) throw NumericError("non-finite landscape slope");
    if (std::abs(slope) <= 1e-10 * (1.0 + std::abs(current.value)) / scale) break;

    const double direction = slope > 0.0 ? -1.0 : 1.0;
    double step = direction == previous_direction ? std::min(scale / 4.0, 2.0 * previous_step)
                                                  : 0.5 * previous_step;
    previous_direction = direction;
    if (step < 1e-10 * scale) break;
    bool moved = false;
    while (step >= 1e-10 * scale) {
      const double next = std::clamp(gamma + direction * step, lo, hi);
      if (next == gamma) break;
      const UnivariateValue trial = f(next);
      if (trial.value <= current.value - 1e-4 * std::abs(next - gamma) * std::abs(slope)) {
        gamma = next;
        current = trial;
        previous_step = step;
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;
  }
  return {gamma, current};
}

enum class EnsembleCase {
  triangle_free,
  complete,
  linear_both,
  sparse_mu_one,
  lambda_half,
  lambda_upper,
  mu_upper,
  mu_half,
  mu_lower,
};

void validate(const MomentSummary& m) {
  if (!(m.degree > 0.0) || !(m.ej2 > 0.0) || !std::isfinite(m.ej)) {
    throw InputError("moment summary needs D > 0, E[J^2] > 0 and a finite E[J]");
  }
  if (m.ej2 < m.ej * m.ej * (1.0 - 1e-12)) throw InputError("E[J^2] must be at least E[J]^2");
  if (m.a < 0.0 || m.b < 0.0) throw InputError("structure parameters a, b must be >= 0");
  if (m.lambda < 0.0 || m.lambda > 1.0 || m.mu < 0.0 || m.mu > 1.0) {
    throw InputError("structure exponents must lie in [0, 1]");
  }
}

EnsembleCase classify(const MomentSummary& m) {
  validate(m);
  if (m.b == 0.0) {
    if (m.a == 1.0 && m.lambda == 1.0) return EnsembleCase::triangle_free;
  } else if (m.a == 0.0) {
    if (m.b == 1.0 && m.mu == 1.0) return EnsembleCase::complete;
  } else if (m.lambda == 1.0 && m.mu == 1.0) {
    return EnsembleCase::linear_both;
  } else if (m.mu == 1.0) {
    if (m.lambda < 0.5) return EnsembleCase::sparse_mu_one;
    if (m.lambda == 0.5) return EnsembleCase::lambda_half;
    return EnsembleCase::lambda_upper;
  } else if (m.lambda == 1.0) {
    if (m.mu > 0.5) return EnsembleCase::mu_upper;
    if (m.mu == 0.5) return EnsembleCase::mu_half;
    return EnsembleCase::mu_lower;
  }
  throw UnsupportedCaseError("structure parameters match no ensemble case");
}

double leading_c1(double alpha, double beta, const MomentSummary& m) {
  return 2.0 * alpha * std::sin(4.0 * beta) * m.ej2 * std::exp(-2.0 * alpha * alpha * m.ej2) /
         std::sqrt(m.degree);
}

double leading_c2(double alpha, double beta, double theta1, double theta2, const MomentSummary& m) {
  const double s = std::sin(2.0 * beta);
  return s * s * m.ej * std::exp(-4.0 * theta1 * alpha * alpha * m.ej2) *
         std::sinh(4.0 * theta2 * alpha * alpha * m.ej * m.ej);
}

double triangle_term(double alpha, double beta, const MomentSummary& m) {
  const double s = std::sin(2.0 * beta);
  return 4.0 * m.b * alpha * alpha * s * s * m.ej * m.ej * m.ej *
         std::exp(-4.0 * m.a * alpha * alpha * m.ej2);
}

}  // namespace

double optimal_beta_field_free(const CoefficientTriple& coeffs) {
  if (coeffs.a == 0.0 && coeffs.b == 0.0) return 0.0;
  return wrap_beta(0.25 * (std::atan2(2.0 * coeffs.a, coeffs.b) + kPi));
}

double optimal_value_field_free(const CoefficientTriple& coeffs) {
  const double root = std::hypot(coeffs.a, 0.5 * coeffs.b);
  if (coeffs.b >= 0.0) return -root - 0.5 * coeffs.b;
  if (root == 0.0) return 0.0;
  // Same value without the cancellation of root against |b|/2.
  return -(coeffs.a * coeffs.a) / (root - 0.5 * coeffs.b);
}

std::vector<double> beta_candidates_with_fields(const CoefficientTriple& coeffs) {
  const double a = coeffs.a, b = coeffs.b, c = coeffs.c;
  if (a == 0.0 && b == 0.0 && c == 0.0) return {0.0};
  const double bb = 16.0 * b * b, cc = 4.0 * c * c;
  const std::vector<double> roots =
      real_roots({bb + cc, 8.0 * a * b, a * a - bb - cc, -4.0 * a * b, 4.0 * b * b});
  std::vector<double> out;
  for (double x : roots) {
    if (x < -1.0 - 1e-6 || x > 1.0 + 1e-6) continue;
    const double half = 0.5 * std::acos(std::clamp(x, -1.0, 1.0));
    for (double beta : {half, -half}) out.push_back(wrap_beta(polish_beta(coeffs, beta)));
  }
  if (out.empty()) out.push_back(0.0);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

UnivariateValue univariate_cost(const IsingModel& model, const NeighborhoodIndex& index,
                                double gamma, FieldMode mode) {
  if (mode == FieldMode::automatic) {
    mode = model.has_fields() ? FieldMode::with_fields : FieldMode::field_free;
  }
  if (mode == FieldMode::field_free) {
    const CoefficientTriple k = coefficients_field_free(model, index, gamma);
    return {optimal_value_field_free(k), optimal_beta_field_free(k)};
  }
  const CoefficientTriple k = coefficients_with_fields(model, index, gamma);
  UnivariateValue best{std::numeric_limits<double>::infinity(), 0.0};
  for (double beta : beta_candidates_with_fields(k)) {
    const double value = evaluate_with_fields(k, beta);
    if (value < best.value) best = {value, beta};
  }
  return best;
}

std::string to_string(OptimizationMethod method) {
  switch (method) {
    case OptimizationMethod::subdivision: return "subdivision";
    case OptimizationMethod::gradient_near_zero: return "gradient_near_zero";
    case OptimizationMethod::line_search: return "line_search";
    case OptimizationMethod::closed_form: return "closed_form";
  }
  return "unknown";
}

OptimizationResult subdivision_optimize(const IsingModel& model, const NeighborhoodIndex& index,
                                        double epsilon, SubdivisionLog* log) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw InputError("epsilon must be positive");
  const SamplingPlan plan = sampling_plan(model, index);
  if (!plan.period) throw InputError("subdivision needs integral (periodic) weights");

  UnivariateCost f(model, index);
  const double omega = plan.omega_max;
  double width = *plan.period / static_cast<double>(*plan.num_samples);
  std::vector<double> lower(*plan.num_samples);
  for (std::size_t k = 0; k < lower.size(); ++k) lower[k] = static_cast<double>(k) * width;

  OptimizationResult result;
  result.method = OptimizationMethod::subdivision;
  double best_q = -1.0;
  std::vector<double> q;
  for (int round = 0; round < 64 && !lower.empty(); ++round) {
    q.resize(lower.size());
    double round_best = 0.0;
    for (std::size_t i = 0; i < lower.size(); ++i) {
      const double mid = lower[i] + 0.5 * width;
      const UnivariateValue v = f(mid);
      // Positive values are maxima of |<H>|, never minima.
      q[i] = v.value <= 0.0 ? v.value * v.value : 0.0;
      round_best = std::max(round_best, q[i]);
      if (q[i] > best_q || (q[i] == best_q && mid < result.gamma_star)) {
        best_q = q[i];
        result.gamma_star = mid;
        result.beta_star = v.beta_star;
        result.value = v.value <= 0.0 ? v.value : 0.0;
      }
    }
    if (round_best == 0.0) {
      // Flat landscape: keep the first midpoint.
      const UnivariateValue v = f(lower.front() + 0.5 * width);
      result = {lower.front() + 0.5 * width, v.beta_star, v.value, 0,
                OptimizationMethod::subdivision};
      break;
    }
    const double angle = omega * width;
    const double cosine = angle < 0.5 * kPi ? std::cos(angle) : 0.0;
    const double threshold = round_best * cosine;
    if (log) {
      SubdivisionRound r{width, round_best, lower, std::vector<bool>(lower.size())};
      for (std::size_t i = 0; i < lower.size(); ++i) r.kept[i] = q[i] >= threshold;
      log->rounds.push_back(std::move(r));
    }
    if (cosine > 0.0 && 1.0 / cosine - 1.0 < epsilon) break;

    std::vector<double> next;
    next.reserve(2 * lower.size());
    for (std::size_t i = 0; i < lower.size(); ++i) {
      if (q[i] >= threshold) {
        next.push_back(lower[i]);
        next.push_back(lower[i] + 0.5 * width);
      }
    }
    lower = std::move(next);
    width *= 0.5;
  }
  result.evaluations = f.evaluations();
  return result;
}

OptimizationResult gradient_descent_near_zero(const IsingModel& model,
                                              const NeighborhoodIndex& index) {
  const SamplingPlan plan = sampling_plan(model, index);
  UnivariateCost f(model, index);
  const Descent d = descend(f, 0.5 * plan.delta_gamma, 0.0,
                            std::numeric_limits<double>::infinity(), plan.delta_gamma);
  return {d.gamma, d.at.beta_star, d.at.value, f.evaluations(),
          OptimizationMethod::gradient_near_zero};
}

OptimizationResult line_search(const IsingModel& model, const NeighborhoodIndex& index,
                               bool refine, std::size_t samples) {
  const SamplingPlan plan = sampling_plan(model, index);
  double span = kPi;
  std::size_t count = samples;
  if (count == 0) {
    if (plan.period) {
      span = *plan.period;
      count = *plan.num_samples;
    } else {
      count = static_cast<std::size_t>(std::ceil(kPi / plan.delta_gamma));
    }
  }
  const double step = span / static_cast<double>(count);

  UnivariateCost f(model, index);
  OptimizationResult result;
  result.method = OptimizationMethod::line_search;
  result.value = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < count; ++k) {
    const double gamma = static_cast<double>(k) * step;
    const UnivariateValue v = f(gamma);
    // Ties keep the smallest gamma.
    if (k == 0 || v.value < result.value - 1e-12 * std::max(1.0, std::abs(result.value))) {
      result.gamma_star = gamma;
      result.beta_star = v.beta_star;
      result.value = v.value;
    }
  }
  if (refine) {
    const double scale = std::min(step, plan.delta_gamma);
    const Descent d = descend(f, result.gamma_star, std::max(0.0, result.gamma_star - step),
                              result.gamma_star + step, scale);
    if (d.at.value <= result.value) {
      result.gamma_star = d.gamma;
      result.beta_star = d.at.beta_star;
      result.value = d.at.value;
    }
  }
  result.evaluations = f.evaluations();
  return result;
}

double eta(double theta, const MomentSummary& m) {
  if (!(theta > 0.0)) throw DomainError("eta needs a positive argument");
  return 1.0 / std::sqrt(theta * m.degree * m.ej2);
}

double zeta(double theta1, double theta2, const MomentSummary& m) {
  if (!(theta1 > 0.0) || !(theta2 > 0.0)) throw DomainError("zeta needs positive arguments");
  const double mean_sq = m.ej * m.ej;
  if (mean_sq == 0.0) return eta(4.0 * theta1, m);
  const double num = theta1 * m.ej2 + theta2 * mean_sq;
  const double den = theta1 * m.ej2 - theta2 * mean_sq;
  if (!(den > 0.0)) throw DomainError("zeta log argument is not positive");
  return std::sqrt(std::log(num / den) / (8.0 * theta2 * m.degree * mean_sq));
}

double predicted_gamma_star(const MomentSummary& m) {
  switch (classify(m)) {
    case EnsembleCase::triangle_free: return eta(4.0, m);
    case EnsembleCase::complete: return zeta(1.0, 1.0, m);
    case EnsembleCase::linear_both: return zeta(1.0, m.b, m);
    case EnsembleCase::sparse_mu_one:
    case EnsembleCase::lambda_upper: return zeta(m.b, m.b, m);
    case EnsembleCase::mu_upper: return eta(2.0 * m.a, m);
    case EnsembleCase::mu_lower: return eta(4.0, m);
    case EnsembleCase::lambda_half:
      throw UnsupportedCaseError("no closed-form optimum at lambda = 1/2");
    case EnsembleCase::mu_half:
      throw UnsupportedCaseError("no closed-form optimum at mu = 1/2");
  }
  throw UnsupportedCaseError("structure parameters match no ensemble case");
}

double scaled_expected_cost(double alpha, double beta, const MomentSummary& m) {
  const double root_d = std::sqrt(m.degree);
  switch (classify(m)) {
    case EnsembleCase::triangle_free:
    case EnsembleCase::mu_lower: return leading_c1(alpha, beta, m);
    case EnsembleCase::complete: return leading_c1(alpha, beta, m) + leading_c2(alpha, beta, 1, 1, m);
    case EnsembleCase::linear_both:
      return leading_c1(alpha, beta, m) + leading_c2(alpha, beta, 1.0, m.b, m);
    case EnsembleCase::sparse_mu_one:
      return leading_c1(alpha, beta, m) + leading_c2(alpha, beta, m.b, m.b, m);
    case EnsembleCase::lambda_half:
      return leading_c1(alpha, beta, m) +
             leading_c2(alpha, beta, m.b, m.b, m) *
                 (1.0 - 4.0 * m.a * alpha * alpha * m.ej2 / root_d);
    case EnsembleCase::lambda_upper:
      return leading_c2(alpha, beta, m.b, m.b, m) *
             (1.0 - 4.0 * m.a * alpha * alpha * m.ej2 * std::pow(m.degree, m.lambda - 1.0));
    case EnsembleCase::mu_upper:
      return triangle_term(alpha, beta, m) * std::pow(m.degree, m.mu - 1.0);
    case EnsembleCase::mu_half:
      return leading_c1(alpha, beta, m) + triangle_term(alpha, beta, m) / root_d;
  }
  throw UnsupportedCaseError("structure parameters match no ensemble case");
}

}  // namespace qaoa1

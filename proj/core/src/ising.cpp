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

#include "qaoa1/ising.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <tuple>
#include <utility>

#include "qaoa1/errors.hpp"

namespace qaoa1 {

namespace {

bool same_pair(const Edge& a, const Edge& b) { return a.u == b.u && a.v == b.v; }

// Denominator of the best rational approximation of x with denominator at most
// kMaxWeightScale, or 0 when x is not (close to) such a rational.
std::int64_t rational_denominator(double x) {
  const double tol = 8.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x));
  if (std::abs(x - std::round(x)) <= tol) return 1;
  const double ax = std::abs(x);
  double y = ax;
  double h0 = 0.0, h1 = 1.0, k0 = 1.0, k1 = 0.0;
  for (int iter = 0; iter < 64; ++iter) {
    const double a = std::floor(y);
    const double h2 = a * h1 + h0;
    const double k2 = a * k1 + k0;
    if (k2 > static_cast<double>(kMaxWeightScale)) return 0;
    if (std::abs(ax - h2 / k2) <= tol) return static_cast<std::int64_t>(k2);
    const double rest = y - a;
    if (rest <= 0.0) return 0;
    y = 1.0 / rest;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
  }
  return 0;
}

double draw_weight(const WeightDist& dist, std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 100000; ++attempt) {
    const double w = std::visit(
        [&rng](const auto& d) -> double {
          using T = std::decay_t<decltype(d)>;
          if constexpr (std::is_same_v<T, GaussianRounded>) {
            std::normal_distribution<double> normal(d.mean, std::sqrt(d.variance));
            return std::round(normal(rng));
          } else if constexpr (std::is_same_v<T, UniformInt>) {
            std::uniform_int_distribution<int> uniform(d.lo, d.hi);
            return static_cast<double>(uniform(rng));
          } else {
            std::bernoulli_distribution coin(0.5);
            return coin(rng) ? 1.0 : -1.0;
          }
        },
        dist);
    if (w != 0.0) return w;
  }
  throw InputError("weight distribution " + to_string(dist) + " only produces zero weights");
}

void validate_dist(const WeightDist& dist) {
  if (const auto* g = std::get_if<GaussianRounded>(&dist)) {
    if (!(g->variance >= 0.0) || !std::isfinite(g->mean)) {
      throw InputError("gaussian weight distribution needs a finite mean and variance >= 0");
    }
    if (g->variance == 0.0 && std::round(g->mean) == 0.0) {
      throw InputError("gaussian weight distribution only produces zero weights");
    }
  } else if (const auto* u = std::get_if<UniformInt>(&dist)) {
    if (u->lo > u->hi) throw InputError("uniform weight distribution needs lo <= hi");
    if (u->lo == 0 && u->hi == 0) {
      throw InputError("uniform weight distribution only produces zero weights");
    }
  }
}

std::vector<Edge> weigh(const std::vector<std::pair<Vertex, Vertex>>& pairs,
                        const WeightDist& dist, std::mt19937_64& rng) {
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (const auto& [u, v] : pairs) edges.push_back({u, v, draw_weight(dist, rng)});
  return edges;
}

double parse_double(const std::string& token, std::size_t line, const char* what) {
  if (token.empty()) throw ParseError(line, std::string("missing ") + what);
  char* end = nullptr;
  const double value = std::strtod(token.c_str(), &end);
  if (end != token.c_str() + token.size() || !std::isfinite(value)) {
    throw ParseError(line, std::string("bad ") + what + " '" + token + "'");
  }
  return value;
}

std::size_t parse_index(const std::string& token, std::size_t line, const char* what) {
  if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos) {
    throw ParseError(line, std::string("bad ") + what + " '" + token + "'");
  }
  return static_cast<std::size_t>(std::stoull(token));
}

}  // namespace

// -- IsingModel ---------------------------------------------------------------

IsingModel::IsingModel(std::size_t n, std::vector<Edge> edges, std::vector<double> fields,
                       double constant)
    : n_(n), fields_(std::move(fields)), constant_(constant) {
  if (fields_.empty()) fields_.assign(n_, 0.0);
  if (fields_.size() != n_) {
    throw InputError("field vector has length " + std::to_string(fields_.size()) +
                     ", expected " + std::to_string(n_));
  }
  for (double h : fields_) {
    if (!std::isfinite(h)) throw InputError("non-finite field");
  }
  if (!std::isfinite(constant_)) throw InputError("non-finite constant");

  edges_.reserve(edges.size());
  for (Edge e : edges) {
    if (e.u == e.v) throw InputError("self-loop on vertex " + std::to_string(e.u));
    if (e.u >= n_ || e.v >= n_) {
      throw InputError("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                       ") out of range for n = " + std::to_string(n_));
    }
    if (!std::isfinite(e.weight)) throw InputError("non-finite coupling");
    if (e.u > e.v) std::swap(e.u, e.v);
    if (e.weight != 0.0) edges_.push_back(e);
  }
  std::sort(edges_.begin(), edges_.end(),
            [](const Edge& a, const Edge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
  const auto dup = std::adjacent_find(edges_.begin(), edges_.end(), same_pair);
  if (dup != edges_.end()) {
    throw InputError("duplicate edge (" + std::to_string(dup->u) + ", " +
                     std::to_string(dup->v) + ")");
  }

  std::vector<double> values;
  values.reserve(edges_.size() + n_);
  for (const Edge& e : edges_) values.push_back(e.weight);
  values.insert(values.end(), fields_.begin(), fields_.end());
  weight_class_ = classify_weights(values);
}

bool IsingModel::has_fields() const noexcept {
  return std::any_of(fields_.begin(), fields_.end(), [](double h) { return h != 0.0; });
}

std::ptrdiff_t IsingModel::find_edge(Vertex u, Vertex v) const {
  if (u > v) std::swap(u, v);
  const auto it = std::lower_bound(
      edges_.begin(), edges_.end(), std::pair{u, v},
      [](const Edge& e, const std::pair<Vertex, Vertex>& key) {
        return std::tie(e.u, e.v) < std::tie(key.first, key.second);
      });
  if (it == edges_.end() || it->u != u || it->v != v) return -1;
  return it - edges_.begin();
}

double IsingModel::coupling(Vertex u, Vertex v) const {
  const auto id = find_edge(u, v);
  return id < 0 ? 0.0 : edges_[static_cast<std::size_t>(id)].weight;
}

IsingModel IsingModel::with_constant(double constant) const {
  IsingModel copy = *this;
  copy.constant_ = constant;
  return copy;
}

WeightClass classify_weights(std::span<const double> values) {
  std::int64_t scale = 1;
  for (double x : values) {
    const std::int64_t q = rational_denominator(x);
    if (q == 0) return {false, 0};
    scale = std::lcm(scale, q);
    if (scale > kMaxWeightScale) return {false, 0};
  }
  for (double x : values) {
    const double sx = x * static_cast<double>(scale);
    if (std::abs(sx - std::round(sx)) > 1e-9 * std::max(1.0, std::abs(sx))) return {false, 0};
  }
  return {true, scale};
}

// -- SpinAssignment -----------------------------------------------------------

SpinAssignment::SpinAssignment(std::vector<std::int8_t> spins) : spins_(std::move(spins)) {
  for (auto s : spins_) {
    if (s != 1 && s != -1) throw InputError("spin values must be -1 or +1");
  }
}

SpinAssignment SpinAssignment::from_bits(std::uint64_t bits, std::size_t n) {
  std::vector<std::int8_t> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = ((bits >> i) & 1u) ? -1 : 1;
  return SpinAssignment(std::move(s));
}

SpinAssignment SpinAssignment::flipped() const {
  SpinAssignment out = *this;
  for (auto& s : out.spins_) s = static_cast<std::int8_t>(-s);
  return out;
}

// -- energies and transforms --------------------------------------------------

double QuboModel::evaluate(std::span<const std::uint8_t> x) const {
  double f = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    if (!x[j]) continue;
    for (std::size_t k = 0; k < n; ++k) {
      if (x[k]) f += at(j, k);
    }
    if (!b.empty()) f += b[j];
  }
  return f;
}

double energy(const IsingModel& model, const SpinAssignment& s) {
  if (s.size() != model.size()) {
    throw InputError("assignment has " + std::to_string(s.size()) + " spins, model has " +
                     std::to_string(model.size()));
  }
  double e = 0.0;
  for (const Edge& edge : model.edges()) e += edge.weight * s[edge.u] * s[edge.v];
  const auto h = model.fields();
  for (std::size_t i = 0; i < h.size(); ++i) e += h[i] * s[i];
  return e + model.constant();
}

IsingModel from_qubo(const QuboModel& q) {
  const std::size_t n = q.n;
  if (q.a.size() != n * n) throw InputError("QUBO matrix must be n x n");
  if (!q.b.empty() && q.b.size() != n) throw InputError("QUBO vector must have length n");
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j + 1; k < n; ++k) {
      if (q.at(j, k) != q.at(k, j)) {
        throw InputError("QUBO matrix is not symmetric at (" + std::to_string(j) + ", " +
                         std::to_string(k) + ")");
      }
    }
  }
  // x = (s + 1) / 2 expands x^T A x into 1/4 of the quadratic, linear and
  // constant parts; the ordered pairs (j,k) and (k,j) fold into one edge.
  std::vector<Edge> edges;
  std::vector<double> h(n, 0.0);
  double constant = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      const double a = q.at(j, k);
      constant += 0.25 * a;
      h[j] += 0.25 * a;
      h[k] += 0.25 * a;
    }
    constant += 0.25 * q.at(j, j);
    for (std::size_t k = j + 1; k < n; ++k) {
      const double w = 0.25 * (q.at(j, k) + q.at(k, j));
      if (w != 0.0) edges.push_back({static_cast<Vertex>(j), static_cast<Vertex>(k), w});
    }
    if (!q.b.empty()) {
      h[j] += 0.5 * q.b[j];
      constant += 0.5 * q.b[j];
    }
  }
  return IsingModel(n, std::move(edges), std::move(h), constant);
}

IsingModel eliminate_fields(const IsingModel& model) {
  if (!model.has_fields()) return model;
  const std::size_t n = model.size();
  std::vector<Edge> edges = model.edges();
  const auto h = model.fields();
  for (std::size_t i = 0; i < n; ++i) {
    if (h[i] != 0.0) edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(n), h[i]});
  }
  return IsingModel(n + 1, std::move(edges), {}, model.constant());
}

// -- generators ---------------------------------------------------------------

WeightDist parse_weight_dist(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  auto number = [&](std::size_t i) {
    char* end = nullptr;
    const double v = std::strtod(parts[i].c_str(), &end);
    if (parts[i].empty() || *end != '\0') throw InputError("bad weight distribution '" + text + "'");
    return v;
  };
  if (parts.size() == 1 && (parts[0] == "pm1" || parts[0] == "pm_one")) return PlusMinusOne{};
  if (parts.size() == 3 && parts[0] == "gaussian") {
    const WeightDist dist = GaussianRounded{number(1), number(2)};
    validate_dist(dist);
    return dist;
  }
  if (parts.size() == 3 && parts[0] == "uniform") {
    const double lo = number(1);
    const double hi = number(2);
    if (lo != std::floor(lo) || hi != std::floor(hi) || std::abs(lo) > 1e9 || std::abs(hi) > 1e9) {
      throw InputError("uniform weight bounds must be integers");
    }
    const WeightDist dist = UniformInt{static_cast<int>(lo), static_cast<int>(hi)};
    validate_dist(dist);
    return dist;
  }
  throw InputError("bad weight distribution '" + text +
                   "' (expected gaussian:MEAN:VAR, uniform:LO:HI or pm1)");
}

std::string to_string(const WeightDist& dist) {
  return std::visit(
      [](const auto& d) -> std::string {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, GaussianRounded>) {
          return "gaussian:" + format_number(d.mean) + ":" + format_number(d.variance);
        } else if constexpr (std::is_same_v<T, UniformInt>) {
          return "uniform:" + std::to_string(d.lo) + ":" + std::to_string(d.hi);
        } else {
          return "pm1";
        }
      },
      dist);
}

IsingModel generate_erdos_renyi(std::size_t n, double p, const WeightDist& dist,
                                std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("edge probability must lie in [0, 1]");
  validate_dist(dist);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (unit(rng) < p) {
        edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v), draw_weight(dist, rng)});
      }
    }
  }
  return IsingModel(n, std::move(edges));
}

IsingModel generate_d_regular(std::size_t n, std::size_t degree, const WeightDist& dist,
                              std::uint64_t seed) {
  if ((n * degree) % 2 != 0) throw InputError("n * D must be even for a D-regular graph");
  if (degree >= n && n > 0) throw InputError("D-regular graph needs D < n");
  validate_dist(dist);
  std::mt19937_64 rng(seed);

  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::set<std::pair<Vertex, Vertex>> chosen;
    std::vector<Vertex> points;
    points.reserve(n * degree);
    for (std::size_t v = 0; v < n; ++v) points.insert(points.end(), degree, static_cast<Vertex>(v));

    bool stuck = false;
    while (!points.empty()) {
      std::shuffle(points.begin(), points.end(), rng);
      std::vector<Vertex> leftover;
      for (std::size_t i = 0; i + 1 < points.size(); i += 2) {
        Vertex a = points[i], b = points[i + 1];
        if (a > b) std::swap(a, b);
        if (a != b && !chosen.count({a, b})) {
          chosen.insert({a, b});
        } else {
          leftover.push_back(a);
          leftover.push_back(b);
        }
      }
      // A dead end is reached when no pair of the remaining points can be joined.
      bool joinable = false;
      for (std::size_t i = 0; i < leftover.size() && !joinable; ++i) {
        for (std::size_t j = i + 1; j < leftover.size(); ++j) {
          Vertex a = leftover[i], b = leftover[j];
          if (a > b) std::swap(a, b);
          if (a != b && !chosen.count({a, b})) {
            joinable = true;
            break;
          }
        }
      }
      if (!leftover.empty() && !joinable) {
        stuck = true;
        break;
      }
      points = std::move(leftover);
    }
    if (stuck) continue;
    std::vector<std::pair<Vertex, Vertex>> pairs(chosen.begin(), chosen.end());
    return IsingModel(n, weigh(pairs, dist, rng));
  }
  throw InputError("failed to build a simple " + std::to_string(degree) +
                   "-regular graph after 1000 restarts");
}

IsingModel generate_bipartite_regular(std::size_t side, std::size_t degree,
                                      const WeightDist& dist, std::uint64_t seed) {
  if (degree > side) throw InputError("bipartite D-regular graph needs D <= side");
  validate_dist(dist);
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> offsets(side);
  std::iota(offsets.begin(), offsets.end(), 0);
  std::shuffle(offsets.begin(), offsets.end(), rng);
  offsets.resize(degree);
  std::vector<std::size_t> relabel(side);
  std::iota(relabel.begin(), relabel.end(), 0);
  std::shuffle(relabel.begin(), relabel.end(), rng);

  std::vector<std::pair<Vertex, Vertex>> pairs;
  pairs.reserve(side * degree);
  for (std::size_t i = 0; i < side; ++i) {
    for (std::size_t o : offsets) {
      pairs.emplace_back(static_cast<Vertex>(i),
                         static_cast<Vertex>(side + relabel[(i + o) % side]));
    }
  }
  std::sort(pairs.begin(), pairs.end());
  return IsingModel(2 * side, weigh(pairs, dist, rng));
}

IsingModel with_random_fields(const IsingModel& model, const WeightDist& dist,
                              std::uint64_t seed) {
  validate_dist(dist);
  std::mt19937_64 rng(seed);
  std::vector<double> h(model.size());
  for (auto& x : h) x = draw_weight(dist, rng);
  return IsingModel(model.size(), model.edges(), std::move(h), model.constant());
}

// -- edge-list I/O ------------------------------------------------------------

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

IsingModel read_model(std::istream& in) {
  std::size_t line_no = 0;
  std::optional<std::size_t> n;
  std::vector<double> fields;
  std::vector<bool> field_seen;
  std::vector<Edge> edges;
  std::set<std::pair<Vertex, Vertex>> seen;
  std::optional<double> constant;

  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    std::istringstream tokens(raw);
    std::vector<std::string> words;
    for (std::string w; tokens >> w;) words.push_back(w);
    if (words.empty()) continue;

    const std::string& key = words[0];
    if (!n) {
      if (key != "ising" || words.size() != 2) {
        throw ParseError(line_no, "expected header 'ising <n>'");
      }
      n = parse_index(words[1], line_no, "vertex count");
      fields.assign(*n, 0.0);
      field_seen.assign(*n, false);
      continue;
    }
    if (key == "node") {
      if (words.size() != 3) throw ParseError(line_no, "expected 'node <i> <h_i>'");
      const std::size_t i = parse_index(words[1], line_no, "vertex");
      if (i >= *n) throw ParseError(line_no, "vertex " + words[1] + " out of range");
      if (field_seen[i]) throw ParseError(line_no, "duplicate node " + words[1]);
      field_seen[i] = true;
      fields[i] = parse_double(words[2], line_no, "field");
    } else if (key == "edge") {
      if (words.size() != 4) throw ParseError(line_no, "expected 'edge <u> <v> <J_uv>'");
      std::size_t u = parse_index(words[1], line_no, "vertex");
      std::size_t v = parse_index(words[2], line_no, "vertex");
      if (u >= *n || v >= *n) throw ParseError(line_no, "vertex out of range");
      if (u == v) throw ParseError(line_no, "self-loop");
      if (u > v) std::swap(u, v);
      if (!seen.insert({static_cast<Vertex>(u), static_cast<Vertex>(v)}).second) {
        throw ParseError(line_no, "duplicate edge");
      }
      edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v),
                       parse_double(words[3], line_no, "coupling")});
    } else if (key == "constant") {
      if (words.size() != 2) throw ParseError(line_no, "expected 'constant <c>'");
      if (constant) throw ParseError(line_no, "duplicate constant");
      constant = parse_double(words[1], line_no, "constant");
    } else if (key == "ising") {
      throw ParseError(line_no, "duplicate header");
    } else {
      throw ParseError(line_no, "unknown record '" + key + "'");
    }
  }
  if (!n) throw ParseError(line_no, "missing header 'ising <n>'");
  return IsingModel(*n, std::move(edges), std::move(fields), constant.value_or(0.0));
}

void write_model(std::ostream& out, const IsingModel& model) {
  out << "ising " << model.size() << '\n';
  const auto h = model.fields();
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (h[i] != 0.0) out << "node " << i << ' ' << format_number(h[i]) << '\n';
  }
  for (const Edge& e : model.edges()) {
    out << "edge " << e.u << ' ' << e.v << ' ' << format_number(e.weight) << '\n';
  }
  if (model.constant() != 0.0) out << "constant " << format_number(model.constant()) << '\n';
}

IsingModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open model file " + path.string());
  return read_model(in);
}

void save_model(const IsingModel& model, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write model file " + path.string());
  write_model(out, model);
}

}  // namespace qaoa1

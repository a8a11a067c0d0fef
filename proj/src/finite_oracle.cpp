/*
 * Copyright 2026 The chainmetric Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "chainmetric/finite_oracle.hpp"

#include <limits>
#include <memory>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <string>

namespace chainmetric {

FiniteSpace FiniteSpace::from_matrix(DistanceMatrix distances, std::size_t anchor) {
  if (distances.size() == 0) throw std::invalid_argument("finite space needs at least one point");
  if (anchor >= distances.size()) throw std::invalid_argument("anchor index out of range");
  const AxiomReport report = verify_metric_axioms(distances, 1e-12);
  if (!report.ok()) {
    const AxiomViolation& v = report.violations.front();
    throw std::invalid_argument("invalid distance matrix: " + to_string(v.axiom) + " violated at (" +
                                std::to_string(v.i) + "," + std::to_string(v.j) + "," +
                                std::to_string(v.k) + ")");
  }
  return FiniteSpace{std::move(distances), anchor};
}

FiniteSpace FiniteSpace::from_points(std::span<const Point> points, std::size_t anchor) {
  DistanceMatrix m(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    require_finite(points[i]);
    for (std::size_t j = 0; j < points.size(); ++j) m(i, j) = euclidean_distance(points[i], points[j]);
  }
  return from_matrix(std::move(m), anchor);
}

FiniteContext finite_context(const FiniteSpace& space,
                             std::function<double(std::size_t, std::size_t)> weight) {
  auto distances = std::make_shared<const DistanceMatrix>(space.distances);
  FiniteContext ctx;
  ctx.base_distance = [distances](std::size_t i, std::size_t j) { return (*distances)(i, j); };
  ctx.weight = std::move(weight);
  ctx.anchor = space.anchor;
  return ctx;
}

FiniteContext finite_context(const FiniteSpace& space, DistanceMatrix weight) {
  if (weight.size() != space.size()) throw std::invalid_argument("weight matrix size mismatch");
  for (std::size_t i = 0; i < weight.size(); ++i) {
    for (std::size_t j = 0; j < weight.size(); ++j) {
      if (!(weight(i, j) >= 0.0) || !std::isfinite(weight(i, j))) {
        throw std::invalid_argument("weight must be finite and nonnegative");
      }
      if (weight(i, j) != weight(j, i)) throw std::invalid_argument("weight must be symmetric");
    }
  }
  auto w = std::make_shared<const DistanceMatrix>(std::move(weight));
  return finite_context(space, [w](std::size_t i, std::size_t j) { return (*w)(i, j); });
}

FiniteContext finite_context(const FiniteSpace& space) {
  return finite_context(space, [](std::size_t, std::size_t) { return 0.0; });
}

DistanceMatrix dphi_exact(const FiniteContext& ctx, const FiniteSpace& space) {
  const std::size_t n = space.size();
  if (n == 0) throw std::invalid_argument("finite space needs at least one point");

  DistanceMatrix link(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) link(i, j) = link(j, i) = delta(ctx, i, j);
  }

  DistanceMatrix out(n, std::numeric_limits<double>::infinity());
  using Entry = std::pair<double, std::size_t>;
  for (std::size_t source = 0; source < n; ++source) {
    std::vector<double> dist(n, std::numeric_limits<double>::infinity());
    std::vector<bool> done(n, false);
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    dist[source] = 0.0;
    heap.emplace(0.0, source);
    while (!heap.empty()) {
      const auto [d, u] = heap.top();
      heap.pop();
      if (done[u]) continue;
      done[u] = true;
      for (std::size_t v = 0; v < n; ++v) {
        if (done[v]) continue;
        const double candidate = d + link(u, v);
        if (candidate < dist[v]) {
          dist[v] = candidate;
          heap.emplace(candidate, v);
        }
      }
    }
    for (std::size_t j = 0; j < n; ++j) out(source, j) = dist[j];
  }
  return out;
}

namespace {

void enumerate_chains(const FiniteContext& ctx, std::vector<std::size_t>& chain, std::vector<bool>& visited,
                      std::size_t target, double& best) {
  const std::size_t last = chain.back();
  if (last == target) {
    best = std::min(best, chain_cost(ctx, Chain<std::size_t>{chain}));
    return;
  }
  for (std::size_t next = 0; next < visited.size(); ++next) {
    if (visited[next]) continue;
    visited[next] = true;
    chain.push_back(next);
    enumerate_chains(ctx, chain, visited, target, best);
    chain.pop_back();
    visited[next] = false;
  }
}

}  // namespace

DistanceMatrix dphi_bruteforce(const FiniteContext& ctx, const FiniteSpace& space, std::size_t max_points) {
  const std::size_t n = space.size();
  if (n == 0) throw std::invalid_argument("finite space needs at least one point");
  if (n > max_points) {
    throw std::invalid_argument("space too large for chain enumeration: " + std::to_string(n) + " > " +
                                std::to_string(max_points));
  }
  DistanceMatrix out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      std::vector<std::size_t> chain{i};
      std::vector<bool> visited(n, false);
      visited[i] = true;
      double best = std::numeric_limits<double>::infinity();
      enumerate_chains(ctx, chain, visited, j, best);
      out(i, j) = best;
    }
  }
  return out;
}

DistanceMatrix read_distance_matrix(std::istream& in) {
  long long n = -1;
  if (!(in >> n) || n < 0) throw std::invalid_argument("distance matrix: expected a point count");
  DistanceMatrix m(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      std::string token;
      if (!(in >> token)) {
        throw std::invalid_argument("distance matrix: expected " + std::to_string(n * n) + " entries");
      }
      std::size_t used = 0;
      try {
        m(i, j) = std::stod(token, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != token.size()) throw std::invalid_argument("distance matrix: bad entry '" + token + "'");
    }
  }
  std::string trailing;
  if (in >> trailing) throw std::invalid_argument("distance matrix: trailing data '" + trailing + "'");
  return m;
}

void write_distance_matrix(std::ostream& out, const DistanceMatrix& m) {
  out << m.size() << '\n';
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (j) out << ' ';
      out << format_real(m(i, j));
    }
    out << '\n';
  }
}

}  // namespace chainmetric

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

#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "chainmetric/point.hpp"

namespace chainmetric {

// The triple (d, phi, m) that defines the chain metric d^{phi,m} on a space
// whose points have type P. P must be totally ordered by operator<; the order
// is used to evaluate every link on a canonically ordered pair.
template <class P>
struct MetricContext {
  std::function<double(const P&, const P&)> base_distance;
  std::function<double(const P&, const P&)> weight;
  P anchor;
};

// A finite chain x_0, ..., x_n joining x_0 to x_n.
template <class P>
struct Chain {
  std::vector<P> points;

  const P& front() const { return points.front(); }
  const P& back() const { return points.back(); }
  std::size_t links() const { return points.empty() ? 0 : points.size() - 1; }
};

template <class P>
struct BoundCertificate {
  double lower = 0.0;
  double upper = 0.0;
  std::pair<P, P> pair;
};

namespace detail {

template <class P>
std::pair<const P*, const P*> canonical_pair(const P& x, const P& y) {
  if (y < x) return {&y, &x};
  return {&x, &y};
}

}  // namespace detail

// Detour term 1/(1+d(m,p)).
template <class P>
double escape_cost(const MetricContext<P>& ctx, const P& p) {
  return 1.0 / (1.0 + ctx.base_distance(ctx.anchor, p));
}

// Link cost delta^{phi,m}(x, y) = min{ d(x,y), 1/(1+d(m,x)) + phi(x,y) + 1/(1+d(m,y)) }.
template <class P>
double delta(const MetricContext<P>& ctx, const P& x, const P& y) {
  require_finite(x);
  require_finite(y);
  const auto [a, b] = detail::canonical_pair(x, y);
  const double direct = ctx.base_distance(*a, *b);
  const double detour = escape_cost(ctx, *a) + ctx.weight(*a, *b) + escape_cost(ctx, *b);
  return std::min(direct, detour);
}

template <class P>
double chain_cost(const MetricContext<P>& ctx, const Chain<P>& chain) {
  if (chain.points.size() < 2) {
    throw std::invalid_argument("a chain needs at least two points");
  }
  double total = 0.0;
  for (std::size_t i = 1; i < chain.points.size(); ++i) {
    total += delta(ctx, chain.points[i - 1], chain.points[i]);
  }
  return total;
}

// Certified lower bound on d^phi(x, y). Whenever d^phi(x,y) differs from
// d(x,y) it is at least 1/(2(1+d(m,x))), and by symmetry also at least
// 1/(2(1+d(m,y))); otherwise it equals d(x,y).
template <class P>
double lower_bound_certificate(const MetricContext<P>& ctx, const P& x, const P& y) {
  require_finite(x);
  require_finite(y);
  const auto [a, b] = detail::canonical_pair(x, y);
  const double direct = ctx.base_distance(*a, *b);
  const double far = std::max(0.5 * escape_cost(ctx, *a), 0.5 * escape_cost(ctx, *b));
  return std::min(direct, far);
}

// Radius of the d^phi ball around x on which d^phi coincides with d.
template <class P>
double local_isometry_radius(const MetricContext<P>& ctx, const P& x) {
  require_finite(x);
  return 1.0 / (8.0 * (1.0 + ctx.base_distance(ctx.anchor, x)));
}

template <class P>
BoundCertificate<P> certify(const MetricContext<P>& ctx, const P& x, const P& y) {
  return {lower_bound_certificate(ctx, x, y), delta(ctx, x, y), {x, y}};
}

// Dense row-major square matrix of reals.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n, double fill = 0.0) : n_(n), values_(n * n, fill) {}

  // Throws std::invalid_argument unless every row has rows.size() entries.
  static DistanceMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t size() const { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return values_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return values_[i * n_ + j]; }
  std::vector<std::vector<double>> rows() const;

 private:
  std::size_t n_ = 0;
  std::vector<double> values_;
};

enum class Axiom { nonnegativity, identity, symmetry, triangle };

std::string to_string(Axiom axiom);

struct AxiomViolation {
  Axiom axiom;
  // Witnessing indices; k is only meaningful for triangle violations.
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;
  double excess = 0.0;
};

struct AxiomReport {
  std::size_t points = 0;
  std::size_t total_violations = 0;
  // At most max_recorded violations are kept, in discovery order.
  std::vector<AxiomViolation> violations;

  bool ok() const { return total_violations == 0; }
  std::size_t count(Axiom axiom) const;
};

// Checks nonnegativity, zero diagonal with positive off-diagonal, symmetry and
// the triangle inequality, each up to the absolute tolerance tol.
AxiomReport verify_metric_axioms(const DistanceMatrix& matrix, double tol,
                                 std::size_t max_recorded = 256);
AxiomReport verify_metric_axioms(const std::vector<std::vector<double>>& matrix, double tol,
                                 std::size_t max_recorded = 256);

}  // namespace chainmetric

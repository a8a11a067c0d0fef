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

#include "chainmetric/std_phi.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "chainmetric/parallel.hpp"

namespace chainmetric {

HarmonicTable::HarmonicTable(int max_index) {
  if (max_index < 1) throw std::invalid_argument("harmonic table needs max_index >= 1");
  radii_.resize(static_cast<std::size_t>(max_index) + 1);
  radii_[0] = 0.0;
  double sum = 0.0;
  for (int m = 1; m <= max_index; ++m) {
    sum += 1.0 / m;
    radii_[static_cast<std::size_t>(m)] = sum;
  }
}

double HarmonicTable::radius(int m) const {
  if (m < 1 || m > max_index()) throw std::out_of_range("harmonic index out of table range");
  return radii_[static_cast<std::size_t>(m)];
}

std::optional<int> HarmonicTable::sphere_index(double r, double tau) const {
  if (!(r > 0.0) || !std::isfinite(r)) return std::nullopt;
  const auto first = radii_.begin() + 1;
  const auto it = std::lower_bound(first, radii_.end(), r);
  const int upper = static_cast<int>(it - radii_.begin());
  for (int p : {upper - 1, upper}) {
    if (p < 1 || p > max_index()) continue;
    const double a = radii_[static_cast<std::size_t>(p)];
    if (std::abs(r - a) <= tau * a) return p;
  }
  return std::nullopt;
}

int HarmonicTable::shell_index(double r) const {
  const auto it = std::upper_bound(radii_.begin() + 1, radii_.end(), r);
  return static_cast<int>(it - radii_.begin()) - 1;
}

const HarmonicTable& harmonic_table() {
  static const HarmonicTable table;
  return table;
}

double harmonic_radius(int m) {
  if (m < 1) throw std::invalid_argument("harmonic radius needs m >= 1");
  const HarmonicTable& table = harmonic_table();
  if (m <= table.max_index()) return table.radius(m);
  double sum = table.radius(table.max_index());
  for (int i = table.max_index() + 1; i <= m; ++i) sum += 1.0 / i;
  return sum;
}

Point h_pq_std(const Point& x, int p, int q, double tau) {
  require_finite(x);
  const double ap = harmonic_radius(p);
  const double aq = harmonic_radius(q);
  if (std::abs(norm(x) - ap) > tau * ap) {
    throw std::invalid_argument("point is not on S_" + std::to_string(p));
  }
  if (p == q) return x;
  return scaled(x, aq / ap);
}

Point StdWeight::key_of(const Point& x) const {
  const double r = norm(x);
  if (!(r > 0.0)) throw std::invalid_argument("the origin has no radial direction");
  return scaled(x, 1.0 / r);
}

Point StdWeight::lift(const Point& u, int q) const { return scaled(u, harmonic_radius(q)); }

double StdWeight::same_sphere(const AnnotatedPoint& x, const AnnotatedPoint& y, int m) const {
  return euclidean_distance(x.point, y.point) / harmonic_radius(m);
}

double phi_std(const Point& x, const Point& y, double tau) { return StdWeight(tau)(x, y); }

BoundaryImage boundary_map_h_std(const Point& x) {
  require_finite(x);
  const double r = norm(x);
  if (r > 1.0 + 1e-12) throw std::invalid_argument("boundary map h is defined on the closed unit ball");
  if (r >= 1.0 - 1e-12) {
    Point u = scaled(x, 1.0 / r);
    auto representative = [u](int i) { return scaled(u, harmonic_radius(i)); };
    return {AtInfinity{std::move(u)}, representative};
  }
  Point y = scaled(x, 1.0 / (1.0 - r));
  return {Interior{y}, [y](int) { return y; }};
}

Point boundary_map_k_std(const BoundaryRep& b) {
  if (const auto* interior = std::get_if<Interior>(&b)) {
    require_finite(interior->point);
    return scaled(interior->point, 1.0 / (1.0 + norm(interior->point)));
  }
  const auto& boundary = std::get<AtInfinity>(b);
  require_finite(boundary.direction);
  if (std::abs(norm(boundary.direction) - 1.0) > 1e-12) {
    throw std::invalid_argument("boundary direction must be a unit vector");
  }
  return boundary.direction;
}

int net_index(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must satisfy 0 < eps < 1");
  const double quarter = epsilon / 4.0;
  for (int k = 1;; ++k) {
    if (1.0 / (1.0 + k) < quarter && 1.0 / (1.0 + harmonic_radius(k)) < quarter) return k;
  }
}

EpsilonNet build_epsilon_net(double epsilon, int dimension) {
  if (dimension < 2) throw std::invalid_argument("epsilon nets need dimension >= 2");
  EpsilonNet net;
  net.epsilon = epsilon;
  net.dimension = dimension;
  net.k = net_index(epsilon);

  const double ak = harmonic_radius(net.k);
  // Chord covering radius on S_k is 2 a_k sin(spacing/4) < eps/4.
  const double spacing = 0.999 * 4.0 * std::asin(std::min(1.0, epsilon / (8.0 * ak)));
  for (const Point& u : unit_sphere_net(dimension, spacing)) net.centers.push_back(scaled(u, ak));
  net.sphere_centers = net.centers.size();

  const double s = dimension;
  const double radius = harmonic_radius(net.k + 1);
  const double h = 0.999 * 2.0 * epsilon / std::sqrt(s);
  const double reach = radius + 0.5 * h * std::sqrt(s);
  const int n = static_cast<int>(std::ceil((radius + 0.5 * h) / h));
  std::vector<int> idx(static_cast<std::size_t>(dimension), -n);
  while (true) {
    Point c(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) c[i] = h * idx[i];
    if (norm(c) <= reach) net.centers.push_back(std::move(c));
    std::size_t pos = 0;
    while (pos < idx.size() && ++idx[pos] > n) idx[pos++] = -n;
    if (pos == idx.size()) break;
  }
  return net;
}

NetVerification verify_epsilon_net(const EpsilonNet& net, const CoverageQuery& query,
                                   const NetVerifyOptions& options) {
  NetVerification v;
  v.samples = options.samples;
  v.max_norm = options.max_norm > 0.0 ? options.max_norm : harmonic_radius(200);

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Point> samples(options.samples);
  for (Point& p : samples) {
    Point u(static_cast<std::size_t>(net.dimension));
    double r = 0.0;
    while (!(r > 1e-12)) {
      for (double& c : u) c = gauss(rng);
      r = norm(u);
    }
    p = scaled(u, v.max_norm * unit(rng) / r);
  }

  std::vector<double> reach(samples.size());
  parallel_for(samples.size(), [&](std::size_t i) { reach[i] = query(samples[i]); });
  for (double d : reach) {
    v.max_min_distance = std::max(v.max_min_distance, d);
    if (!(d < net.epsilon)) ++v.uncovered;
  }
  v.passed = v.uncovered == 0;
  return v;
}

EpsilonNet epsilon_net(double epsilon, int dimension, const CoverageSolverFactory& solver,
                       const NetVerifyOptions& options) {
  EpsilonNet net = build_epsilon_net(epsilon, dimension);
  net.verification = verify_epsilon_net(net, solver(net.centers), options);
  return net;
}

void write_net_csv(std::ostream& out, const EpsilonNet& net) {
  out << "center_index";
  for (int i = 1; i <= net.dimension; ++i) out << ",x_" << i;
  out << '\n';
  for (std::size_t i = 0; i < net.centers.size(); ++i) {
    out << i << ',' << format_point(net.centers[i]) << '\n';
  }
}

}  // namespace chainmetric

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

#include <cstdint>
#include <functional>
#include <ostream>
#include <span>
#include <vector>

#include "chainmetric/harmonic.hpp"
#include "chainmetric/identification.hpp"
#include "chainmetric/point.hpp"

namespace chainmetric {

inline constexpr double kDefaultSphereTolerance = 1e-9;

// Radial identification h_{p,q}(x) = (a_q / a_p) x of S_p onto S_q.
// Throws std::invalid_argument if | |x| - a_p | > tau * a_p.
Point h_pq_std(const Point& x, int p, int q, double tau = kDefaultSphereTolerance);

// The weight phi of the standard compactification: 0 on radially identified
// pairs, d_E(x,y)/a_m on pairs of one sphere S_m, d_E(x,y) otherwise.
class StdWeight final : public IdentificationWeight {
 public:
  explicit StdWeight(double tau = kDefaultSphereTolerance, const HarmonicTable& table = harmonic_table())
      : IdentificationWeight(tau, table) {}

  Point key_of(const Point& x) const override;
  Point lift(const Point& u, int q) const override;
  std::string name() const override { return "std_phi"; }

 protected:
  double same_sphere(const AnnotatedPoint& x, const AnnotatedPoint& y, int m) const override;
};

double phi_std(const Point& x, const Point& y, double tau = kDefaultSphereTolerance);

// h : closed unit ball -> completion. Interior(x / (1 - |x|)) inside, and
// AtInfinity(x) with representative i -> a_i x on the unit sphere.
BoundaryImage boundary_map_h_std(const Point& x);

// k = h^{-1}: Interior(y) -> y / (1 + |y|), AtInfinity(u) -> u.
Point boundary_map_k_std(const BoundaryRep& b);

// Smallest k with 1/(1+k) < eps/4 and 1/(1+a_k) < eps/4.
int net_index(double epsilon);

struct NetVerification {
  std::size_t samples = 0;
  double max_norm = 0.0;
  // Max over samples of the certified upper bound on min_c d^phi(sample, c).
  double max_min_distance = 0.0;
  std::size_t uncovered = 0;
  bool passed = false;
};

struct EpsilonNet {
  double epsilon = 0.0;
  int dimension = 0;
  int k = 0;
  // Centers on S_k come first, then the ball net.
  std::vector<Point> centers;
  std::size_t sphere_centers = 0;
  NetVerification verification;
};

struct NetVerifyOptions {
  std::size_t samples = 10'000;
  double max_norm = 0.0;  // 0 selects a_200
  std::uint64_t seed = 1;
};

// Certified upper bound on the d^phi distance from a point to a fixed center set.
using CoverageQuery = std::function<double(const Point&)>;
using CoverageSolverFactory = std::function<CoverageQuery(std::span<const Point> centers)>;

// Centers: a Euclidean eps/4-net of S_k together with a Euclidean eps-net of
// the closed ball of radius a_{k+1}. Requires 0 < eps < 1 and dimension >= 2.
EpsilonNet build_epsilon_net(double epsilon, int dimension);

// Samples points uniformly in direction and radius up to max_norm and checks
// that each lies within epsilon of the center set.
NetVerification verify_epsilon_net(const EpsilonNet& net, const CoverageQuery& query,
                                   const NetVerifyOptions& options);

EpsilonNet epsilon_net(double epsilon, int dimension, const CoverageSolverFactory& solver,
                       const NetVerifyOptions& options = {});

// CSV with header "center_index,x_1,...,x_s".
void write_net_csv(std::ostream& out, const EpsilonNet& net);

}  // namespace chainmetric

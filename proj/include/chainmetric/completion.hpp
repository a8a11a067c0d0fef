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

#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "chainmetric/euclid_sampler.hpp"
#include "chainmetric/identification.hpp"
#include "chainmetric/point.hpp"

namespace chainmetric {

// The first N terms x_1 .. x_N of a sequence given by its generator.
struct CauchyTruncation {
  std::function<Point(int)> generator;
  int horizon = 0;
  std::vector<Point> realized;  // realized[i-1] == generator(i)

  static CauchyTruncation of(std::function<Point(int)> generator, int horizon);
  static CauchyTruncation constant(const Point& x, int horizon);

  const Point& at(int i) const;  // 1-based
  bool is_constant() const;
};

// Upper-bound approximation of d^phi(x, y).
using PairSolver = std::function<double(const Point&, const Point&)>;

PairSolver sampled_solver(SampledDphi solver);

enum class Trend { decreasing, bounded_below, inconclusive };

std::string to_string(Trend trend);

struct RhoValue {
  int index = 0;
  double value = 0.0;
  // Certified bracket [lower_bound_certificate, delta] for the pair.
  double lower = 0.0;
  double upper = 0.0;
};

struct RhoEstimate {
  std::vector<RhoValue> values;
  Trend trend = Trend::inconclusive;
  // Smallest positive lower certificate over the table.
  std::optional<double> floor;
  // Upper bracket at the horizon.
  std::optional<double> cap;
};

// Tabulates approx d^phi(a_i, b_i) for i = 1..N. Constant truncations give the
// single-pair value at every index. Trend: decreasing when the mean of the last
// third is below the mean of the first third (or every value is 0),
// bounded-below when not decreasing and the floor is positive.
RhoEstimate rho_estimate(const EuclideanLinkCost& cost, const CauchyTruncation& a, const CauchyTruncation& b,
                         const PairSolver& solver, int N);

void write_rho_csv(std::ostream& out, const RhoEstimate& estimate);

enum class SequenceKind { finite, at_infinity, inconclusive };

std::string to_string(SequenceKind kind);

struct Classification {
  SequenceKind kind = SequenceKind::inconclusive;
  std::optional<BoundaryRep> rep;
  std::string detail;
  // Largest approx d^phi between two tail terms, and the matching bracket width.
  double tail_diameter = 0.0;
  double bracket_width = 0.0;
};

// The tail is the last third of the horizon. The sequence must be numerically
// Cauchy: tail diameter at most 10x the widest certified bracket, or a tail
// that fits inside the local isometry ball of x_N. Then:
//   Finite(x_N) when the tail's Euclidean diameter is within that ball;
//   AtInfinity(key) when norms increase over the tail and the weight's keys
//   agree within 1e-6;
//   otherwise inconclusive.
Classification classify_sequence(const CauchyTruncation& seq, const EuclideanLinkCost& cost,
                                 const PairSolver& solver);

struct NonequivalenceRow {
  int i = 0;
  double a_i = 0.0;
  double psi_measured = 0.0;
  double psi_floor = 0.0;
  double phi_measured = 0.0;
  double phi_cap = 0.0;
};

struct NonequivalenceReport {
  double delta = 0.0;
  int horizon = 0;
  double floor = 0.0;
  double min_psi = 0.0;
  double max_phi_cap_at_N = 0.0;
  bool floor_holds = false;
  bool caps_hold = false;
  bool caps_decreasing = false;
  std::vector<NonequivalenceRow> rows;

  bool ok() const { return floor_holds && caps_hold && caps_decreasing; }
  std::string verdict() const;
};

// sin(delta/2) / (2 sqrt 2).
double nonequivalence_floor(double delta);
// 2/(1+a_i) + delta/(2 a_i).
double nonequivalence_cap(double delta, int i);

// a_i = (a_i, 0, ..) and b_i = h_{1,i}(b_1) with b_1 at angle delta/2 from e_1
// under the ray system of cone angle delta. Both d^phi and d^psi are measured
// with the given sampler settings and anchor at the origin.
NonequivalenceReport nonequivalence_experiment(double delta, int N, const SamplerConfig& config);

void write_nonequivalence_csv(std::ostream& out, const NonequivalenceReport& report);

}  // namespace chainmetric

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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "chainmetric/completion.hpp"
#include "chainmetric/ray_psi.hpp"
#include "chainmetric/std_phi.hpp"

namespace chainmetric {
namespace {

EuclideanLinkCost std_cost() { return EuclideanLinkCost(std::make_shared<StdWeight>(), Point{0.0, 0.0}); }

SamplerConfig small_sampler() {
  SamplerConfig c;
  c.max_sphere_index = 6;
  c.angular_resolution = std::numbers::pi / 4.0;
  c.radial_steps = 1;
  return c;
}

TEST(CauchyTruncation, RealizesGenerator) {
  const auto t = CauchyTruncation::of([](int i) { return Point{1.0 * i, 0.0}; }, 5);
  EXPECT_EQ(t.realized.size(), 5u);
  EXPECT_EQ(t.at(3), (Point{3.0, 0.0}));
  EXPECT_THROW(t.at(6), std::out_of_range);
  EXPECT_FALSE(t.is_constant());
  EXPECT_TRUE(CauchyTruncation::constant(Point{1.0, 2.0}, 4).is_constant());
  EXPECT_THROW(CauchyTruncation::of([](int) { return Point{NAN, 0.0}; }, 2), std::invalid_argument);
}

TEST(RhoEstimate, EqualTruncationsAreZero) {
  const auto cost = std_cost();
  const auto a = CauchyTruncation::of([](int i) { return Point{harmonic_radius(i), 0.0}; }, 9);
  const auto est = rho_estimate(cost, a, a, sampled_solver(SampledDphi(cost, small_sampler())), 9);
  for (const RhoValue& v : est.values) EXPECT_EQ(v.value, 0.0);
  EXPECT_EQ(est.trend, Trend::decreasing);
}

TEST(RhoEstimate, ConstantSequencesGiveSinglePairValue) {
  const auto cost = std_cost();
  const Point x{0.4, 0.1}, y{3.0, -2.0};
  const SampledDphi solver(cost, small_sampler());
  const auto est = rho_estimate(cost, CauchyTruncation::constant(x, 6), CauchyTruncation::constant(y, 6),
                                sampled_solver(solver), 6);
  const double single = solver.approx(x, y).upper_bound;
  ASSERT_EQ(est.values.size(), 6u);
  for (const RhoValue& v : est.values) {
    EXPECT_EQ(v.value, single);
    EXPECT_LE(v.lower, v.value);
    EXPECT_LE(v.value, v.upper);
  }
}

TEST(RhoEstimate, OrthogonalRaysDecreaseAboveEuclideanFloor) {
  const auto cost = std_cost();
  const auto a = CauchyTruncation::of([](int i) { return Point{harmonic_radius(i), 0.0}; }, 12);
  const auto b = CauchyTruncation::of([](int i) { return Point{0.0, harmonic_radius(i)}; }, 12);
  const auto est = rho_estimate(cost, a, b, sampled_solver(SampledDphi(cost, small_sampler())), 12);
  for (const RhoValue& v : est.values) {
    const double ai = harmonic_radius(v.index);
    EXPECT_GE(v.value, std::sqrt(2.0) - 1e-9);
    EXPECT_LE(v.value, 2.0 / (1.0 + ai) + std::sqrt(2.0) + 1e-12);
    EXPECT_LE(v.lower, v.value + 1e-12);
    EXPECT_LE(v.value, v.upper + 1e-12);
  }
  EXPECT_EQ(est.trend, Trend::decreasing);
  ASSERT_TRUE(est.floor.has_value());
  ASSERT_TRUE(est.cap.has_value());

  std::ostringstream csv;
  write_rho_csv(csv, est);
  EXPECT_EQ(csv.str().substr(0, csv.str().find('\n')), "i,value,lower,upper");
}

TEST(RhoEstimate, RequiresTwoTerms) {
  const auto cost = std_cost();
  const auto a = CauchyTruncation::constant(Point{0.0, 0.0}, 3);
  const PairSolver zero = [](const Point&, const Point&) { return 0.0; };
  EXPECT_THROW(rho_estimate(cost, a, a, zero, 1), std::invalid_argument);
  EXPECT_THROW(rho_estimate(cost, a, a, zero, 4), std::invalid_argument);
}

TEST(ClassifySequence, ConstantIsFinite) {
  const auto cost = std_cost();
  const Point x{2.0, -1.0};
  const auto c = classify_sequence(CauchyTruncation::constant(x, 12), cost,
                                   sampled_solver(SampledDphi(cost, small_sampler())));
  ASSERT_EQ(c.kind, SequenceKind::finite);
  EXPECT_EQ(std::get<Interior>(*c.rep).point, x);
}

TEST(ClassifySequence, HarmonicRayIsAtInfinity) {
  const auto cost = std_cost();
  const Point u{0.6, -0.8};
  const auto seq = CauchyTruncation::of([&](int i) { return scaled(u, harmonic_radius(i)); }, 15);
  const auto c = classify_sequence(seq, cost, sampled_solver(SampledDphi(cost, small_sampler())));
  ASSERT_EQ(c.kind, SequenceKind::at_infinity);
  EXPECT_LE(euclidean_distance(std::get<AtInfinity>(*c.rep).direction, u), 1e-9);
}

TEST(ClassifySequence, OscillationConvergesToLimit) {
  const auto cost = std_cost();
  const Point y{1.2, 0.7};
  const auto seq = CauchyTruncation::of(
      [&](int i) { return axpy(y, (i % 2 ? 1.0 : -1.0) / (1.0 * i * i), Point{0.6, 0.8}); }, 30);
  const auto c = classify_sequence(seq, cost, sampled_solver(SampledDphi(cost, small_sampler())));
  ASSERT_EQ(c.kind, SequenceKind::finite);
  EXPECT_LE(euclidean_distance(std::get<Interior>(*c.rep).point, y), 1.0 / 900.0 + 1e-15);
}

TEST(ClassifySequence, RotatingEscapeIsInconclusive) {
  const auto cost = std_cost();
  const auto seq = CauchyTruncation::of(
      [](int i) { return Point{harmonic_radius(i) * std::cos(0.5 * i), harmonic_radius(i) * std::sin(0.5 * i)}; },
      12);
  const auto c = classify_sequence(seq, cost, sampled_solver(SampledDphi(cost, small_sampler())));
  EXPECT_EQ(c.kind, SequenceKind::inconclusive);
  EXPECT_FALSE(c.rep.has_value());
}

TEST(ClassifySequence, BoundaryRepresentativeRoundTrip) {
  const auto cost = std_cost();
  const Point u{std::cos(2.2), std::sin(2.2)};
  const auto image = boundary_map_h_std(u);
  const auto c = classify_sequence(CauchyTruncation::of(image.representative, 12), cost,
                                   sampled_solver(SampledDphi(cost, small_sampler())));
  ASSERT_EQ(c.kind, SequenceKind::at_infinity);
  EXPECT_LE(euclidean_distance(std::get<AtInfinity>(*c.rep).direction, std::get<AtInfinity>(image.rep).direction),
            1e-9);
}

TEST(Nonequivalence, FloorAndCaps) {
  EXPECT_NEAR(nonequivalence_floor(0.6), std::sin(0.3) / (2.0 * std::sqrt(2.0)), 1e-16);
  EXPECT_NEAR(nonequivalence_floor(0.6), 0.104482, 1e-6);
  EXPECT_NEAR(nonequivalence_cap(0.6, 1), 1.3, 1e-15);
  EXPECT_NEAR(nonequivalence_cap(0.6, 20), 0.518382045676328, 1e-12);
  for (int i = 1; i < 200; ++i) EXPECT_LT(nonequivalence_cap(0.6, i + 1), nonequivalence_cap(0.6, i));
}

TEST(Nonequivalence, ShortHorizonReport) {
  const auto report = nonequivalence_experiment(0.6, 6, small_sampler());
  ASSERT_EQ(report.rows.size(), 6u);
  EXPECT_TRUE(report.floor_holds);
  EXPECT_TRUE(report.caps_hold);
  EXPECT_TRUE(report.caps_decreasing);
  EXPECT_EQ(report.verdict(), "non-equivalent");
  for (const auto& row : report.rows) {
    EXPECT_GE(row.psi_measured, report.floor);
    EXPECT_LE(row.phi_measured, row.phi_cap);
  }
  std::ostringstream csv;
  write_nonequivalence_csv(csv, report);
  EXPECT_EQ(csv.str().substr(0, csv.str().find('\n')), "i,a_i,psi_measured,psi_floor,phi_measured,phi_cap");
}

TEST(Nonequivalence, RejectsBadArguments) {
  EXPECT_THROW(nonequivalence_experiment(0.9, 10, small_sampler()), std::invalid_argument);
  EXPECT_THROW(nonequivalence_experiment(0.6, 4, small_sampler()), std::invalid_argument);
}

}  // namespace
}  // namespace chainmetric

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

#include "chainmetric/metric_core.hpp"

namespace chainmetric {
namespace {

MetricContext<Point> plane(double phi = 0.0) {
  return {[](const Point& a, const Point& b) { return euclidean_distance(a, b); },
          [phi](const Point&, const Point&) { return phi; }, Point{0.0, 0.0}};
}

TEST(Delta, SamePointIsZero) {
  const auto ctx = plane();
  EXPECT_EQ(delta(ctx, Point{3.0, 4.0}, Point{3.0, 4.0}), 0.0);
}

TEST(Delta, DetourBranchFarApart) {
  const auto ctx = plane();
  EXPECT_NEAR(delta(ctx, Point{10.0, 0.0}, Point{-10.0, 0.0}), 2.0 / 11.0, 1e-15);
}

TEST(Delta, DistanceBranchNearby) {
  const auto ctx = plane();
  EXPECT_NEAR(delta(ctx, Point{0.1, 0.0}, Point{0.2, 0.0}), 0.1, 1e-15);
}

TEST(Delta, WeightEntersDetour) {
  const auto ctx = plane(3.0);
  EXPECT_NEAR(delta(ctx, Point{10.0, 0.0}, Point{-10.0, 0.0}), 3.0 + 2.0 / 11.0, 1e-14);
}

TEST(Delta, SymmetricBitForBit) {
  MetricContext<Point> ctx = plane();
  ctx.weight = [](const Point& a, const Point& b) { return 0.1 * a[0] + 0.3 * b[1] + 1.0; };
  const Point x{5.0, 1.0}, y{-4.0, 2.0};
  EXPECT_EQ(delta(ctx, x, y), delta(ctx, y, x));
}

TEST(Delta, RejectsNonFinite) {
  const auto ctx = plane();
  EXPECT_THROW(delta(ctx, Point{NAN, 0.0}, Point{0.0, 0.0}), std::invalid_argument);
}

TEST(ChainCost, SingleLinkIsDelta) {
  const auto ctx = plane();
  const Point x{10.0, 0.0}, y{-10.0, 0.0};
  EXPECT_EQ(chain_cost(ctx, Chain<Point>{{x, y}}), delta(ctx, x, y));
}

TEST(ChainCost, RepeatedPointAddsNothing) {
  const auto ctx = plane();
  const Point x{10.0, 0.0}, z{0.0, 0.0}, y{-10.0, 0.0};
  EXPECT_DOUBLE_EQ(chain_cost(ctx, Chain<Point>{{x, z, z, y}}), chain_cost(ctx, Chain<Point>{{x, z, y}}));
}

TEST(ChainCost, ThroughAnchor) {
  const auto ctx = plane();
  const Point x{10.0, 0.0}, m{0.0, 0.0}, y{-10.0, 0.0};
  EXPECT_NEAR(chain_cost(ctx, Chain<Point>{{x, m, y}}), 24.0 / 11.0, 1e-14);
}

TEST(ChainCost, NeedsTwoPoints) {
  const auto ctx = plane();
  EXPECT_THROW(chain_cost(ctx, Chain<Point>{{Point{0.0, 0.0}}}), std::invalid_argument);
}

TEST(LowerBound, Examples) {
  const auto ctx = plane();
  EXPECT_EQ(lower_bound_certificate(ctx, Point{1.0, 1.0}, Point{1.0, 1.0}), 0.0);
  EXPECT_NEAR(lower_bound_certificate(ctx, Point{10.0, 0.0}, Point{-10.0, 0.0}), 1.0 / 22.0, 1e-15);
  EXPECT_NEAR(lower_bound_certificate(ctx, Point{0.0, 0.0}, Point{0.001, 0.0}), 0.001, 1e-15);
}

TEST(LowerBound, NeverAboveDelta) {
  const auto ctx = plane(0.25);
  for (int i = -5; i <= 5; ++i) {
    for (int j = -5; j <= 5; ++j) {
      const Point x{1.7 * i, 0.3 * j}, y{-0.9 * j, 2.1 * i};
      const auto cert = certify(ctx, x, y);
      EXPECT_LE(cert.lower, cert.upper);
      EXPECT_LE(cert.upper, euclidean_distance(x, y));
    }
  }
}

TEST(LocalIsometryRadius, Examples) {
  const auto ctx = plane();
  EXPECT_DOUBLE_EQ(local_isometry_radius(ctx, Point{0.0, 0.0}), 0.125);
  EXPECT_NEAR(local_isometry_radius(ctx, Point{10.0, 0.0}), 1.0 / 88.0, 1e-16);
  EXPECT_NEAR(local_isometry_radius(ctx, Point{0.0, 1.0}), 0.0625, 1e-16);
}

TEST(Axioms, ThreePointChainMetricPasses) {
  const double a = 2.0 / 11.0, b = 12.0 / 11.0;
  const auto report = verify_metric_axioms(DistanceMatrix::from_rows({{0, b, b}, {b, 0, a}, {b, a, 0}}), 1e-12);
  EXPECT_TRUE(report.ok());
}

TEST(Axioms, NegativeEntry) {
  const auto report = verify_metric_axioms(DistanceMatrix::from_rows({{0, -1}, {-1, 0}}), 1e-12);
  EXPECT_FALSE(report.ok());
  EXPECT_GT(report.count(Axiom::nonnegativity), 0u);
}

TEST(Axioms, Asymmetric) {
  const auto report = verify_metric_axioms(DistanceMatrix::from_rows({{0, 1}, {2, 0}}), 1e-12);
  EXPECT_GT(report.count(Axiom::symmetry), 0u);
}

TEST(Axioms, TriangleAndIdentity) {
  const auto triangle = verify_metric_axioms(DistanceMatrix::from_rows({{0, 1, 5}, {1, 0, 1}, {5, 1, 0}}), 1e-12);
  EXPECT_GT(triangle.count(Axiom::triangle), 0u);
  const auto identity = verify_metric_axioms(DistanceMatrix::from_rows({{0, 0}, {0, 0}}), 1e-12);
  EXPECT_GT(identity.count(Axiom::identity), 0u);
  const auto diagonal = verify_metric_axioms(DistanceMatrix::from_rows({{0.5, 1}, {1, 0}}), 1e-12);
  EXPECT_GT(diagonal.count(Axiom::identity), 0u);
}

TEST(DistanceMatrix, RejectsRagged) {
  EXPECT_THROW(DistanceMatrix::from_rows({{0, 1}, {1}}), std::invalid_argument);
}

}  // namespace
}  // namespace chainmetric

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
#include <memory>
#include <optional>
#include <string>
#include <variant>

#include "chainmetric/harmonic.hpp"
#include "chainmetric/metric_core.hpp"
#include "chainmetric/point.hpp"

namespace chainmetric {

// Marks a point lying on S_index. key is its image on S_1 under the
// sphere-to-sphere identification of the weight; two tagged points are
// identified exactly when their keys agree.
struct SphereTag {
  int index = 0;
  Point key;
};

struct AnnotatedPoint {
  Point point;
  double anchor_distance = 0.0;
  std::optional<SphereTag> sphere;
};

// A nonnegative symmetric weight on R^s built from an identification of the
// spheres S_m: zero on identified pairs, a same-sphere distance between points
// of one S_m, and the Euclidean distance otherwise.
class IdentificationWeight {
 public:
  explicit IdentificationWeight(double tau, const HarmonicTable& table = harmonic_table())
      : tau_(tau), table_(&table) {}
  virtual ~IdentificationWeight() = default;

  double tolerance() const { return tau_; }
  const HarmonicTable& table() const { return *table_; }

  // Sphere membership (relative tolerance tau) and key of an arbitrary point.
  std::optional<SphereTag> classify(const Point& x) const;

  double evaluate(const AnnotatedPoint& x, const AnnotatedPoint& y) const;
  double operator()(const Point& x, const Point& y) const;

  // Point of S_1 whose identification curve passes through x (|x| >= 1).
  virtual Point key_of(const Point& x) const = 0;
  // Image of u in S_1 on S_q along its identification curve.
  virtual Point lift(const Point& u, int q) const = 0;
  virtual std::string name() const = 0;

 protected:
  virtual double same_sphere(const AnnotatedPoint& x, const AnnotatedPoint& y, int m) const = 0;

 private:
  double tau_;
  const HarmonicTable* table_;
};

// delta^{w,anchor} on (R^s, d_E) with an identification weight w. Points are
// annotated with their anchor distance and sphere tag.
class EuclideanLinkCost {
 public:
  // The anchor also fixes the dimension of every point passed in.
  EuclideanLinkCost(std::shared_ptr<const IdentificationWeight> weight, Point anchor);

  const IdentificationWeight& weight() const { return *weight_; }
  std::shared_ptr<const IdentificationWeight> weight_ptr() const { return weight_; }
  const Point& anchor() const { return anchor_; }

  AnnotatedPoint annotate(const Point& x) const;
  AnnotatedPoint annotate(const Point& x, std::optional<SphereTag> known) const;

  double delta(const AnnotatedPoint& x, const AnnotatedPoint& y) const;
  double delta(const Point& x, const Point& y) const { return delta(annotate(x), annotate(y)); }

  // The same link cost as a generic context, for the certificate functions.
  MetricContext<Point> context() const;

 private:
  std::shared_ptr<const IdentificationWeight> weight_;
  Point anchor_;
};

// Canonical completion points of a compactification of R^s: an ordinary point,
// or a boundary point labelled by a point of S_1.
struct Interior {
  Point point;
};
struct AtInfinity {
  Point direction;
};
using BoundaryRep = std::variant<Interior, AtInfinity>;

// A boundary point together with a Cauchy sequence representing it.
struct BoundaryImage {
  BoundaryRep rep;
  std::function<Point(int)> representative;
};

}  // namespace chainmetric

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

#include "chainmetric/identification.hpp"

#include <stdexcept>

namespace chainmetric {

std::optional<SphereTag> IdentificationWeight::classify(const Point& x) const {
  const double r = norm(x);
  const std::optional<int> index = table_->sphere_index(r, tau_);
  if (!index) return std::nullopt;
  if (*index == 1) return SphereTag{1, scaled(x, 1.0 / r)};
  return SphereTag{*index, key_of(x)};
}

double IdentificationWeight::evaluate(const AnnotatedPoint& x, const AnnotatedPoint& y) const {
  if (x.sphere && y.sphere) {
    if (euclidean_distance(x.sphere->key, y.sphere->key) <= tau_) return 0.0;
    if (x.sphere->index == y.sphere->index) return same_sphere(x, y, x.sphere->index);
  }
  return euclidean_distance(x.point, y.point);
}

double IdentificationWeight::operator()(const Point& x, const Point& y) const {
  require_finite(x);
  require_finite(y);
  AnnotatedPoint a{x, 0.0, classify(x)};
  AnnotatedPoint b{y, 0.0, classify(y)};
  return evaluate(a, b);
}

EuclideanLinkCost::EuclideanLinkCost(std::shared_ptr<const IdentificationWeight> weight, Point anchor)
    : weight_(std::move(weight)), anchor_(std::move(anchor)) {
  if (!weight_) throw std::invalid_argument("link cost needs a weight");
  if (anchor_.empty()) throw std::invalid_argument("anchor must have a dimension");
  require_finite(anchor_);
}

AnnotatedPoint EuclideanLinkCost::annotate(const Point& x) const {
  if (x.size() != anchor_.size()) throw std::invalid_argument("point dimension does not match the anchor");
  require_finite(x);
  return AnnotatedPoint{x, euclidean_distance(anchor_, x), weight_->classify(x)};
}

AnnotatedPoint EuclideanLinkCost::annotate(const Point& x, std::optional<SphereTag> known) const {
  if (!known) return annotate(x);
  if (x.size() != anchor_.size()) throw std::invalid_argument("point dimension does not match the anchor");
  require_finite(x);
  return AnnotatedPoint{x, euclidean_distance(anchor_, x), std::move(known)};
}

double EuclideanLinkCost::delta(const AnnotatedPoint& x, const AnnotatedPoint& y) const {
  const AnnotatedPoint* a = &x;
  const AnnotatedPoint* b = &y;
  if (b->point < a->point) std::swap(a, b);
  const double direct = euclidean_distance(a->point, b->point);
  const double detour =
      1.0 / (1.0 + a->anchor_distance) + weight_->evaluate(*a, *b) + 1.0 / (1.0 + b->anchor_distance);
  return std::min(direct, detour);
}

MetricContext<Point> EuclideanLinkCost::context() const {
  MetricContext<Point> ctx;
  ctx.base_distance = [](const Point& a, const Point& b) { return euclidean_distance(a, b); };
  ctx.weight = [w = weight_](const Point& a, const Point& b) { return (*w)(a, b); };
  ctx.anchor = anchor_;
  return ctx;
}

}  // namespace chainmetric

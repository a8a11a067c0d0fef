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

#include <cstddef>
#include <functional>
#include <istream>
#include <ostream>
#include <span>

#include "chainmetric/metric_core.hpp"
#include "chainmetric/point.hpp"

namespace chainmetric {

// A finite metric space given by its distance matrix; points are indices.
struct FiniteSpace {
  DistanceMatrix distances;
  std::size_t anchor = 0;

  std::size_t size() const { return distances.size(); }

  // Validates the matrix with verify_metric_axioms at tolerance 1e-12.
  static FiniteSpace from_matrix(DistanceMatrix distances, std::size_t anchor);
  // Euclidean distances between the given coordinates.
  static FiniteSpace from_points(std::span<const Point> points, std::size_t anchor);
};

using FiniteContext = MetricContext<std::size_t>;

// Context whose weight is read from a symmetric nonnegative matrix.
FiniteContext finite_context(const FiniteSpace& space, DistanceMatrix weight);
FiniteContext finite_context(const FiniteSpace& space,
                             std::function<double(std::size_t, std::size_t)> weight);
// phi == 0 everywhere.
FiniteContext finite_context(const FiniteSpace& space);

// Exact d^phi on a finite space. Loop erasure reduces every chain to a simple
// one, so single-source shortest paths over the complete delta-weighted graph
// attain the infimum.
DistanceMatrix dphi_exact(const FiniteContext& ctx, const FiniteSpace& space);

// Independent oracle: minimum chain_cost over an explicit enumeration of all
// simple chains between every ordered pair. Throws std::invalid_argument when
// the space has more than max_points points.
DistanceMatrix dphi_bruteforce(const FiniteContext& ctx, const FiniteSpace& space,
                               std::size_t max_points = 10);

// Text format: first line n, then n rows of n whitespace-separated reals.
DistanceMatrix read_distance_matrix(std::istream& in);
void write_distance_matrix(std::ostream& out, const DistanceMatrix& matrix);

}  // namespace chainmetric

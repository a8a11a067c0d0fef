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
#include <random>

#include "chainmetric/finite_oracle.hpp"

namespace chainmetric::testing {

// Shortest-path closure of random positive edge weights.
inline DistanceMatrix random_metric(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> w(0.05, 30.0);
  DistanceMatrix d(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) d(i, j) = d(j, i) = w(rng);
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) d(i, j) = std::min(d(i, j), d(i, k) + d(k, j));
    }
  }
  return d;
}

inline DistanceMatrix random_weight(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> w(0.0, 2.0);
  DistanceMatrix phi(n);
  for (std::size_t i = 0; i < n; ++i) {
    phi(i, i) = w(rng);
    for (std::size_t j = i + 1; j < n; ++j) phi(i, j) = phi(j, i) = w(rng);
  }
  return phi;
}

// Floyd-Warshall over the delta matrix.
inline DistanceMatrix floyd_dphi(const FiniteContext& ctx, std::size_t n) {
  DistanceMatrix d(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) d(i, j) = delta(ctx, i, j);
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) d(i, j) = std::min(d(i, j), d(i, k) + d(k, j));
    }
  }
  return d;
}

}  // namespace chainmetric::testing

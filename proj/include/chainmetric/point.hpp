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

#include <cmath>
#include <cstddef>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace chainmetric {

// A point of R^s. The dimension is carried by the vector length.
using Point = std::vector<double>;

inline double dot(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

inline double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

inline double euclidean_distance(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

inline Point scaled(std::span<const double> a, double factor) {
  Point out(a.begin(), a.end());
  for (double& v : out) v *= factor;
  return out;
}

// a + factor * b
inline Point axpy(std::span<const double> a, double factor, std::span<const double> b) {
  Point out(a.begin(), a.end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += factor * b[i];
  return out;
}

inline Point unit_axis(std::size_t dimension, std::size_t axis = 0) {
  Point e(dimension, 0.0);
  e.at(axis) = 1.0;
  return e;
}

inline bool is_finite(std::span<const double> a) {
  for (double v : a) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

inline void require_finite(std::span<const double> a) {
  if (!is_finite(a)) throw std::invalid_argument("point has a non-finite coordinate");
}

inline void require_finite(std::size_t) {}

// Reals in text outputs use 17 significant digits so they round-trip.
std::string format_real(double value);
std::string format_point(std::span<const double> p, char separator = ',');
Point parse_point(const std::string& text);

}  // namespace chainmetric

namespace chainmetric {

// Deterministic net of unit directions in R^s (s >= 2): every unit vector lies
// within angle spacing/2 of a returned direction. Halving spacing yields a
// superset with the earlier directions reproduced bit for bit. For s = 2 the
// directions are 2^j equally spaced angles; for s >= 3 they are a dyadic grid
// on the faces of [-1,1]^s projected radially onto the sphere.
std::vector<Point> unit_sphere_net(int dimension, double spacing);

}  // namespace chainmetric

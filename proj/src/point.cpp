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

#include "chainmetric/point.hpp"

#include <cstdio>
#include <sstream>

namespace chainmetric {

std::string format_real(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::string format_point(std::span<const double> p, char separator) {
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += separator;
    out += format_real(p[i]);
  }
  return out;
}

Point parse_point(const std::string& text) {
  Point p;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(token, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("cannot parse coordinate '" + token + "'");
    }
    while (used < token.size() && std::isspace(static_cast<unsigned char>(token[used]))) ++used;
    if (used != token.size()) throw std::invalid_argument("cannot parse coordinate '" + token + "'");
    p.push_back(value);
  }
  if (p.empty()) throw std::invalid_argument("empty point");
  require_finite(p);
  return p;
}

}  // namespace chainmetric

#include <map>
#include <numbers>

namespace chainmetric {

namespace {

int dyadic_at_least(double value) {
  int n = 1;
  while (n < value) {
    if (n > (1 << 24)) throw std::invalid_argument("sphere net spacing too small");
    n *= 2;
  }
  return n;
}

}  // namespace

std::vector<Point> unit_sphere_net(int dimension, double spacing) {
  if (dimension < 2) throw std::invalid_argument("sphere nets need dimension >= 2");
  if (!(spacing > 0.0) || !std::isfinite(spacing)) throw std::invalid_argument("spacing must be positive");

  std::vector<Point> out;
  if (dimension == 2) {
    const int count = std::max(4, dyadic_at_least(2.0 * std::numbers::pi / spacing));
    out.reserve(static_cast<std::size_t>(count));
    for (int j = 0; j < count; ++j) {
      const double angle = 2.0 * std::numbers::pi * (static_cast<double>(j) / count);
      out.push_back({std::cos(angle), std::sin(angle)});
    }
    return out;
  }

  // Chord covering radius of the projected grid is at most sqrt(s-1)/n.
  const double chord = 2.0 * std::sin(std::min(spacing, std::numbers::pi) / 4.0);
  const int n = std::max(2, dyadic_at_least(std::sqrt(dimension - 1.0) / chord));
  const std::size_t s = static_cast<std::size_t>(dimension);

  std::map<Point, bool> seen;
  std::vector<int> idx(s - 1, 0);
  for (std::size_t face = 0; face < s; ++face) {
    for (double sign : {1.0, -1.0}) {
      std::fill(idx.begin(), idx.end(), 0);
      while (true) {
        Point p(s);
        std::size_t t = 0;
        for (std::size_t c = 0; c < s; ++c) {
          if (c == face) {
            p[c] = sign;
          } else {
            p[c] = -1.0 + 2.0 * (static_cast<double>(idx[t++]) / n);
          }
        }
        const double r = norm(p);
        for (double& v : p) v /= r;
        if (seen.emplace(p, true).second) out.push_back(std::move(p));

        std::size_t pos = 0;
        while (pos < idx.size() && ++idx[pos] > n) idx[pos++] = 0;
        if (pos == idx.size()) break;
      }
    }
  }
  return out;
}

}  // namespace chainmetric

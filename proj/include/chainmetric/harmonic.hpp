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
#include <optional>
#include <vector>

namespace chainmetric {

// Harmonic radii a_m = 1 + 1/2 + ... + 1/m, accumulated as a_m = a_{m-1} + 1/m.
// S_m is the sphere of radius a_m about the origin.
class HarmonicTable {
 public:
  static constexpr int kDefaultMaxIndex = 1'000'000;

  explicit HarmonicTable(int max_index = kDefaultMaxIndex);

  int max_index() const { return static_cast<int>(radii_.size()) - 1; }

  // a_m for 1 <= m <= max_index().
  double radius(int m) const;

  // The p with |r - a_p| <= tau * a_p, if any.
  std::optional<int> sphere_index(double r, double tau) const;

  // Largest m with a_m <= r (0 when r < 1), capped at max_index().
  int shell_index(double r) const;

 private:
  std::vector<double> radii_;  // radii_[0] = 0
};

// Process-wide table with the default bound, built on first use.
const HarmonicTable& harmonic_table();

// a_m for any m >= 1; throws std::invalid_argument for m < 1.
double harmonic_radius(int m);

}  // namespace chainmetric

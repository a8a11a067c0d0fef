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

#include "chainmetric/metric_core.hpp"

#include <cmath>

namespace chainmetric {

DistanceMatrix DistanceMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  DistanceMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) {
      throw std::invalid_argument("matrix is not square: row " + std::to_string(i) + " has " +
                                  std::to_string(rows[i].size()) + " entries, expected " +
                                  std::to_string(rows.size()));
    }
    for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

std::vector<std::vector<double>> DistanceMatrix::rows() const {
  std::vector<std::vector<double>> out(n_, std::vector<double>(n_));
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) out[i][j] = (*this)(i, j);
  }
  return out;
}

std::string to_string(Axiom axiom) {
  switch (axiom) {
    case Axiom::nonnegativity: return "nonnegativity";
    case Axiom::identity: return "identity";
    case Axiom::symmetry: return "symmetry";
    case Axiom::triangle: return "triangle";
  }
  return "unknown";
}

std::size_t AxiomReport::count(Axiom axiom) const {
  return static_cast<std::size_t>(std::count_if(
      violations.begin(), violations.end(), [axiom](const AxiomViolation& v) { return v.axiom == axiom; }));
}

AxiomReport verify_metric_axioms(const DistanceMatrix& m, double tol, std::size_t max_recorded) {
  AxiomReport report;
  report.points = m.size();
  auto record = [&](Axiom axiom, std::size_t i, std::size_t j, std::size_t k, double excess) {
    ++report.total_violations;
    if (report.violations.size() < max_recorded) report.violations.push_back({axiom, i, j, k, excess});
  };

  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = m(i, j);
      if (!std::isfinite(v)) {
        record(Axiom::nonnegativity, i, j, 0, v);
        continue;
      }
      if (v < -tol) record(Axiom::nonnegativity, i, j, 0, -v);
      if (i == j && std::abs(v) > tol) record(Axiom::identity, i, j, 0, std::abs(v));
      if (i != j && v <= tol) record(Axiom::identity, i, j, 0, tol - v);
      if (i < j && std::abs(v - m(j, i)) > tol) record(Axiom::symmetry, i, j, 0, std::abs(v - m(j, i)));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        const double excess = m(i, k) - (m(i, j) + m(j, k));
        if (excess > tol) record(Axiom::triangle, i, j, k, excess);
      }
    }
  }
  return report;
}

AxiomReport verify_metric_axioms(const std::vector<std::vector<double>>& matrix, double tol,
                                 std::size_t max_recorded) {
  return verify_metric_axioms(DistanceMatrix::from_rows(matrix), tol, max_recorded);
}

}  // namespace chainmetric

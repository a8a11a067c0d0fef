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

#include "chainmetric/completion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "chainmetric/harmonic.hpp"
#include "chainmetric/parallel.hpp"
#include "chainmetric/ray_psi.hpp"
#include "chainmetric/std_phi.hpp"

namespace chainmetric {

CauchyTruncation CauchyTruncation::of(std::function<Point(int)> generator, int horizon) {
  if (horizon < 1) throw std::invalid_argument("truncation horizon must be >= 1");
  if (!generator) throw std::invalid_argument("truncation needs a generator");
  CauchyTruncation out;
  out.generator = std::move(generator);
  out.horizon = horizon;
  out.realized.reserve(static_cast<std::size_t>(horizon));
  for (int i = 1; i <= horizon; ++i) {
    Point p = out.generator(i);
    require_finite(p);
    out.realized.push_back(std::move(p));
  }
  return out;
}

CauchyTruncation CauchyTruncation::constant(const Point& x, int horizon) {
  return of([x](int) { return x; }, horizon);
}

const Point& CauchyTruncation::at(int i) const {
  if (i < 1 || i > horizon) throw std::out_of_range("truncation index out of range");
  return realized[static_cast<std::size_t>(i - 1)];
}

bool CauchyTruncation::is_constant() const {
  return std::all_of(realized.begin(), realized.end(), [&](const Point& p) { return p == realized.front(); });
}

PairSolver sampled_solver(SampledDphi solver) {
  return [solver = std::move(solver)](const Point& x, const Point& y) {
    if (x == y) return 0.0;
    return solver.approx(x, y).upper_bound;
  };
}

std::string to_string(Trend trend) {
  switch (trend) {
    case Trend::decreasing: return "decreasing";
    case Trend::bounded_below: return "bounded-below";
    case Trend::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::string to_string(SequenceKind kind) {
  switch (kind) {
    case SequenceKind::finite: return "finite";
    case SequenceKind::at_infinity: return "at-infinity";
    case SequenceKind::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

namespace {

double mean_of(std::span<const RhoValue> values) {
  double total = 0.0;
  for (const RhoValue& v : values) total += v.value;
  return total / static_cast<double>(values.size());
}

std::size_t third(std::size_t n) { return std::max<std::size_t>(1, n / 3); }

}  // namespace

RhoEstimate rho_estimate(const EuclideanLinkCost& cost, const CauchyTruncation& a, const CauchyTruncation& b,
                         const PairSolver& solver, int N) {
  if (N < 2) throw std::invalid_argument("rho_estimate needs N >= 2");
  if (N > a.horizon || N > b.horizon) throw std::invalid_argument("N exceeds the truncation horizon");
  const MetricContext<Point> ctx = cost.context();
  const std::size_t n = static_cast<std::size_t>(N);
  RhoEstimate out;
  out.values.resize(n);
  const bool constant = a.is_constant() && b.is_constant();
  auto fill = [&](std::size_t k) {
    const Point& x = a.realized[k];
    const Point& y = b.realized[k];
    out.values[k] = {static_cast<int>(k + 1), solver(x, y), lower_bound_certificate(ctx, x, y), cost.delta(x, y)};
  };
  if (constant) {
    fill(0);
    for (std::size_t k = 1; k < n; ++k) {
      out.values[k] = out.values[0];
      out.values[k].index = static_cast<int>(k + 1);
    }
  } else {
    parallel_for(n, fill);
  }

  double floor = std::numeric_limits<double>::infinity();
  for (const RhoValue& v : out.values) floor = std::min(floor, v.lower);
  if (floor > 0.0) out.floor = floor;
  out.cap = out.values.back().upper;

  const std::size_t t = third(n);
  const std::span<const RhoValue> all(out.values);
  const bool all_zero = std::all_of(all.begin(), all.end(), [](const RhoValue& v) { return v.value == 0.0; });
  if (all_zero || mean_of(all.last(t)) < mean_of(all.first(t))) {
    out.trend = Trend::decreasing;
  } else if (out.floor) {
    out.trend = Trend::bounded_below;
  }
  return out;
}

void write_rho_csv(std::ostream& out, const RhoEstimate& estimate) {
  out << "i,value,lower,upper\n";
  for (const RhoValue& v : estimate.values) {
    out << v.index << ',' << format_real(v.value) << ',' << format_real(v.lower) << ',' << format_real(v.upper)
        << '\n';
  }
}

Classification classify_sequence(const CauchyTruncation& seq, const EuclideanLinkCost& cost,
                                 const PairSolver& solver) {
  if (seq.horizon < 3) throw std::invalid_argument("classify_sequence needs a horizon of at least 3");
  const MetricContext<Point> ctx = cost.context();
  const std::size_t n = seq.realized.size();
  const std::size_t t = std::max<std::size_t>(2, n / 3);
  const std::span<const Point> tail = std::span<const Point>(seq.realized).last(t);
  const Point& last = tail.back();

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < t; ++i) {
    for (std::size_t j = i + 1; j < t; ++j) pairs.emplace_back(i, j);
  }
  std::vector<double> approx(pairs.size()), width(pairs.size()), euclid(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t k) {
    const Point& x = tail[pairs[k].first];
    const Point& y = tail[pairs[k].second];
    approx[k] = solver(x, y);
    width[k] = cost.delta(x, y) - lower_bound_certificate(ctx, x, y);
    euclid[k] = euclidean_distance(x, y);
  });

  Classification out;
  out.tail_diameter = pairs.empty() ? 0.0 : *std::max_element(approx.begin(), approx.end());
  out.bracket_width = pairs.empty() ? 0.0 : *std::max_element(width.begin(), width.end());
  const double euclid_diameter = pairs.empty() ? 0.0 : *std::max_element(euclid.begin(), euclid.end());
  const double isometry = local_isometry_radius(ctx, last);

  const bool localized = euclid_diameter <= isometry;
  if (!localized && out.tail_diameter > 10.0 * out.bracket_width + 1e-12) {
    out.detail = "not numerically Cauchy over the tail";
    return out;
  }
  if (localized) {
    out.kind = SequenceKind::finite;
    out.rep = Interior{last};
    out.detail = "tail inside the local isometry ball of the last term";
    return out;
  }

  bool increasing = true;
  for (std::size_t i = 1; i < t; ++i) increasing = increasing && norm(tail[i]) > norm(tail[i - 1]);
  if (!increasing || norm(tail.front()) < 1.0) {
    out.detail = "tail neither localized nor escaping";
    return out;
  }
  const IdentificationWeight& weight = cost.weight();
  const Point key = weight.key_of(last);
  for (const Point& p : tail) {
    if (euclidean_distance(weight.key_of(p), key) > 1e-6) {
      out.detail = "directions do not converge over the tail";
      return out;
    }
  }
  out.kind = SequenceKind::at_infinity;
  out.rep = AtInfinity{key};
  out.detail = "norms increase and keys agree over the tail";
  return out;
}

std::string NonequivalenceReport::verdict() const {
  return ok() ? "non-equivalent" : "certificate-violation";
}

double nonequivalence_floor(double delta) {
  return std::sin(0.5 * delta) / (2.0 * std::numbers::sqrt2);
}

double nonequivalence_cap(double delta, int i) {
  const double a = harmonic_radius(i);
  return 2.0 / (1.0 + a) + delta / (2.0 * a);
}

NonequivalenceReport nonequivalence_experiment(double delta, int N, const SamplerConfig& config) {
  const ConeParam cone(delta);
  if (N < 5) throw std::invalid_argument("nonequivalence_experiment needs N >= 5");
  config.validate();
  const std::size_t s = static_cast<std::size_t>(config.dimension);
  const Point origin(s, 0.0);
  const SampledDphi phi_solver(EuclideanLinkCost(std::make_shared<StdWeight>(), origin), config);
  const SampledDphi psi_solver(EuclideanLinkCost(std::make_shared<RayWeight>(cone), origin), config);

  Point b1(s, 0.0);
  b1[0] = std::cos(0.5 * delta);
  b1[1] = std::sin(0.5 * delta);

  NonequivalenceReport report;
  report.delta = delta;
  report.horizon = N;
  report.floor = nonequivalence_floor(delta);
  report.rows.resize(static_cast<std::size_t>(N));
  parallel_for(report.rows.size(), [&](std::size_t k) {
    const int i = static_cast<int>(k + 1);
    const double a = harmonic_radius(i);
    Point ai(s, 0.0);
    ai[0] = a;
    const Point bi = h_pq_ray(b1, 1, i, cone);
    NonequivalenceRow& row = report.rows[k];
    row.i = i;
    row.a_i = a;
    row.psi_measured = psi_solver.approx(ai, bi).upper_bound;
    row.psi_floor = report.floor;
    row.phi_measured = phi_solver.approx(ai, bi).upper_bound;
    row.phi_cap = nonequivalence_cap(delta, i);
  });

  report.floor_holds = true;
  report.caps_hold = true;
  report.caps_decreasing = true;
  report.min_psi = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < report.rows.size(); ++k) {
    const NonequivalenceRow& row = report.rows[k];
    report.min_psi = std::min(report.min_psi, row.psi_measured);
    report.floor_holds = report.floor_holds && row.psi_measured >= row.psi_floor;
    report.caps_hold = report.caps_hold && row.phi_measured <= row.phi_cap;
    if (k > 0) report.caps_decreasing = report.caps_decreasing && row.phi_cap < report.rows[k - 1].phi_cap;
  }
  report.max_phi_cap_at_N = report.rows.back().phi_cap;
  return report;
}

void write_nonequivalence_csv(std::ostream& out, const NonequivalenceReport& report) {
  out << "i,a_i,psi_measured,psi_floor,phi_measured,phi_cap\n";
  for (const NonequivalenceRow& row : report.rows) {
    out << row.i << ',' << format_real(row.a_i) << ',' << format_real(row.psi_measured) << ','
        << format_real(row.psi_floor) << ',' << format_real(row.phi_measured) << ',' << format_real(row.phi_cap)
        << '\n';
  }
}

}  // namespace chainmetric

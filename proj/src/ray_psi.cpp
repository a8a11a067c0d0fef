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

#include "chainmetric/ray_psi.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace chainmetric {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxBisection = 200;
constexpr double kMaxResidual = 1e-10;

double off_axis_norm(std::span<const double> x) { return norm(x.subspan(1)); }

// Unit vector orthogonal to a_1 along the off-axis part of x; e_2 on the axis.
Point off_axis_unit(std::span<const double> x) {
  const double off = off_axis_norm(x);
  if (off < 1e-12) return unit_axis(x.size(), 1);
  Point w(x.size(), 0.0);
  for (std::size_t i = 1; i < x.size(); ++i) w[i] = x[i] / off;
  return w;
}

// Direction angle (from a_1, towards the plane axis) of the ray whose base sits
// at polar angle beta.
double direction_angle(double beta, const ConeParam& cone) {
  if (beta <= cone.delta()) return 0.0;
  if (beta >= kPi - cone.delta()) return kPi;
  return bend_angle_from_polar(beta, cone);
}

Ray make_ray(double beta, const Point& plane_axis, const ConeParam& cone) {
  const double theta = direction_angle(beta, cone);
  Ray ray;
  ray.plane_axis = plane_axis;
  ray.base = scaled(plane_axis, std::sin(beta));
  ray.base[0] = std::cos(beta);
  ray.direction = scaled(plane_axis, std::sin(theta));
  ray.direction[0] = std::cos(theta);
  if (beta <= cone.delta()) ray.direction = unit_axis(plane_axis.size(), 0);
  if (beta >= kPi - cone.delta()) ray.direction = scaled(unit_axis(plane_axis.size(), 0), -1.0);
  return ray;
}

double exit_parameter(double base_sq, double c, double radius) {
  const double gap = radius * radius - base_sq;
  if (gap <= 0.0) return 0.0;
  return gap / (c + std::sqrt(c * c + gap));
}

// Polar angle of the point where the ray based at angle beta leaves the circle
// of the given radius, working in the (a_1, plane axis) half-plane.
double exit_polar(double beta, double radius, const ConeParam& cone) {
  const double theta = direction_angle(beta, cone);
  const double bx = std::cos(beta), by = std::sin(beta);
  const double dx = std::cos(theta), dy = std::sin(theta);
  const double t = exit_parameter(1.0, bx * dx + by * dy, radius);
  return std::atan2(by + t * dy, bx + t * dx);
}

double distance_to_ray(const Ray& ray, const Point& y) {
  Point rel(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) rel[i] = y[i] - ray.base[i];
  const double t = std::max(0.0, dot(rel, ray.direction));
  return euclidean_distance(y, ray.at(t));
}

}  // namespace

ConeParam::ConeParam(double delta) : delta_(delta) {
  if (!(delta > 0.0 && delta < kPi / 4.0)) throw std::invalid_argument("cone angle must satisfy 0 < delta < pi/4");
}

double polar_angle(std::span<const double> x) { return std::atan2(off_axis_norm(x), x[0]); }

double bend_angle_from_polar(double angle, const ConeParam& cone) {
  const double d = cone.delta();
  if (angle < d || angle > kPi - d) throw std::invalid_argument("direction lies inside a cone");
  return kPi / (kPi - 2.0 * d) * (angle - d);
}

double bend_angle(const Point& unit, const ConeParam& cone) {
  require_finite(unit);
  if (std::abs(norm(unit) - 1.0) > 1e-9) throw std::invalid_argument("bend angle needs a unit vector");
  return bend_angle_from_polar(polar_angle(unit), cone);
}

Ray ray_of(const Point& x, const ConeParam& cone) {
  require_finite(x);
  if (x.size() < 2) throw std::invalid_argument("rays need dimension >= 2");
  const double r = norm(x);
  if (std::abs(r - 1.0) > 1e-9) throw std::invalid_argument("ray base must lie on S_1");
  const Point u = scaled(x, 1.0 / r);
  Ray ray = make_ray(polar_angle(u), off_axis_unit(u), cone);
  ray.base = u;
  return ray;
}

RayThrough ray_through(const Point& y, const ConeParam& cone) {
  require_finite(y);
  if (y.size() < 2) throw std::invalid_argument("rays need dimension >= 2");
  const double r = norm(y);
  if (r < 1.0 - 1e-12) throw std::invalid_argument("ray_through needs |y| >= 1");

  const Point axis = off_axis_unit(y);
  RayThrough out;
  if (off_axis_norm(y) < 1e-12) {
    out.ray = make_ray(y[0] > 0.0 ? 0.0 : kPi, axis, cone);
  } else {
    const double target = polar_angle(y);
    double lo = 0.0, hi = kPi;
    for (int iter = 0; iter < kMaxBisection; ++iter) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (exit_polar(mid, r, cone) < target) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    const double beta =
        std::abs(exit_polar(lo, r, cone) - target) <= std::abs(exit_polar(hi, r, cone) - target) ? lo : hi;
    out.ray = make_ray(beta, axis, cone);
  }
  out.residual = distance_to_ray(out.ray, y);
  if (!(out.residual < kMaxResidual)) {
    throw RayInversionError("ray inversion did not converge (residual " + format_real(out.residual) + ")",
                            out.residual);
  }
  return out;
}

double sphere_exit_parameter(const Ray& ray, double radius) {
  return exit_parameter(dot(ray.base, ray.base), dot(ray.base, ray.direction), radius);
}

Point h_pq_ray(const Point& x, int p, int q, const ConeParam& cone, double tau) {
  require_finite(x);
  const double ap = harmonic_radius(p);
  if (std::abs(norm(x) - ap) > tau * ap) throw std::invalid_argument("point is not on S_" + std::to_string(p));
  if (p == q) return x;
  const Ray ray = p == 1 ? ray_of(x, cone) : ray_through(x, cone).ray;
  if (q == 1) return ray.base;
  return ray.at(sphere_exit_parameter(ray, harmonic_radius(q)));
}

Point RayWeight::key_of(const Point& x) const { return ray_through(x, cone_).ray.base; }

Point RayWeight::lift(const Point& u, int q) const {
  const Ray ray = ray_of(u, cone_);
  if (q == 1) return ray.base;
  return ray.at(sphere_exit_parameter(ray, harmonic_radius(q)));
}

double RayWeight::same_sphere(const AnnotatedPoint& x, const AnnotatedPoint& y, int) const {
  return euclidean_distance(x.sphere->key, y.sphere->key);
}

double psi(const Point& x, const Point& y, const ConeParam& cone, double tau) { return RayWeight(cone, tau)(x, y); }

double ray_distance(const Ray& r1, const Ray& r2) {
  const std::size_t n = r1.base.size();
  Point w0(n);
  for (std::size_t i = 0; i < n; ++i) w0[i] = r1.base[i] - r2.base[i];
  const double a = dot(r1.direction, r1.direction);
  const double b = dot(r1.direction, r2.direction);
  const double c = dot(r2.direction, r2.direction);
  const double d = dot(r1.direction, w0);
  const double e = dot(r2.direction, w0);

  auto gap = [&](double s, double t) { return euclidean_distance(r1.at(s), r2.at(t)); };
  double best = gap(0.0, 0.0);
  best = std::min(best, gap(0.0, std::max(0.0, e / c)));
  best = std::min(best, gap(std::max(0.0, -d / a), 0.0));
  const double det = a * c - b * b;
  if (det > 1e-14 * a * c) {
    const double s = (b * e - c * d) / det;
    const double t = (a * e - b * d) / det;
    if (s >= 0.0 && t >= 0.0) best = std::min(best, gap(s, t));
  }
  return best;
}

double spherical_distance(const Spherical& p1, const Spherical& p2) {
  for (const Spherical* p : {&p1, &p2}) {
    if (!(p->rho >= 0.0) || !std::isfinite(p->rho)) throw std::invalid_argument("rho must be nonnegative");
    if (!(p->polar >= 0.0 && p->polar <= kPi)) throw std::invalid_argument("polar angle must lie in [0, pi]");
    if (!std::isfinite(p->azimuth)) throw std::invalid_argument("azimuth must be finite");
  }
  const double inner = std::sin(p1.polar) * std::sin(p2.polar) * std::cos(p1.azimuth - p2.azimuth) +
                       std::cos(p1.polar) * std::cos(p2.polar);
  const double sq = p1.rho * p1.rho + p2.rho * p2.rho - 2.0 * p1.rho * p2.rho * inner;
  return std::sqrt(std::max(0.0, sq));
}

Point to_cartesian(const Spherical& p) {
  return {p.rho * std::sin(p.polar) * std::cos(p.azimuth), p.rho * std::sin(p.polar) * std::sin(p.azimuth),
          p.rho * std::cos(p.polar)};
}

BoundaryImage boundary_map_h_ray(const Point& x, const ConeParam& cone) {
  require_finite(x);
  const double r = norm(x);
  if (r > 1.0 + 1e-12) throw std::invalid_argument("boundary map h is defined on the closed unit ball");
  if (r >= 1.0 - 1e-12) {
    const Ray ray = ray_of(x, cone);
    auto representative = [ray](int i) {
      return i == 1 ? ray.base : ray.at(sphere_exit_parameter(ray, harmonic_radius(i)));
    };
    return {AtInfinity{ray.base}, representative};
  }
  Point y;
  if (r < 0.5) {
    y = scaled(x, 1.0 / (1.0 - r));
  } else {
    const Ray ray = ray_of(scaled(x, 1.0 / r), cone);
    y = ray.at((r - 0.5) / (1.0 - r));
  }
  return {Interior{y}, [y](int) { return y; }};
}

void write_rays(std::ostream& out, std::span<const Ray> rays) {
  for (const Ray& ray : rays) out << format_point(ray.base, ' ') << ' ' << format_point(ray.direction, ' ') << '\n';
}

}  // namespace chainmetric

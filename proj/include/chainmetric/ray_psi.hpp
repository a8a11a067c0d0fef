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

#include <ostream>
#include <span>
#include <stdexcept>
#include <string>

#include "chainmetric/harmonic.hpp"
#include "chainmetric/identification.hpp"
#include "chainmetric/point.hpp"
#include "chainmetric/std_phi.hpp"

namespace chainmetric {

// Half-angle of the cones A+ (around a_1 = e_1) and A- (around -a_1).
class ConeParam {
 public:
  static constexpr double kDefaultDelta = 0.6;

  explicit ConeParam(double delta = kDefaultDelta);
  double delta() const { return delta_; }

 private:
  double delta_;
};

// A ray of the field L: it starts at base (on S_1) and runs along direction.
// plane_axis is the unit vector orthogonal to a_1 that spans, with a_1, the
// plane containing the ray.
struct Ray {
  Point base;
  Point direction;
  Point plane_axis;

  Point at(double t) const { return axpy(base, t, direction); }
};

// Thrown when the unique ray through a point cannot be recovered accurately.
class RayInversionError : public std::runtime_error {
 public:
  RayInversionError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

// Angle between x and a_1, in [0, pi].
double polar_angle(std::span<const double> x);

// theta = pi/(pi - 2 delta) * (angle - delta) for delta <= angle <= pi - delta.
double bend_angle_from_polar(double angle, const ConeParam& cone);
double bend_angle(const Point& unit, const ConeParam& cone);

// L_x for x on S_1.
Ray ray_of(const Point& x, const ConeParam& cone);

struct RayThrough {
  Ray ray;
  double residual = 0.0;  // distance from y to the returned ray
};

// The ray of L through y, |y| >= 1. The base polar angle is found by bisection
// within the half-plane spanned by a_1 and the off-axis part of y.
RayThrough ray_through(const Point& y, const ConeParam& cone);

// Parameter t >= 0 at which the ray meets the sphere of the given radius (>= 1).
double sphere_exit_parameter(const Ray& ray, double radius);

// Identification of S_p with S_q along the rays of L.
Point h_pq_ray(const Point& x, int p, int q, const ConeParam& cone, double tau = kDefaultSphereTolerance);

// The weight psi: 0 on pairs identified along a ray, d_E(h_{m,1}(x), h_{m,1}(y))
// on pairs of one sphere S_m, d_E(x,y) otherwise.
class RayWeight final : public IdentificationWeight {
 public:
  explicit RayWeight(ConeParam cone = ConeParam{}, double tau = kDefaultSphereTolerance,
                     const HarmonicTable& table = harmonic_table())
      : IdentificationWeight(tau, table), cone_(cone) {}

  const ConeParam& cone() const { return cone_; }

  Point key_of(const Point& x) const override;
  Point lift(const Point& u, int q) const override;
  std::string name() const override { return "ray_psi"; }

 protected:
  double same_sphere(const AnnotatedPoint& x, const AnnotatedPoint& y, int m) const override;

 private:
  ConeParam cone_;
};

double psi(const Point& x, const Point& y, const ConeParam& cone, double tau = kDefaultSphereTolerance);

// Infimum of the Euclidean distance between points of the two rays.
double ray_distance(const Ray& r1, const Ray& r2);

// Distance between (rho, polar, azimuth) triples.
struct Spherical {
  double rho = 0.0;
  double polar = 0.0;
  double azimuth = 0.0;
};
double spherical_distance(const Spherical& p1, const Spherical& p2);
Point to_cartesian(const Spherical& p);

// h : closed unit ball -> completion for the ray compactification:
// x/(1-|x|) for |x| < 1/2, the point of L_{x/|x|} at distance
// (|x| - 1/2)/(1 - |x|) from its base for 1/2 <= |x| < 1, and the boundary
// point labelled x with representative i -> h_{1,i}(x) on the unit sphere.
BoundaryImage boundary_map_h_ray(const Point& x, const ConeParam& cone);

// One ray per line: "base_1 .. base_s dir_1 .. dir_s", 17 significant digits.
void write_rays(std::ostream& out, std::span<const Ray> rays);

}  // namespace chainmetric

#pragma once

#include <array>

namespace tubearc {

/// A finite tube of radius `radius` whose axis is the planar curve
/// f(u) = -cosh(kappa0 (u - u0)) / kappa0, parameterized by arclength s in
/// [0, length]. kappa0 == 0 is the straight tube.
///
/// Units: nm, 1/nm, meV. `hbar2_over_2me` is in eV nm^2.
struct TubeGeometry {
  double radius = 0.85;
  double length = 100.0;
  double kappa0 = 0.0;
  double s0 = 50.0;
  double mass_ratio = 1.0;
  double hbar2_over_2me = 0.0380998;

  /// Throws Error(invalid_argument) unless a > 0, L > 0, kappa0 >= 0,
  /// 0 <= s0 <= L, a kappa0 < 1 and the mass/constant are positive.
  void validate() const;

  bool straight() const noexcept { return kappa0 == 0.0; }

  /// hbar^2 / (2 m*) in meV nm^2.
  double kinetic_scale() const noexcept { return 1000.0 * hbar2_over_2me / mass_ratio; }
};

struct SurfacePoint {
  double theta = 0.0;
  double s = 0.0;
};

using Vec3 = std::array<double, 3>;

// Axis description. Everything except embed() works in arclength.

/// u0 fixed by s(u = 0) = 0.
double turning_point_u(const TubeGeometry& geom);
double shape_profile(const TubeGeometry& geom, double u);
double shape_slope(const TubeGeometry& geom, double u);
double arclength_of_u(const TubeGeometry& geom, double u);
double u_of_arclength(const TubeGeometry& geom, double s);

/// kappa(s) = -kappa0 / (1 + (kappa0 (s - s0))^2), zero for a straight tube.
double axis_curvature(const TubeGeometry& geom, double s);
double axis_curvature_derivative(const TubeGeometry& geom, double s);

/// lambda = 1 - a kappa(s) cos(theta); the area element is a lambda dtheta ds.
double lambda_factor(const TubeGeometry& geom, SurfacePoint p);

struct PrincipalCurvatures {
  double k1 = 0.0;
  double k2 = 0.0;
};

struct MeanGaussCurvature {
  double mean = 0.0;
  double gauss = 0.0;
};

PrincipalCurvatures principal_curvatures(const TubeGeometry& geom, SurfacePoint p);
MeanGaussCurvature mean_gauss_curvature(const TubeGeometry& geom, SurfacePoint p);

/// -hbar^2 / (8 m* a^2 lambda^2), in meV.
double distortion_potential(const TubeGeometry& geom, SurfacePoint p);

/// Same potential through -(hbar^2 / 2m*)(H^2 - K). Only used for cross-checks.
double distortion_potential_from_curvatures(const TubeGeometry& geom, SurfacePoint p);

Vec3 axis_point(const TubeGeometry& geom, double s);
Vec3 embed(const TubeGeometry& geom, SurfacePoint p);
/// Outward unit normal (radial direction away from the axis).
Vec3 surface_normal(const TubeGeometry& geom, SurfacePoint p);

}  // namespace tubearc

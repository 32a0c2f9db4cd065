#include "tubearc/geometry.hpp"

#include <cmath>
#include <string>

#include "tubearc/error.hpp"

namespace tubearc {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::invalid_config: return "invalid_config";
    case ErrorCode::index_out_of_range: return "index_out_of_range";
    case ErrorCode::ill_conditioned_overlap: return "ill_conditioned_overlap";
    case ErrorCode::hermiticity_failure: return "hermiticity_failure";
    case ErrorCode::io_failure: return "io_failure";
  }
  return "unknown";
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::invalid_argument, "tube geometry: " + what);
}

void require_curved(const TubeGeometry& geom, const char* op) {
  if (geom.kappa0 <= 0.0) {
    throw Error(ErrorCode::invalid_argument,
                std::string(op) + " needs kappa0 > 0; the straight tube has no shape function");
  }
}

}  // namespace

void TubeGeometry::validate() const {
  require(std::isfinite(radius) && radius > 0.0, "radius must be positive");
  require(std::isfinite(length) && length > 0.0, "length must be positive");
  require(std::isfinite(kappa0) && kappa0 >= 0.0, "kappa0 must be non-negative");
  require(radius * kappa0 < 1.0, "radius * kappa0 must be below 1");
  if (!straight()) {
    require(std::isfinite(s0) && s0 >= 0.0 && s0 <= length, "s0 must lie in [0, length]");
  }
  require(std::isfinite(mass_ratio) && mass_ratio > 0.0, "mass_ratio must be positive");
  require(std::isfinite(hbar2_over_2me) && hbar2_over_2me > 0.0,
          "hbar2_over_2me must be positive");
}

double turning_point_u(const TubeGeometry& geom) {
  require_curved(geom, "turning_point_u");
  return std::asinh(geom.kappa0 * geom.s0) / geom.kappa0;
}

double shape_profile(const TubeGeometry& geom, double u) {
  require_curved(geom, "shape_profile");
  const double u0 = turning_point_u(geom);
  return -std::cosh(geom.kappa0 * (u - u0)) / geom.kappa0;
}

double shape_slope(const TubeGeometry& geom, double u) {
  require_curved(geom, "shape_slope");
  return -std::sinh(geom.kappa0 * (u - turning_point_u(geom)));
}

double arclength_of_u(const TubeGeometry& geom, double u) {
  require_curved(geom, "arclength_of_u");
  const double u0 = turning_point_u(geom);
  return geom.s0 + std::sinh(geom.kappa0 * (u - u0)) / geom.kappa0;
}

double u_of_arclength(const TubeGeometry& geom, double s) {
  require_curved(geom, "u_of_arclength");
  const double u0 = turning_point_u(geom);
  return u0 + std::asinh(geom.kappa0 * (s - geom.s0)) / geom.kappa0;
}

double axis_curvature(const TubeGeometry& geom, double s) {
  if (geom.straight()) return 0.0;
  const double x = geom.kappa0 * (s - geom.s0);
  return -geom.kappa0 / (1.0 + x * x);
}

double axis_curvature_derivative(const TubeGeometry& geom, double s) {
  if (geom.straight()) return 0.0;
  const double k = geom.kappa0;
  const double d = s - geom.s0;
  const double q = 1.0 + k * k * d * d;
  return 2.0 * k * k * k * d / (q * q);
}

double lambda_factor(const TubeGeometry& geom, SurfacePoint p) {
  return 1.0 - geom.radius * axis_curvature(geom, p.s) * std::cos(p.theta);
}

PrincipalCurvatures principal_curvatures(const TubeGeometry& geom, SurfacePoint p) {
  const double kc = axis_curvature(geom, p.s) * std::cos(p.theta);
  return {1.0 / geom.radius, -kc / (1.0 - geom.radius * kc)};
}

MeanGaussCurvature mean_gauss_curvature(const TubeGeometry& geom, SurfacePoint p) {
  const auto [k1, k2] = principal_curvatures(geom, p);
  return {0.5 * (k1 + k2), k1 * k2};
}

double distortion_potential(const TubeGeometry& geom, SurfacePoint p) {
  const double lam = lambda_factor(geom, p);
  const double a = geom.radius;
  return -geom.kinetic_scale() / (4.0 * a * a * lam * lam);
}

double distortion_potential_from_curvatures(const TubeGeometry& geom, SurfacePoint p) {
  const auto [mean, gauss] = mean_gauss_curvature(geom, p);
  return -geom.kinetic_scale() * (mean * mean - gauss);
}

Vec3 axis_point(const TubeGeometry& geom, double s) {
  if (geom.straight()) return {s, 0.0, 0.0};
  const double u = u_of_arclength(geom, s);
  return {u, shape_profile(geom, u), 0.0};
}

Vec3 surface_normal(const TubeGeometry& geom, SurfacePoint p) {
  const double c = std::cos(p.theta);
  const double sn = std::sin(p.theta);
  if (geom.straight()) return {0.0, c, sn};
  const double fu = shape_slope(geom, u_of_arclength(geom, p.s));
  const double alpha = 1.0 / std::sqrt(1.0 + fu * fu);
  const double beta = fu * alpha;
  return {-beta * c, alpha * c, sn};
}

Vec3 embed(const TubeGeometry& geom, SurfacePoint p) {
  const Vec3 axis = axis_point(geom, p.s);
  const Vec3 n = surface_normal(geom, p);
  const double a = geom.radius;
  return {axis[0] + a * n[0], axis[1] + a * n[1], axis[2] + a * n[2]};
}

}  // namespace tubearc

#include "tubearc/basis.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "tubearc/error.hpp"

namespace tubearc {

void BasisSpec::validate() const {
  if (max_m < 0) throw Error(ErrorCode::invalid_argument, "basis: max_m must be >= 0");
  if (max_n < 1) throw Error(ErrorCode::invalid_argument, "basis: max_n must be >= 1");
  if (!(length > 0.0)) throw Error(ErrorCode::invalid_argument, "basis: length must be positive");
}

BasisIndex index_map(const BasisSpec& spec, int j) {
  if (j < 1 || j > spec.size()) {
    throw Error(ErrorCode::index_out_of_range,
                "basis index " + std::to_string(j) + " outside [1, " +
                    std::to_string(spec.size()) + "]");
  }
  const int zero_based = j - 1;
  const int width = spec.angular_count();
  return {j, zero_based % width - spec.max_m, zero_based / width + 1};
}

int flat_index(const BasisSpec& spec, int m, int n) {
  if (m < -spec.max_m || m > spec.max_m || n < 1 || n > spec.max_n) {
    throw Error(ErrorCode::index_out_of_range,
                "basis label (m=" + std::to_string(m) + ", n=" + std::to_string(n) +
                    ") outside the basis");
  }
  return (n - 1) * spec.angular_count() + (m + spec.max_m) + 1;
}

AngularValue angular_factor(BasisKind kind, int m, double theta) {
  const double md = static_cast<double>(m);
  if (kind == BasisKind::complex_exponential) {
    const cdouble e = std::polar(1.0, md * theta);
    return {e, cdouble(0.0, md) * e, -md * md * e};
  }
  if (m == 0) return {1.0, 0.0, 0.0};
  if (m > 0) {
    const double c = std::cos(md * theta);
    const double s = std::sin(md * theta);
    return {c, -md * s, -md * md * c};
  }
  const double mu = -md;
  const double c = std::cos(mu * theta);
  const double s = std::sin(mu * theta);
  return {s, mu * c, -mu * mu * s};
}

LongitudinalValue longitudinal_factor(int n, double length, double s) {
  const double k = n * std::numbers::pi / length;
  const double sv = std::sin(k * s);
  return {sv, k * std::cos(k * s), -k * k * sv};
}

cdouble eval_xi(const BasisSpec& spec, const BasisIndex& idx, SurfacePoint p) {
  return angular_factor(spec.kind, idx.m, p.theta).value *
         longitudinal_factor(idx.n, spec.length, p.s).value;
}

cdouble eval_H_xi(const TubeGeometry& geom, const BasisSpec& spec, const BasisIndex& idx,
                  SurfacePoint p) {
  const double a = geom.radius;
  const double kappa = axis_curvature(geom, p.s);
  const double dkappa = axis_curvature_derivative(geom, p.s);
  const double c = std::cos(p.theta);
  const double lam = 1.0 - a * kappa * c;
  const double dlog_theta = a * kappa * std::sin(p.theta) / lam;
  const double dlog_s = -a * dkappa * c / lam;

  const AngularValue ang = angular_factor(spec.kind, idx.m, p.theta);
  const LongitudinalValue lon = longitudinal_factor(idx.n, spec.length, p.s);

  const cdouble angular_part = (ang.d2 + dlog_theta * ang.d1) * lon.value / (a * a);
  const cdouble axial_part = ang.value * (lon.d2 - dlog_s * lon.d1) / (lam * lam);
  const cdouble xi = ang.value * lon.value;
  return -geom.kinetic_scale() * (angular_part + axial_part) + distortion_potential(geom, p) * xi;
}

}  // namespace tubearc

#pragma once

#include <complex>

#include "tubearc/geometry.hpp"

namespace tubearc {

using cdouble = std::complex<double>;

/// Angular factor of the primitive functions.
///  - complex_exponential: e^{i m theta}
///  - real_trig: cos(m theta) for m > 0, 1 for m = 0, sin(|m| theta) for m < 0
enum class BasisKind { complex_exponential, real_trig };

/// Primitive (non-orthogonal) functions xi_{mn}(theta, s) = Theta_m(theta) sin(n pi s / L)
/// with m in [-M, M], n in [1, N]. Flat index j is 1-based and m varies fastest.
struct BasisSpec {
  int max_m = 2;
  int max_n = 4;
  double length = 100.0;
  BasisKind kind = BasisKind::complex_exponential;

  void validate() const;
  int angular_count() const noexcept { return 2 * max_m + 1; }
  int size() const noexcept { return angular_count() * max_n; }
};

struct BasisIndex {
  int j = 1;
  int m = 0;
  int n = 1;
};

/// j (1-based) -> (m, n). Throws Error(index_out_of_range).
BasisIndex index_map(const BasisSpec& spec, int j);
/// (m, n) -> j (1-based). Throws Error(index_out_of_range).
int flat_index(const BasisSpec& spec, int m, int n);

/// Theta_m and its first two derivatives.
struct AngularValue {
  cdouble value;
  cdouble d1;
  cdouble d2;
};
AngularValue angular_factor(BasisKind kind, int m, double theta);

/// sin(n pi s / L) and its first two derivatives.
struct LongitudinalValue {
  double value;
  double d1;
  double d2;
};
LongitudinalValue longitudinal_factor(int n, double length, double s);

cdouble eval_xi(const BasisSpec& spec, const BasisIndex& idx, SurfacePoint p);

/// Surface Hamiltonian applied analytically to xi:
///   -(hbar^2/2m*) [ a^-2 (d_tt + d_t ln(lambda) d_t) + lambda^-2 (d_ss - d_s ln(lambda) d_s) ] xi
///   + V_D xi
/// in meV (times the units of xi).
cdouble eval_H_xi(const TubeGeometry& geom, const BasisSpec& spec, const BasisIndex& idx,
                  SurfacePoint p);

}  // namespace tubearc

#pragma once

#include <complex>
#include <vector>

#include "tubearc/basis.hpp"
#include "tubearc/geometry.hpp"

namespace tubearc {

/// Resolution knobs. The defaults resolve the sharpest tube in the reference
/// set (a kappa0 = 0.9775, lambda_min = 0.0225) to well below 1e-6 meV.
struct QuadratureConfig {
  int n_theta = 128;
  int panels = 256;
  int points_per_panel = 16;
};

/// Tensor-product rule on [0, 2pi) x [0, L]: periodic trapezoid in theta,
/// composite Gauss-Legendre on uniform panels in s.
struct QuadratureGrid {
  std::vector<double> theta;
  std::vector<double> theta_weight;
  std::vector<double> s;
  std::vector<double> s_weight;
  int panels = 0;
  int points_per_panel = 0;
  double length = 0.0;

  int n_theta() const noexcept { return static_cast<int>(theta.size()); }
  int n_s() const noexcept { return static_cast<int>(s.size()); }
};

/// Gauss-Legendre nodes (ascending) and weights on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussLegendreRule gauss_legendre(int n);

QuadratureGrid build_grid(int n_theta, int panels, int points_per_panel, double length);
inline QuadratureGrid build_grid(const QuadratureConfig& cfg, double length) {
  return build_grid(cfg.n_theta, cfg.panels, cfg.points_per_panel, length);
}

/// Throws unless the angular rule integrates every product of two basis
/// functions times the low harmonics of lambda exactly (n_theta >= 4M + 8).
void check_resolution(const QuadratureGrid& grid, const BasisSpec& spec);

/// sum_{s nodes} sum_{theta nodes} w_s w_theta a lambda conj(f) g, s-major.
template <class F, class G>
std::complex<double> surface_inner_product(const TubeGeometry& geom, const QuadratureGrid& grid,
                                           F&& f, G&& g) {
  std::complex<double> total = 0.0;
  for (int is = 0; is < grid.n_s(); ++is) {
    std::complex<double> ring = 0.0;
    for (int it = 0; it < grid.n_theta(); ++it) {
      const SurfacePoint p{grid.theta[it], grid.s[is]};
      const double measure = grid.theta_weight[it] * geom.radius * lambda_factor(geom, p);
      ring += measure * std::conj(std::complex<double>(f(p))) * std::complex<double>(g(p));
    }
    total += grid.s_weight[is] * ring;
  }
  return total;
}

}  // namespace tubearc

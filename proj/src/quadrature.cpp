#include "tubearc/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "tubearc/error.hpp"

namespace tubearc {

namespace {

struct LegendreEval {
  double value;
  double derivative;
};

// P_n(x) and P_n'(x) by the three-term recurrence; |x| < 1.
LegendreEval legendre(int n, double x) {
  double p0 = 1.0;
  double p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = pk;
  }
  return {p1, n * (x * p1 - p0) / (x * x - 1.0)};
}

}  // namespace

GaussLegendreRule gauss_legendre(int n) {
  if (n < 1) throw Error(ErrorCode::invalid_argument, "gauss_legendre: n must be >= 1");
  GaussLegendreRule rule{std::vector<double>(n), std::vector<double>(n)};
  if (n == 1) {
    rule.nodes[0] = 0.0;
    rule.weights[0] = 2.0;
    return rule;
  }
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Tricomi initial guess, then Newton.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const LegendreEval p = legendre(n, x);
      const double dx = p.value / p.derivative;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = legendre(n, x).derivative;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

QuadratureGrid build_grid(int n_theta, int panels, int points_per_panel, double length) {
  if (n_theta < 8 || n_theta % 2 != 0) {
    throw Error(ErrorCode::invalid_argument, "quadrature: n_theta must be even and >= 8");
  }
  if (panels < 1) throw Error(ErrorCode::invalid_argument, "quadrature: panels must be >= 1");
  if (points_per_panel < 2) {
    throw Error(ErrorCode::invalid_argument, "quadrature: points_per_panel must be >= 2");
  }
  if (!(length > 0.0)) throw Error(ErrorCode::invalid_argument, "quadrature: length must be > 0");

  QuadratureGrid grid;
  grid.panels = panels;
  grid.points_per_panel = points_per_panel;
  grid.length = length;

  const double dtheta = 2.0 * std::numbers::pi / n_theta;
  grid.theta.resize(n_theta);
  grid.theta_weight.assign(n_theta, dtheta);
  for (int i = 0; i < n_theta; ++i) grid.theta[i] = i * dtheta;

  const GaussLegendreRule gl = gauss_legendre(points_per_panel);
  const double h = length / panels;
  grid.s.reserve(static_cast<std::size_t>(panels) * points_per_panel);
  grid.s_weight.reserve(grid.s.capacity());
  for (int p = 0; p < panels; ++p) {
    const double mid = (p + 0.5) * h;
    for (int q = 0; q < points_per_panel; ++q) {
      grid.s.push_back(mid + 0.5 * h * gl.nodes[q]);
      grid.s_weight.push_back(0.5 * h * gl.weights[q]);
    }
  }
  return grid;
}

void check_resolution(const QuadratureGrid& grid, const BasisSpec& spec) {
  if (grid.n_theta() < 4 * spec.max_m + 8) {
    throw Error(ErrorCode::invalid_argument,
                "quadrature: n_theta=" + std::to_string(grid.n_theta()) +
                    " is too coarse for max_m=" + std::to_string(spec.max_m) +
                    " (need >= 4M+8)");
  }
}

}  // namespace tubearc

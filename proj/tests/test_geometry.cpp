#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "tubearc/error.hpp"
#include "tubearc/geometry.hpp"

using namespace tubearc;
using std::numbers::pi;

namespace {

TubeGeometry curved(double kappa0, double s0 = 52.5) {
  TubeGeometry g;
  g.radius = 0.85;
  g.length = 100.0;
  g.kappa0 = kappa0;
  g.s0 = s0;
  return g;
}

double norm3(const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

}  // namespace

TEST_CASE("validate rejects broken geometries") {
  TubeGeometry g = curved(1.0);
  CHECK_NOTHROW(g.validate());
  g.radius = 1.0;  // a kappa0 = 1
  CHECK_THROWS_AS(g.validate(), Error);
  g = curved(1.0, 120.0);
  CHECK_THROWS_AS(g.validate(), Error);
  g = curved(-0.1);
  CHECK_THROWS_AS(g.validate(), Error);
  g = curved(0.0, 500.0);  // s0 ignored for straight tubes
  CHECK_NOTHROW(g.validate());
}

TEST_CASE("shape profile") {
  const TubeGeometry g = curved(1.0);
  const double u0 = turning_point_u(g);
  CHECK(shape_profile(g, u0) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(shape_profile(g, u0 + 1.0) == doctest::Approx(-std::cosh(1.0)).epsilon(1e-14));
  CHECK(shape_profile(g, u0 + 1.0) == doctest::Approx(-1.5431).epsilon(1e-4));
  CHECK(shape_profile(curved(0.5), turning_point_u(curved(0.5))) == doctest::Approx(-2.0));
  CHECK_THROWS_AS(shape_profile(curved(0.0), 1.0), Error);
}

TEST_CASE("arclength map and its inverse") {
  for (double k : {0.75, 1.0}) {
    const TubeGeometry g = curved(k);
    const double u0 = turning_point_u(g);
    CHECK(arclength_of_u(g, u0) == doctest::Approx(g.s0).epsilon(1e-15));
    CHECK(arclength_of_u(g, 0.0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    for (double du = -60.0; du <= 60.0; du += 0.37) {
      const double u = u0 + du;
      const double back = u_of_arclength(g, arclength_of_u(g, u));
      CHECK(std::abs(back - u) <= 1e-12 * std::max(1.0, std::abs(u)));
    }
  }
  const TubeGeometry g = curved(1.0);
  const double u0 = turning_point_u(g);
  CHECK(arclength_of_u(g, u0 + 1.0) - g.s0 == doctest::Approx(1.17520).epsilon(1e-5));

  // ds/du = sqrt(1 + f_u^2) = cosh(kappa0 (u - u0)), checked by central differences.
  const double h = 1e-5;
  for (double du : {-3.0, -0.5, 0.0, 0.4, 2.5}) {
    const double u = u0 + du;
    const double fd = (arclength_of_u(g, u + h) - arclength_of_u(g, u - h)) / (2 * h);
    const double fu = shape_slope(g, u);
    CHECK(fd == doctest::Approx(std::sqrt(1 + fu * fu)).epsilon(1e-6));
    CHECK(fd == doctest::Approx(std::cosh(du)).epsilon(1e-6));
  }
}

TEST_CASE("axis curvature and derivative") {
  const TubeGeometry g = curved(1.0, 50.0);
  CHECK(axis_curvature(g, 50.0) == doctest::Approx(-1.0));
  CHECK(axis_curvature(g, 51.0) == doctest::Approx(-0.5));
  CHECK(axis_curvature(curved(0.0), 10.0) == 0.0);
  CHECK(axis_curvature_derivative(g, 50.0) == 0.0);
  CHECK(axis_curvature_derivative(g, 51.0) == doctest::Approx(0.5));
  CHECK(axis_curvature_derivative(curved(0.0), 13.0) == 0.0);

  // Closed form of kappa agrees with f_uu / (1 + f_u^2)^{3/2} evaluated through u(s).
  const double hu = 1e-4;
  for (double s : {45.0, 49.3, 50.0, 50.8, 58.0}) {
    const double u = u_of_arclength(g, s);
    const double fuu = (shape_profile(g, u + hu) - 2 * shape_profile(g, u) + shape_profile(g, u - hu)) / (hu * hu);
    const double fu = shape_slope(g, u);
    CHECK(axis_curvature(g, s) == doctest::Approx(fuu / std::pow(1 + fu * fu, 1.5)).epsilon(1e-6));
  }

  // Centered differences at step 1e-4 nm.
  const double h = 1e-4;
  for (double k : {0.75, 1.0, 1.15}) {
    const TubeGeometry gk = curved(k, 50.0);
    for (double s : {10.0, 48.0, 49.7, 50.3, 51.0, 53.0, 90.0}) {
      const double fd = (axis_curvature(gk, s + h) - axis_curvature(gk, s - h)) / (2 * h);
      CHECK(axis_curvature_derivative(gk, s) == doctest::Approx(fd).epsilon(1e-6));
    }
  }
}

TEST_CASE("lambda, curvatures and the distortion potential at the examples") {
  const TubeGeometry g = curved(1.0, 50.0);
  const SurfacePoint apex{pi, 50.0};
  CHECK(lambda_factor(g, apex) == doctest::Approx(0.15));
  CHECK(lambda_factor(curved(0.0), {1.0, 30.0}) == 1.0);
  CHECK(lambda_factor(g, {pi / 2, 61.0}) == doctest::Approx(1.0).epsilon(1e-15));

  const auto pc = principal_curvatures(g, apex);
  CHECK(pc.k1 == 1.0 / 0.85);
  CHECK(pc.k2 == doctest::Approx(-6.6667).epsilon(1e-4));
  CHECK(principal_curvatures(curved(0.0), apex).k2 == 0.0);

  const auto mg = mean_gauss_curvature(g, apex);
  CHECK(mg.gauss == doctest::Approx(-7.8431).epsilon(1e-4));
  const auto mg0 = mean_gauss_curvature(curved(0.0), apex);
  CHECK(mg0.gauss == 0.0);
  CHECK(mg0.mean == doctest::Approx(0.5882).epsilon(1e-4));

  CHECK(distortion_potential(curved(0.0), {0.3, 12.0}) == doctest::Approx(-13.1833).epsilon(1e-5));
  CHECK(distortion_potential(g, {pi / 2, 50.0}) == doctest::Approx(-13.1833).epsilon(1e-5));
  CHECK(distortion_potential(g, apex) == doctest::Approx(-585.9).epsilon(1e-4));
}

TEST_CASE("pointwise invariants on a dense grid") {
  for (double k : {0.0, 0.75, 1.0, 1.15}) {
    const TubeGeometry g = curved(k, 57.45);
    const double apex = distortion_potential(g, {pi, g.s0});
    for (int i = 0; i <= 64; ++i) {
      for (int j = 0; j <= 200; ++j) {
        const SurfacePoint p{2 * pi * i / 64, g.length * j / 200};
        const double lam = lambda_factor(g, p);
        CHECK(lam > 0.0);
        CHECK(lam >= 1.0 - g.radius * k - 1e-14);
        CHECK(lam <= 1.0 + g.radius * k + 1e-14);
        CHECK(std::abs(axis_curvature(g, p.s)) <= k);
        const double vd = distortion_potential(g, p);
        CHECK(vd < 0.0);
        if (k > 0.0) CHECK(vd >= apex - 1e-12);
        // theta -> -theta and (s - s0) -> -(s - s0)
        CHECK(lam == doctest::Approx(lambda_factor(g, {-p.theta, p.s})).epsilon(1e-14));
        CHECK(vd == doctest::Approx(distortion_potential(g, {-p.theta, p.s})).epsilon(1e-14));
        const double mirror = 2 * g.s0 - p.s;
        CHECK(axis_curvature(g, p.s) == doctest::Approx(axis_curvature(g, mirror)).epsilon(1e-14));
        CHECK(vd == doctest::Approx(distortion_potential(g, {p.theta, mirror})).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("distortion potential equals -(hbar^2/2m)(H^2 - K) and H^2 >= K") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> th(0.0, 2 * pi), s(0.0, 100.0), k(0.0, 1.17);
  for (int i = 0; i < 1000; ++i) {
    const TubeGeometry g = curved(k(rng), 50.0);
    const SurfacePoint p{th(rng), s(rng)};
    const double direct = distortion_potential(g, p);
    const double via_curvature = distortion_potential_from_curvatures(g, p);
    CHECK(std::abs(direct - via_curvature) <= 1e-10 * std::abs(direct));
    const auto [k1, k2] = principal_curvatures(g, p);
    const auto [mean, gauss] = mean_gauss_curvature(g, p);
    CHECK(mean * mean - gauss == doctest::Approx(0.25 * (k1 - k2) * (k1 - k2)).epsilon(1e-12));
    CHECK(mean * mean - gauss >= 0.0);
  }
}

TEST_CASE("curvature is most negative at the turning point") {
  const TubeGeometry g = curved(1.0, 57.45);
  for (double s = 0.0; s <= 100.0; s += 0.05) CHECK(axis_curvature(g, s) >= axis_curvature(g, g.s0));
  CHECK(axis_curvature(g, g.s0) == -1.0);
}

TEST_CASE("embedding is a tube of radius a with the radial normal") {
  const TubeGeometry straight = curved(0.0);
  const Vec3 x = embed(straight, {0.0, 37.0});
  CHECK(x[0] == 37.0);
  CHECK(x[1] == doctest::Approx(0.85));
  CHECK(x[2] == doctest::Approx(0.0));

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> th(0.0, 2 * pi), s(0.0, 100.0);
  const TubeGeometry g = curved(1.0, 52.5);
  for (int i = 0; i < 1000; ++i) {
    const SurfacePoint p{th(rng), s(rng)};
    const Vec3 e = embed(g, p);
    const Vec3 c = axis_point(g, p.s);
    const Vec3 d{e[0] - c[0], e[1] - c[1], e[2] - c[2]};
    CHECK(norm3(d) == doctest::Approx(g.radius).epsilon(1e-10));
  }

  // Finite-difference tangents; their cross product is parallel to the normal.
  const double h = 1e-5;
  for (int i = 0; i < 50; ++i) {
    const SurfacePoint p{th(rng), 5.0 + 0.9 * s(rng)};
    auto diff = [&](SurfacePoint a, SurfacePoint b, double step) {
      const Vec3 xa = embed(g, a);
      const Vec3 xb = embed(g, b);
      return Vec3{(xa[0] - xb[0]) / step, (xa[1] - xb[1]) / step, (xa[2] - xb[2]) / step};
    };
    const Vec3 t_theta = diff({p.theta + h, p.s}, {p.theta - h, p.s}, 2 * h);
    const Vec3 t_s = diff({p.theta, p.s + h}, {p.theta, p.s - h}, 2 * h);
    Vec3 n{t_theta[1] * t_s[2] - t_theta[2] * t_s[1], t_theta[2] * t_s[0] - t_theta[0] * t_s[2],
           t_theta[0] * t_s[1] - t_theta[1] * t_s[0]};
    const double len = norm3(n);
    // |x_theta x x_s| is the area element a lambda
    CHECK(len == doctest::Approx(g.radius * lambda_factor(g, p)).epsilon(1e-6));
    const Vec3 e3 = surface_normal(g, p);
    const double dot = (n[0] * e3[0] + n[1] * e3[1] + n[2] * e3[2]) / len;
    CHECK(std::abs(std::abs(dot) - 1.0) < 1e-8);
  }
}

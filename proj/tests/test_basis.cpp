#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "tubearc/basis.hpp"
#include "tubearc/error.hpp"
#include "tubearc/geometry.hpp"

using namespace tubearc;
using std::numbers::pi;

namespace {

TubeGeometry curved(double kappa0, double s0 = 52.5) {
  TubeGeometry g;
  g.kappa0 = kappa0;
  g.s0 = s0;
  return g;
}

// Fourth-order central differences.
template <class F>
cdouble d1(F&& f, double x, double h) {
  return (-f(x + 2 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2 * h)) / (12 * h);
}
template <class F>
cdouble d2(F&& f, double x, double h) {
  return (-f(x + 2 * h) + 16.0 * f(x + h) - 30.0 * f(x) + 16.0 * f(x - h) - f(x - 2 * h)) / (12 * h * h);
}

// Surface Laplacian and distortion potential applied by finite differences.
cdouble fd_hamiltonian(const TubeGeometry& g, const BasisSpec& spec, const BasisIndex& idx,
                       SurfacePoint p) {
  const double h = 1e-4;
  auto xi_t = [&](double t) { return eval_xi(spec, idx, {t, p.s}); };
  auto xi_s = [&](double s) { return eval_xi(spec, idx, {p.theta, s}); };
  auto ln_t = [&](double t) { return cdouble(std::log(lambda_factor(g, {t, p.s}))); };
  auto ln_s = [&](double s) { return cdouble(std::log(lambda_factor(g, {p.theta, s}))); };
  const double a = g.radius;
  const double lam = lambda_factor(g, p);
  const cdouble angular = (d2(xi_t, p.theta, h) + d1(ln_t, p.theta, h) * d1(xi_t, p.theta, h)) / (a * a);
  const cdouble longitudinal = (d2(xi_s, p.s, h) - d1(ln_s, p.s, h) * d1(xi_s, p.s, h)) / (lam * lam);
  return -g.kinetic_scale() * (angular + longitudinal) + distortion_potential(g, p) * eval_xi(spec, idx, p);
}

}  // namespace

TEST_CASE("index map ordering") {
  const BasisSpec spec;
  CHECK(spec.size() == 20);
  auto check = [&](int j, int m, int n) {
    const BasisIndex idx = index_map(spec, j);
    CHECK(idx.j == j);
    CHECK(idx.m == m);
    CHECK(idx.n == n);
  };
  check(1, -2, 1);
  check(6, -2, 2);
  check(20, 2, 4);
  check(3, 0, 1);
  for (int j = 1; j <= spec.size(); ++j) {
    const BasisIndex idx = index_map(spec, j);
    CHECK(flat_index(spec, idx.m, idx.n) == j);
  }
  CHECK_THROWS_AS(index_map(spec, 0), Error);
  CHECK_THROWS_AS(index_map(spec, 21), Error);
  CHECK_THROWS_AS(flat_index(spec, 3, 1), Error);
  CHECK_THROWS_AS(flat_index(spec, 0, 5), Error);
  try {
    index_map(spec, 21);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::index_out_of_range);
  }
}

TEST_CASE("basis spec validation") {
  BasisSpec spec;
  spec.max_m = -1;
  CHECK_THROWS_AS(spec.validate(), Error);
  spec = BasisSpec{};
  spec.max_n = 0;
  CHECK_THROWS_AS(spec.validate(), Error);
  spec = BasisSpec{};
  spec.length = 0.0;
  CHECK_THROWS_AS(spec.validate(), Error);
}

TEST_CASE("primitive function values") {
  const BasisSpec spec;
  const cdouble v = eval_xi(spec, {3, 0, 1}, {0.7, 50.0});
  CHECK(v.real() == doctest::Approx(1.0));
  CHECK(v.imag() == 0.0);
  const cdouble w = eval_xi(spec, {4, 1, 1}, {pi / 2, 50.0});
  CHECK(std::abs(w - cdouble(0.0, 1.0)) < 1e-15);
  for (int j = 1; j <= spec.size(); ++j) {
    const BasisIndex idx = index_map(spec, j);
    CHECK(std::abs(eval_xi(spec, idx, {1.3, 0.0})) == 0.0);
    CHECK(std::abs(eval_xi(spec, idx, {1.3, spec.length})) < 1e-14);
    for (double s = 0.0; s <= 100.0; s += 1.7) CHECK(std::abs(eval_xi(spec, idx, {2.1 * s, s})) <= 1.0 + 1e-15);
  }
}

TEST_CASE("factor derivatives match finite differences") {
  const double h = 1e-4;
  for (BasisKind kind : {BasisKind::complex_exponential, BasisKind::real_trig}) {
    for (int m = -3; m <= 3; ++m) {
      for (double t : {0.1, 1.0, 2.5, 4.0}) {
        auto f = [&](double x) { return angular_factor(kind, m, x).value; };
        const AngularValue av = angular_factor(kind, m, t);
        CHECK(std::abs(av.d1 - d1(f, t, h)) < 1e-9);
        CHECK(std::abs(av.d2 - d2(f, t, h)) < 1e-6);
      }
    }
  }
  for (int n = 1; n <= 4; ++n) {
    for (double s : {3.0, 40.0, 77.0}) {
      auto f = [&](double x) { return cdouble(longitudinal_factor(n, 100.0, x).value); };
      const LongitudinalValue lv = longitudinal_factor(n, 100.0, s);
      CHECK(std::abs(lv.d1 - d1(f, s, h)) < 1e-10);
      CHECK(std::abs(lv.d2 - d2(f, s, h)) < 1e-6);
    }
  }
}

TEST_CASE("real trig factors") {
  CHECK(angular_factor(BasisKind::real_trig, 2, 0.3).value == cdouble(std::cos(0.6)));
  CHECK(angular_factor(BasisKind::real_trig, -2, 0.3).value == cdouble(std::sin(0.6)));
  CHECK(angular_factor(BasisKind::real_trig, 0, 0.3).value == cdouble(1.0));
}

TEST_CASE("straight tube eigenrelation holds pointwise") {
  const TubeGeometry g = curved(0.0);
  const BasisSpec spec;
  const double c = g.kinetic_scale();
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> th(0.0, 2 * pi), s(0.5, 99.5);
  for (int j = 1; j <= spec.size(); ++j) {
    const BasisIndex idx = index_map(spec, j);
    const double eps = c * (idx.m * idx.m / (g.radius * g.radius) + idx.n * idx.n * pi * pi / 1e4) -
                       c / (4 * g.radius * g.radius);
    for (int k = 0; k < 50; ++k) {
      const SurfacePoint p{th(rng), s(rng)};
      const cdouble hx = eval_H_xi(g, spec, idx, p);
      const cdouble expected = eps * eval_xi(spec, idx, p);
      CHECK(std::abs(hx - expected) <= 1e-12 * std::abs(eps));
    }
  }
}

TEST_CASE("analytic H xi agrees with a finite-difference Laplacian") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> th(0.0, 2 * pi), s(2.0, 98.0);
  for (BasisKind kind : {BasisKind::complex_exponential, BasisKind::real_trig}) {
    const TubeGeometry g = curved(1.0, 52.5);
    BasisSpec spec;
    spec.kind = kind;
    std::uniform_int_distribution<int> pick(1, spec.size());
    double worst = 0.0;
    for (int k = 0; k < 200; ++k) {
      const BasisIndex idx = index_map(spec, pick(rng));
      const SurfacePoint p{th(rng), s(rng)};
      const cdouble exact = eval_H_xi(g, spec, idx, p);
      const cdouble fd = fd_hamiltonian(g, spec, idx, p);
      // Relative to the size of the individual operator terms at this point.
      const double scale = g.kinetic_scale() / (g.radius * g.radius) * std::max(1.0, std::abs(eval_xi(spec, idx, p)));
      worst = std::max(worst, std::abs(exact - fd) / std::max(std::abs(exact), scale * 1e-2));
    }
    CHECK(worst < 1e-5);
  }
}

TEST_CASE("reflection relation and periodicity of H xi") {
  const TubeGeometry g = curved(1.15, 50.98);
  const BasisSpec spec;
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> th(0.0, 2 * pi), s(0.5, 99.5);
  for (int k = 0; k < 300; ++k) {
    const SurfacePoint p{th(rng), s(rng)};
    const int m = k % 5 - 2;
    const int n = k % 4 + 1;
    const cdouble plus = eval_H_xi(g, spec, {flat_index(spec, m, n), m, n}, p);
    const cdouble minus = eval_H_xi(g, spec, {flat_index(spec, -m, n), -m, n}, {-p.theta, p.s});
    CHECK(std::abs(plus - minus) <= 1e-10 * std::max(1.0, std::abs(plus)));
    const cdouble shifted = eval_H_xi(g, spec, {flat_index(spec, m, n), m, n}, {p.theta + 2 * pi, p.s});
    CHECK(std::abs(plus - shifted) <= 1e-9 * std::max(1.0, std::abs(plus)));
  }
}

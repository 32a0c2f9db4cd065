#include "tubearc/assembly.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "tubearc/error.hpp"
#include "tubearc/parallel.hpp"

namespace tubearc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t = 0.0;
  return t;
}

double angular_distance(double x, double y) {
  const double d = std::abs(wrap_angle(x) - wrap_angle(y));
  return std::min(d, kTwoPi - d);
}

// Per-s angular blocks, indexed [block][p][q] with p, q over angular labels.
enum Block { kOverlap = 0, kAngular = 1, kInverse = 2, kGradient = 3, kBlockCount = 4 };

}  // namespace

bool DeltaSiteLattice::reflection_symmetric(double tol) const {
  for (const DeltaSite& a : sites) {
    bool found = false;
    for (const DeltaSite& b : sites) {
      if (std::abs(a.s - b.s) <= tol && angular_distance(a.theta, -b.theta) <= tol) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

DeltaSiteLattice armchair_lattice(int sites_per_ring, int rings, double length,
                                  double strength) {
  if (sites_per_ring < 1 || rings < 1) {
    throw Error(ErrorCode::invalid_argument, "armchair lattice needs >= 1 site and ring");
  }
  if (!(length > 0.0)) throw Error(ErrorCode::invalid_argument, "lattice length must be > 0");
  DeltaSiteLattice lattice;
  lattice.strength = strength;
  lattice.sites_per_ring = sites_per_ring;
  lattice.rings = rings;
  lattice.arrangement = LatticeArrangement::armchair;
  lattice.sites.reserve(static_cast<std::size_t>(sites_per_ring) * rings);
  const double spacing = kTwoPi / sites_per_ring;
  for (int k = 1; k <= rings; ++k) {
    const double s = k * length / (rings + 1);
    const double offset = ((k - 1) % 2) * 0.5 * spacing;
    for (int j = 1; j <= sites_per_ring; ++j) {
      lattice.sites.push_back({j, k, wrap_angle((j - 1) * spacing + offset), s});
    }
  }
  return lattice;
}

DeltaSiteLattice custom_lattice(double strength, std::vector<DeltaSite> sites, double length) {
  DeltaSiteLattice lattice;
  lattice.strength = strength;
  lattice.arrangement = LatticeArrangement::custom;
  int max_ring = 0;
  int max_site = 0;
  for (DeltaSite& site : sites) {
    if (!(site.s > 0.0 && site.s < length)) {
      throw Error(ErrorCode::invalid_argument,
                  "delta site at s=" + std::to_string(site.s) + " lies outside (0, L)");
    }
    site.theta = wrap_angle(site.theta);
    max_ring = std::max(max_ring, site.ring);
    max_site = std::max(max_site, site.site);
  }
  lattice.rings = max_ring;
  lattice.sites_per_ring = max_site;
  lattice.sites = std::move(sites);
  return lattice;
}

SurfaceIntegrals integrate_surface(const TubeGeometry& geom, const QuadratureGrid& grid,
                                   const BasisSpec& spec, bool with_hamiltonian,
                                   unsigned threads) {
  check_resolution(grid, spec);
  const int width = spec.angular_count();
  const int pairs = width * width;
  const int n_theta = grid.n_theta();
  const int n_s = grid.n_s();
  const double a = geom.radius;
  const double c_kin = geom.kinetic_scale();

  // conj(Theta_p) Theta_q, conj(Theta_p) Theta_q', conj(Theta_p) Theta_q'' on theta nodes.
  std::vector<cdouble> prod0(static_cast<std::size_t>(pairs) * n_theta);
  std::vector<cdouble> prod1(prod0.size());
  std::vector<cdouble> prod2(prod0.size());
  {
    std::vector<AngularValue> ang(static_cast<std::size_t>(width) * n_theta);
    for (int p = 0; p < width; ++p) {
      for (int t = 0; t < n_theta; ++t) {
        ang[p * n_theta + t] = angular_factor(spec.kind, p - spec.max_m, grid.theta[t]);
      }
    }
    for (int p = 0; p < width; ++p) {
      for (int q = 0; q < width; ++q) {
        for (int t = 0; t < n_theta; ++t) {
          const cdouble left = std::conj(ang[p * n_theta + t].value);
          const AngularValue& right = ang[q * n_theta + t];
          const std::size_t at = (static_cast<std::size_t>(p) * width + q) * n_theta + t;
          prod0[at] = left * right.value;
          prod1[at] = left * right.d1;
          prod2[at] = left * right.d2;
        }
      }
    }
  }

  const int block_count = with_hamiltonian ? kBlockCount : 1;
  std::vector<cdouble> blocks(static_cast<std::size_t>(n_s) * block_count * pairs);
  std::vector<double> cos_theta(n_theta);
  std::vector<double> sin_theta(n_theta);
  for (int t = 0; t < n_theta; ++t) {
    cos_theta[t] = std::cos(grid.theta[t]);
    sin_theta[t] = std::sin(grid.theta[t]);
  }

  parallel_for(static_cast<std::size_t>(n_s), threads, [&](std::size_t is) {
    const double s = grid.s[is];
    const double kappa = axis_curvature(geom, s);
    const double dkappa = axis_curvature_derivative(geom, s);
    std::vector<double> w_overlap(n_theta), w_second(n_theta), w_first(n_theta),
        w_inverse(n_theta), w_gradient(n_theta);
    for (int t = 0; t < n_theta; ++t) {
      const double w = grid.theta_weight[t];
      const double lam = 1.0 - a * kappa * cos_theta[t];
      w_overlap[t] = w * a * lam;
      w_second[t] = w * lam / a;
      w_first[t] = w * kappa * sin_theta[t];
      w_inverse[t] = w * a / lam;
      w_gradient[t] = -w * a * a * dkappa * cos_theta[t] / (lam * lam);
    }
    cdouble* out = blocks.data() + is * block_count * pairs;
    for (int pq = 0; pq < pairs; ++pq) {
      const std::size_t base = static_cast<std::size_t>(pq) * n_theta;
      cdouble o = 0.0;
      for (int t = 0; t < n_theta; ++t) o += prod0[base + t] * w_overlap[t];
      out[kOverlap * pairs + pq] = o;
      if (!with_hamiltonian) continue;
      cdouble k = 0.0;
      cdouble inv = 0.0;
      cdouble g = 0.0;
      for (int t = 0; t < n_theta; ++t) {
        k += prod2[base + t] * w_second[t] + prod1[base + t] * w_first[t];
        inv += prod0[base + t] * w_inverse[t];
        g += prod0[base + t] * w_gradient[t];
      }
      out[kAngular * pairs + pq] = k;
      out[kInverse * pairs + pq] = inv;
      out[kGradient * pairs + pq] = g;
    }
  });

  // sin(n pi s/L) and its derivatives per s node.
  const int max_n = spec.max_n;
  std::vector<LongitudinalValue> lon(static_cast<std::size_t>(n_s) * max_n);
  for (int is = 0; is < n_s; ++is) {
    for (int n = 1; n <= max_n; ++n) {
      lon[is * max_n + n - 1] = longitudinal_factor(n, spec.length, grid.s[is]);
    }
  }

  const int size = spec.size();
  SurfaceIntegrals out;
  out.overlap = Matrix::Zero(size, size);
  if (with_hamiltonian) out.hamiltonian = Matrix::Zero(size, size);
  const double vd_scale = c_kin / (4.0 * a * a);

  parallel_for(static_cast<std::size_t>(size), threads, [&](std::size_t row) {
    const int j = static_cast<int>(row);
    const int p = j % width;
    const int nj = j / width;
    for (int k = 0; k < size; ++k) {
      const int q = k % width;
      const int nk = k / width;
      const int pq = p * width + q;
      cdouble s_sum = 0.0;
      cdouble h_sum = 0.0;
      for (int is = 0; is < n_s; ++is) {
        const cdouble* blk = blocks.data() + static_cast<std::size_t>(is) * block_count * pairs;
        const double sj = lon[is * max_n + nj].value;
        const LongitudinalValue& lk = lon[is * max_n + nk];
        const double ws = grid.s_weight[is] * sj;
        s_sum += ws * lk.value * blk[kOverlap * pairs + pq];
        if (with_hamiltonian) {
          h_sum += ws * (-c_kin * lk.value * blk[kAngular * pairs + pq] -
                         blk[kInverse * pairs + pq] * (c_kin * lk.d2 + vd_scale * lk.value) +
                         c_kin * lk.d1 * blk[kGradient * pairs + pq]);
        }
      }
      out.overlap(j, k) = s_sum;
      if (with_hamiltonian) out.hamiltonian(j, k) = h_sum;
    }
  });
  return out;
}

namespace {

double relative_defect(const Matrix& m) {
  const double scale = max_abs(m);
  if (scale == 0.0) return 0.0;
  return max_abs(m - m.adjoint()) / scale;
}

Matrix hermitize(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

void check_defect(double defect, const char* what) {
  if (defect > kMaxHermiticityDefect) {
    throw Error(ErrorCode::hermiticity_failure,
                std::string(what) + " Hermiticity defect " + std::to_string(defect) +
                    " exceeds tolerance; refine the quadrature");
  }
}

}  // namespace

Matrix kinetic_distortion_matrix(const TubeGeometry& geom, const QuadratureGrid& grid,
                                 const BasisSpec& spec, unsigned threads, double* defect) {
  const SurfaceIntegrals integrals = integrate_surface(geom, grid, spec, true, threads);
  const double d = relative_defect(integrals.hamiltonian);
  if (defect != nullptr) *defect = d;
  check_defect(d, "Hamiltonian");
  return hermitize(integrals.hamiltonian);
}

Matrix delta_matrix(const TubeGeometry& geom, const BasisSpec& spec,
                    const DeltaSiteLattice& lattice) {
  const int size = spec.size();
  Matrix v = Matrix::Zero(size, size);
  if (lattice.strength == 0.0) return v;
  Vector xi(size);
  for (const DeltaSite& site : lattice.sites) {
    const SurfacePoint p{site.theta, site.s};
    for (int j = 1; j <= size; ++j) xi(j - 1) = eval_xi(spec, index_map(spec, j), p);
    const double weight = -lattice.strength * geom.radius * lambda_factor(geom, p);
    v.noalias() += weight * xi.conjugate() * xi.transpose();
  }
  return hermitize(v);
}

AssembledSystem assemble(const TubeGeometry& geom, const QuadratureGrid& grid,
                         const BasisSpec& spec, const DeltaSiteLattice* lattice,
                         unsigned threads) {
  geom.validate();
  spec.validate();
  const SurfaceIntegrals integrals = integrate_surface(geom, grid, spec, true, threads);

  AssembledSystem sys;
  const double s_defect = relative_defect(integrals.overlap);
  check_defect(s_defect, "overlap");
  sys.overlap = make_overlap(hermitize(integrals.overlap));
  sys.overlap.hermiticity_defect = s_defect;
  sys.basis = gram_schmidt(sys.overlap);

  sys.hamiltonian.asymmetry = relative_defect(integrals.hamiltonian);
  check_defect(sys.hamiltonian.asymmetry, "Hamiltonian");
  sys.hamiltonian.h_xi = hermitize(integrals.hamiltonian);
  if (lattice != nullptr) sys.hamiltonian.h_xi += delta_matrix(geom, spec, *lattice);

  const Matrix& t = sys.basis.transform;
  sys.hamiltonian.h_phi = hermitize(t * sys.hamiltonian.h_xi * t.adjoint());
  return sys;
}

}  // namespace tubearc

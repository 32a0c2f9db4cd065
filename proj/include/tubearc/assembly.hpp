#pragma once

#include <optional>
#include <vector>

#include "tubearc/basis.hpp"
#include "tubearc/geometry.hpp"
#include "tubearc/linalg.hpp"
#include "tubearc/quadrature.hpp"

namespace tubearc {

struct DeltaSite {
  int site = 1;  ///< position within the ring, 1-based
  int ring = 1;  ///< 1-based
  double theta = 0.0;
  double s = 0.0;
};

enum class LatticeArrangement { armchair, custom };

/// Point sites V = -strength * sum delta(theta - theta_jk) delta(s - s_k).
/// strength in meV nm.
struct DeltaSiteLattice {
  double strength = 0.0;
  int sites_per_ring = 0;
  int rings = 0;
  LatticeArrangement arrangement = LatticeArrangement::custom;
  std::vector<DeltaSite> sites;

  /// True when every site has a mirror partner at -theta (same s).
  bool reflection_symmetric(double tol = 1e-12) const;
};

/// Rings at s_k = k L / (rings + 1); ring k is rotated by pi / sites_per_ring
/// when k is even, so ring 1 starts at theta = 0.
DeltaSiteLattice armchair_lattice(int sites_per_ring, int rings, double length,
                                  double strength);

/// Validates s in (0, L) and wraps theta into [0, 2pi).
DeltaSiteLattice custom_lattice(double strength, std::vector<DeltaSite> sites, double length);

/// Overlap and Hamiltonian integrals over the primitive basis, both computed
/// as full matrices (no mirroring) so the defects are measurable.
struct SurfaceIntegrals {
  Matrix overlap;
  Matrix hamiltonian;
};

SurfaceIntegrals integrate_surface(const TubeGeometry& geom, const QuadratureGrid& grid,
                                   const BasisSpec& spec, bool with_hamiltonian,
                                   unsigned threads = 1);

/// Relative Hermiticity defect max|A - A^H| / max|A| above which assembly fails.
inline constexpr double kMaxHermiticityDefect = 1e-6;

/// <xi_j, H xi_k> (meV nm^2), symmetrized. `defect` receives the relative
/// Hermiticity defect before symmetrization.
Matrix kinetic_distortion_matrix(const TubeGeometry& geom, const QuadratureGrid& grid,
                                 const BasisSpec& spec, unsigned threads = 1,
                                 double* defect = nullptr);

/// Site elements by point evaluation, keeping the a lambda measure factor.
Matrix delta_matrix(const TubeGeometry& geom, const BasisSpec& spec,
                    const DeltaSiteLattice& lattice);

struct HamiltonianMatrix {
  Matrix h_xi;       ///< meV nm^2, includes sites
  Matrix h_phi;      ///< meV
  double asymmetry = 0.0;  ///< relative defect of the integrated part
};

struct AssembledSystem {
  OverlapMatrix overlap;
  OrthonormalBasis basis;
  HamiltonianMatrix hamiltonian;
};

AssembledSystem assemble(const TubeGeometry& geom, const QuadratureGrid& grid,
                         const BasisSpec& spec, const DeltaSiteLattice* lattice,
                         unsigned threads = 1);

}  // namespace tubearc

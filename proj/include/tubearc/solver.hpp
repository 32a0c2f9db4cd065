#pragma once

#include <optional>
#include <vector>

#include "tubearc/analysis.hpp"
#include "tubearc/assembly.hpp"
#include "tubearc/linalg.hpp"

namespace tubearc {

struct Problem {
  TubeGeometry geometry;
  BasisSpec basis;  ///< basis.length is overwritten with geometry.length
  QuadratureConfig quadrature;
  std::optional<DeltaSiteLattice> lattice;
  unsigned threads = 1;
};

struct Solution {
  Problem problem;
  AssembledSystem system;
  SpectralResult spectrum;  ///< xi_coefficients filled, columns S-normalized
  std::vector<ParityLabel> parity;
};

/// Assemble, orthonormalize, diagonalize. Inside (numerically) degenerate
/// eigenvalue clusters the eigenvectors are rotated to diagonalize the
/// reflection theta -> -theta, so symmetric problems give parity eigenstates.
Solution solve(const Problem& problem);

/// Cross-check route: same matrices, generalized eigenproblem via Cholesky.
SpectralResult solve_generalized_route(const Solution& solution);

}  // namespace tubearc

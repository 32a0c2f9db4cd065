#pragma once

#include <Eigen/Dense>
#include <vector>

#include "tubearc/basis.hpp"
#include "tubearc/geometry.hpp"
#include "tubearc/quadrature.hpp"

namespace tubearc {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Gram matrix S_jk = <xi_j, xi_k> under the surface measure (nm^2).
struct OverlapMatrix {
  Matrix values;
  double hermiticity_defect = 0.0;  ///< max |S - S^H| before mirroring
  double condition_number = 1.0;
};

/// Lower-triangular T with T S T^H = I; phi_j = sum_k conj(T_jk) xi_k.
/// Diagonal is real positive.
struct OrthonormalBasis {
  Matrix transform;
  double residual = 0.0;  ///< max |T S T^H - I|
};

/// eigenvectors: columns over phi; xi_coefficients = T^H eigenvectors.
struct SpectralResult {
  RealVector eigenvalues;
  Matrix eigenvectors;
  Matrix xi_coefficients;
  std::vector<double> residuals;
  double asymmetry = 0.0;  ///< max |H - H^H| seen on input
};

/// Upper-triangle integration mirrored to a Hermitian matrix.
OverlapMatrix overlap_matrix(const TubeGeometry& geom, const QuadratureGrid& grid,
                             const BasisSpec& spec, unsigned threads = 1);

/// Wraps a precomputed Gram matrix (computes its condition number).
OverlapMatrix make_overlap(Matrix values);

/// Conditioning limit for gram_schmidt.
inline constexpr double kMaxOverlapCondition = 1e10;

/// Modified Gram-Schmidt in the S metric with one reorthogonalization pass.
/// Throws Error(ill_conditioned_overlap) naming the first near-dependent
/// column when cond(S) >= kMaxOverlapCondition.
OrthonormalBasis gram_schmidt(const OverlapMatrix& overlap);
OrthonormalBasis gram_schmidt(const Matrix& overlap);

double orthonormality_residual(const Matrix& transform, const Matrix& overlap);

/// max |A_jk| (the norm used by all relative tolerances here).
double max_abs(const Matrix& m);

/// Full spectrum of a Hermitian matrix, ascending. The input is symmetrized
/// as (H + H^H)/2; asymmetry above 1e-8 max|H| throws Error(hermiticity_failure).
SpectralResult solve_self_adjoint(const Matrix& h);

/// Oracle route: H c = e S c by Cholesky reduction, independent of gram_schmidt.
SpectralResult solve_generalized(const Matrix& h, const Matrix& s);

}  // namespace tubearc

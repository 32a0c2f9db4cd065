#include "tubearc/linalg.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "tubearc/assembly.hpp"
#include "tubearc/error.hpp"

namespace tubearc {

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

OverlapMatrix make_overlap(Matrix values) {
  OverlapMatrix out;
  out.hermiticity_defect = max_abs(values - values.adjoint());
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(values, Eigen::EigenvaluesOnly);
  const RealVector& ev = eig.eigenvalues();
  out.condition_number = ev(0) > 0.0 ? ev(ev.size() - 1) / ev(0)
                                     : std::numeric_limits<double>::infinity();
  out.values = std::move(values);
  return out;
}

OverlapMatrix overlap_matrix(const TubeGeometry& geom, const QuadratureGrid& grid,
                             const BasisSpec& spec, unsigned threads) {
  Matrix s = integrate_surface(geom, grid, spec, false, threads).overlap;
  // Upper triangle is authoritative.
  const double defect = max_abs(s - s.adjoint());
  for (Eigen::Index j = 0; j < s.rows(); ++j) {
    s(j, j) = s(j, j).real();
    for (Eigen::Index k = j + 1; k < s.cols(); ++k) s(k, j) = std::conj(s(j, k));
  }
  OverlapMatrix out = make_overlap(std::move(s));
  out.hermiticity_defect = defect;
  return out;
}

double orthonormality_residual(const Matrix& transform, const Matrix& overlap) {
  const Matrix g = transform * overlap * transform.adjoint();
  return max_abs(g - Matrix::Identity(g.rows(), g.cols()));
}

namespace {

// Columns of the returned matrix are S-orthonormal coefficient vectors; the
// matrix is upper triangular. Throws on a non-positive norm.
Matrix modified_gram_schmidt(const Matrix& s, Eigen::Index* weakest, double* weakest_ratio) {
  const Eigen::Index n = s.rows();
  Matrix q = Matrix::Zero(n, n);
  Matrix sq = Matrix::Zero(n, n);  // S q_i
  *weakest = 0;
  *weakest_ratio = std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < n; ++j) {
    Vector v = Vector::Zero(n);
    v(j) = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index i = 0; i < j; ++i) {
        const cdouble r = sq.col(i).head(j + 1).dot(v.head(j + 1));
        v.head(i + 1) -= r * q.col(i).head(i + 1);
      }
    }
    const double norm2 = std::real(v.head(j + 1).dot(s.topLeftCorner(j + 1, j + 1) * v.head(j + 1)));
    const double ratio = norm2 / std::real(s(j, j));
    if (ratio < *weakest_ratio) {
      *weakest_ratio = ratio;
      *weakest = j;
    }
    if (!(norm2 > 0.0)) {
      throw Error(ErrorCode::ill_conditioned_overlap,
                  "Gram-Schmidt: basis function j=" + std::to_string(j + 1) +
                      " is linearly dependent on its predecessors");
    }
    v /= std::sqrt(norm2);
    v(j) = v(j).real();
    q.col(j) = v;
    sq.col(j) = s * v;
  }
  return q;
}

}  // namespace

OrthonormalBasis gram_schmidt(const OverlapMatrix& overlap) {
  const Matrix& s = overlap.values;
  Eigen::Index weakest = 0;
  double weakest_ratio = 0.0;
  if (!(overlap.condition_number < kMaxOverlapCondition)) {
    modified_gram_schmidt(s, &weakest, &weakest_ratio);
    throw Error(ErrorCode::ill_conditioned_overlap,
                "overlap condition number " + std::to_string(overlap.condition_number) +
                    " >= 1e10; basis function j=" + std::to_string(weakest + 1) +
                    " is nearly dependent on its predecessors (residual norm ratio " +
                    std::to_string(weakest_ratio) + ")");
  }
  const Matrix q = modified_gram_schmidt(s, &weakest, &weakest_ratio);
  OrthonormalBasis out;
  out.transform = q.adjoint();
  out.residual = orthonormality_residual(out.transform, s);
  return out;
}

OrthonormalBasis gram_schmidt(const Matrix& overlap) { return gram_schmidt(make_overlap(overlap)); }

namespace {

void fill_residuals(const Matrix& h, SpectralResult& out) {
  out.residuals.resize(out.eigenvalues.size());
  for (Eigen::Index i = 0; i < out.eigenvalues.size(); ++i) {
    out.residuals[i] =
        (h * out.eigenvectors.col(i) - out.eigenvalues(i) * out.eigenvectors.col(i)).norm();
  }
}

}  // namespace

SpectralResult solve_self_adjoint(const Matrix& h) {
  SpectralResult out;
  out.asymmetry = max_abs(h - h.adjoint());
  const double scale = max_abs(h);
  if (out.asymmetry > 1e-8 * scale) {
    throw Error(ErrorCode::hermiticity_failure,
                "eigensolver input is not Hermitian (defect " + std::to_string(out.asymmetry) +
                    ", max element " + std::to_string(scale) + ")");
  }
  const Matrix hs = 0.5 * (h + h.adjoint());
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(hs);
  out.eigenvalues = eig.eigenvalues();
  out.eigenvectors = eig.eigenvectors();
  fill_residuals(hs, out);
  return out;
}

SpectralResult solve_generalized(const Matrix& h, const Matrix& s) {
  const Eigen::LLT<Matrix> llt(s);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::ill_conditioned_overlap, "Cholesky factorization of S failed");
  }
  const auto lower = llt.matrixL();
  // A = L^-1 H L^-H
  Matrix a = lower.solve(h);
  a = lower.solve(a.adjoint().eval());
  SpectralResult out = solve_self_adjoint(0.5 * (a + a.adjoint()));
  out.xi_coefficients = llt.matrixU().solve(out.eigenvectors);
  return out;
}

}  // namespace tubearc

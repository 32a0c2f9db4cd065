#include "tubearc/solver.hpp"

#include <cmath>

namespace tubearc {

namespace {

// Rotates each cluster of eigenvalues closer than `tol` so the reflection is
// diagonal on it. Eigenvalues inside a cluster are left as computed.
void adapt_clusters(SpectralResult& spectrum, const Matrix& transform, const Matrix& overlap,
                    const Matrix& reflection, double tol) {
  const Eigen::Index n = spectrum.eigenvalues.size();
  // In phi coordinates the reflection is T S R T^H.
  const Matrix r_phi = transform * overlap * reflection * transform.adjoint();
  Eigen::Index begin = 0;
  while (begin < n) {
    Eigen::Index end = begin + 1;
    while (end < n && spectrum.eigenvalues(end) - spectrum.eigenvalues(end - 1) <= tol) ++end;
    const Eigen::Index width = end - begin;
    if (width > 1) {
      const Matrix v = spectrum.eigenvectors.middleCols(begin, width);
      const Matrix block = v.adjoint() * r_phi * v;
      const Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (block + block.adjoint()));
      // Odd states first within a cluster, matching ascending reflection eigenvalues.
      spectrum.eigenvectors.middleCols(begin, width) = v * eig.eigenvectors();
    }
    begin = end;
  }
}

// Largest-magnitude xi coefficient made real positive.
void fix_phase(SpectralResult& spectrum) {
  for (Eigen::Index i = 0; i < spectrum.xi_coefficients.cols(); ++i) {
    Eigen::Index at = 0;
    spectrum.xi_coefficients.col(i).cwiseAbs().maxCoeff(&at);
    const cdouble c = spectrum.xi_coefficients(at, i);
    const cdouble phase = std::conj(c) / std::abs(c);
    spectrum.xi_coefficients.col(i) *= phase;
    spectrum.eigenvectors.col(i) *= phase;
    spectrum.xi_coefficients(at, i) = std::abs(c);
  }
}

}  // namespace

Solution solve(const Problem& problem) {
  Solution out;
  out.problem = problem;
  out.problem.basis.length = problem.geometry.length;
  const Problem& p = out.problem;
  p.geometry.validate();
  p.basis.validate();

  const QuadratureGrid grid = build_grid(p.quadrature, p.geometry.length);
  out.system = assemble(p.geometry, grid, p.basis, p.lattice ? &*p.lattice : nullptr, p.threads);

  const Matrix& h = out.system.hamiltonian.h_phi;
  out.spectrum = solve_self_adjoint(h);
  const double tol = 1e-9 * (max_abs(h) + 1.0);
  adapt_clusters(out.spectrum, out.system.basis.transform, out.system.overlap.values,
                 reflection_operator(p.basis), tol);
  out.spectrum.xi_coefficients = out.system.basis.transform.adjoint() * out.spectrum.eigenvectors;
  fix_phase(out.spectrum);
  for (Eigen::Index i = 0; i < out.spectrum.eigenvalues.size(); ++i) {
    const Vector v = out.spectrum.eigenvectors.col(i);
    out.spectrum.residuals[i] = (h * v - out.spectrum.eigenvalues(i) * v).norm();
    out.parity.push_back(
        parity_classify(out.spectrum.xi_coefficients.col(i), p.basis, out.system.overlap.values));
  }
  return out;
}

SpectralResult solve_generalized_route(const Solution& solution) {
  return solve_generalized(solution.system.hamiltonian.h_xi, solution.system.overlap.values);
}

}  // namespace tubearc

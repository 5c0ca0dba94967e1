#include "qfim/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace qfim {

Spectrum hermitian_eigendecompose(const Eigen::Ref<const ComplexMatrix>& a,
                                  Real herm_tol) {
  const auto n = a.rows();
  if (n != a.cols()) {
    throw DimensionMismatchError("eigendecomposition needs a square matrix");
  }
  if (n > 64) {
    throw OutOfRangeError("eigendecomposition supports dim <= 64");
  }
  if (!a.allFinite()) {
    throw NotHermitianError("matrix has non-finite entries");
  }
  if (hermiticity_residual(a) > herm_tol) {
    throw NotHermitianError("matrix is not Hermitian within tolerance");
  }

  const ComplexMatrix sym = 0.5 * (a + a.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw NoConvergenceError("eigensolver exceeded its iteration budget");
  }

  // Descending order; ties keep the solver's (ascending) output order.
  std::vector<Eigen::Index> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index lhs, Eigen::Index rhs) {
                     return solver.eigenvalues()(lhs) > solver.eigenvalues()(rhs);
                   });

  Spectrum spectrum;
  spectrum.eigenvalues.resize(n);
  spectrum.eigenvectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    spectrum.eigenvalues(k) = solver.eigenvalues()(order[static_cast<size_t>(k)]);
    spectrum.eigenvectors.col(k) =
        solver.eigenvectors().col(order[static_cast<size_t>(k)]);
  }

  // Phase gauge: first component with modulus > 1e-12 made real nonnegative.
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const Complex v = spectrum.eigenvectors(i, k);
      if (std::abs(v) > 1e-12) {
        spectrum.eigenvectors.col(k) *= std::conj(v) / std::abs(v);
        break;
      }
    }
  }
  return spectrum;
}

DensityReport validate_density(const Eigen::Ref<const ComplexMatrix>& a,
                               Real tol, Real psd_tol) {
  DensityReport report;
  if (a.rows() != a.cols() || !a.allFinite()) {
    report.herm_residual = std::numeric_limits<Real>::infinity();
    report.trace_residual = std::numeric_limits<Real>::infinity();
    report.min_eigenvalue = -std::numeric_limits<Real>::infinity();
    return report;
  }
  report.herm_residual = hermiticity_residual(a);
  report.trace_residual = std::abs(a.trace() - Complex(1.0, 0.0));
  report.hermitian = report.herm_residual <= tol;
  report.unit_trace = report.trace_residual <= tol;
  // PSD check runs on the Hermitian part so that a slightly asymmetric input
  // still gets a meaningful spectrum.
  const ComplexMatrix sym = 0.5 * (a + a.adjoint().eval());
  const Spectrum spectrum = hermitian_eigendecompose(sym, 1.0);
  report.min_eigenvalue = spectrum.eigenvalues.minCoeff();
  report.positive = report.min_eigenvalue >= -psd_tol;
  return report;
}

Real frobenius_distance(const Eigen::Ref<const ComplexMatrix>& a,
                        const Eigen::Ref<const ComplexMatrix>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatchError("frobenius_distance needs equal shapes");
  }
  return (a - b).norm();
}

}  // namespace qfim

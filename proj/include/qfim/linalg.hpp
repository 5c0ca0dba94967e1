#pragma once

#include <Eigen/Dense>

#include "qfim/types.hpp"

namespace qfim {

// Eigendecomposition of a Hermitian matrix, eigenvalues sorted descending
// (ties keep the solver's original order), eigenvector j in column j.
// Gauge: the first component of each eigenvector with modulus > 1e-12 is
// made real and nonnegative, so repeated runs and regression baselines agree
// bit for bit.
struct Spectrum {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;
};

// Max-abs deviation from Hermitian symmetry, usable on any Eigen expression.
template <typename Derived>
Real hermiticity_residual(const Eigen::MatrixBase<Derived>& a) {
  return (a.derived() - a.derived().adjoint()).cwiseAbs().maxCoeff();
}

// Throws NotHermitianError if ||A - A^dagger||_max > herm_tol or A has
// non-finite entries, DimensionMismatchError if A is not square,
// OutOfRangeError for dim > 64, NoConvergenceError if the iteration fails.
Spectrum hermitian_eigendecompose(const Eigen::Ref<const ComplexMatrix>& a,
                                  Real herm_tol = kHermitianTol);

// Density-matrix diagnostics. Never throws; a matrix that cannot be
// decomposed reports all checks failed.
struct DensityReport {
  bool hermitian = false;
  bool unit_trace = false;
  bool positive = false;
  Real herm_residual = 0.0;
  Real trace_residual = 0.0;
  Real min_eigenvalue = 0.0;

  bool ok() const { return hermitian && unit_trace && positive; }
};

DensityReport validate_density(const Eigen::Ref<const ComplexMatrix>& a,
                               Real tol = 1e-12, Real psd_tol = 1e-10);

// ||A - B||_F; throws DimensionMismatchError on shape mismatch.
Real frobenius_distance(const Eigen::Ref<const ComplexMatrix>& a,
                        const Eigen::Ref<const ComplexMatrix>& b);

}  // namespace qfim

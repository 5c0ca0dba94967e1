#pragma once

#include "qfim/linalg.hpp"
#include "qfim/types.hpp"

namespace qfim {

enum class DerivativeProvider { Analytic, FiniteDifference };

std::string to_string(DerivativeProvider provider);
DerivativeProvider parse_provider(const std::string& name);  // analytic|fd

// Quantum Fisher information split into the classical (eigenvalue
// statistics), pure (eigenvector rotation) and mixture terms,
// total = f_cl + f_qu - f_mix.
struct QfiResult {
  Real total = 0.0;
  Real f_cl = 0.0;
  Real f_qu = 0.0;
  Real f_mix = 0.0;
  // Unordered index pairs excluded by the kappa_j != 0 / kappa_j + kappa_l
  // != 0 summation rules.
  int dropped_pairs = 0;
  // Eigenvalue clusters (within degeneracy_delta) that needed a subspace
  // pre-rotation.
  int degenerate_groups = 0;
  // |three-term total - SLD total|, filled by qfi_for_params.
  Real residual_vs_sld = 0.0;
  // True when the decomposition degraded and total was replaced by the SLD
  // value.
  bool used_fallback = false;
};

// Central difference (rho(eta+h) - rho(eta-h)) / 2h of the final state in
// the estimation target, switching to a one-sided second-order stencil at
// the closed ends of the parameter range.
ComplexMatrix finite_diff_drho(const ModelParams& params, EstimationTarget wrt,
                               Real h);

// Two-step Richardson extrapolation of the stencil above: (4 D(h/2) - D(h))/3.
ComplexMatrix richardson_fd_drho(const ModelParams& params,
                                 EstimationTarget wrt, Real h = kFdStep);

// Fisher information from the symmetric logarithmic derivative resolved in
// the eigenbasis of rho:
//   F = sum over pairs with kappa_i + kappa_j > eig_cutoff of
//       2 |<psi_i| drho |psi_j>|^2 / (kappa_i + kappa_j).
Real qfi_sld(const Eigen::Ref<const ComplexMatrix>& rho,
             const Eigen::Ref<const ComplexMatrix>& drho,
             Real eig_cutoff = kEigenvalueCutoff);

// Three-term decomposition. Eigenvalue derivatives via Hellmann-Feynman,
// eigenvector derivatives via first-order perturbation theory in the gauge
// <psi_j | d psi_j> = 0; eigenvalue clusters closer than degeneracy_delta
// are pre-rotated to diagonalize the projected drho before the perturbative
// sums. Throws DegeneracyUnresolvedError when a cluster's projected drho
// cannot be diagonalized cleanly and cross-terms remain.
QfiResult qfi_three_term(const Eigen::Ref<const ComplexMatrix>& rho,
                         const Eigen::Ref<const ComplexMatrix>& drho,
                         Real degeneracy_delta = kDegeneracyDelta,
                         Real eig_cutoff = kEigenvalueCutoff);

// Same computation starting from an existing eigendecomposition of rho.
// The result is invariant under per-eigenvector phase changes.
QfiResult qfi_three_term_from_spectrum(const Spectrum& spectrum,
                                       const Eigen::Ref<const ComplexMatrix>& drho,
                                       Real degeneracy_delta = kDegeneracyDelta,
                                       Real eig_cutoff = kEigenvalueCutoff);

// Full pipeline: build the final state, build drho with the requested
// provider, run both QFI paths. The returned total comes from the
// three-term path with residual_vs_sld as the cross-check; if the
// decomposition degrades (DegeneracyUnresolvedError, or the residual
// exceeds 1e-6 * max(1, F)), the SLD total takes over and used_fallback is
// set.
QfiResult qfi_for_params(const ModelParams& params, EstimationTarget wrt,
                         DerivativeProvider provider = DerivativeProvider::Analytic,
                         Real degeneracy_delta = kDegeneracyDelta,
                         Real eig_cutoff = kEigenvalueCutoff,
                         Real fd_step = kFdStep);

}  // namespace qfim

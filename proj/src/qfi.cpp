#include "qfim/qfi.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "qfim/channels.hpp"
#include "qfim/states.hpp"

namespace qfim {

std::string to_string(DerivativeProvider provider) {
  return provider == DerivativeProvider::Analytic ? "analytic" : "fd";
}

DerivativeProvider parse_provider(const std::string& name) {
  if (name == "analytic") return DerivativeProvider::Analytic;
  if (name == "fd") return DerivativeProvider::FiniteDifference;
  throw ConfigError("unknown provider '" + name + "' (expected analytic|fd)");
}

namespace {

ComplexMatrix state_at(const ModelParams& params, EstimationTarget wrt,
                       Real value) {
  ModelParams p = params;
  (wrt == EstimationTarget::R ? p.r : p.mu) = value;
  return build_final_state(p);
}

}  // namespace

ComplexMatrix finite_diff_drho(const ModelParams& params, EstimationTarget wrt,
                               Real h) {
  validate_params(params);
  if (!(h > 0.0)) throw OutOfRangeError("finite-difference step must be > 0");
  const Real lo = 0.0;
  const Real hi = wrt == EstimationTarget::R ? kRindlerMax : kMuMax;
  const Real x = wrt == EstimationTarget::R ? params.r : params.mu;
  if (2.0 * h > hi - lo) throw OutOfRangeError("step too large for the range");

  if (x - h < lo) {
    // One-sided second-order stencil at the left end.
    return (-3.0 * state_at(params, wrt, x) + 4.0 * state_at(params, wrt, x + h) -
            state_at(params, wrt, x + 2.0 * h)) /
           (2.0 * h);
  }
  if (x + h > hi) {
    return (3.0 * state_at(params, wrt, x) - 4.0 * state_at(params, wrt, x - h) +
            state_at(params, wrt, x - 2.0 * h)) /
           (2.0 * h);
  }
  return (state_at(params, wrt, x + h) - state_at(params, wrt, x - h)) /
         (2.0 * h);
}

ComplexMatrix richardson_fd_drho(const ModelParams& params,
                                 EstimationTarget wrt, Real h) {
  return (4.0 * finite_diff_drho(params, wrt, h / 2.0) -
          finite_diff_drho(params, wrt, h)) /
         3.0;
}

Real qfi_sld(const Eigen::Ref<const ComplexMatrix>& rho,
             const Eigen::Ref<const ComplexMatrix>& drho,
             Real eig_cutoff) {
  if (hermiticity_residual(drho) > kHermitianTol) {
    throw NotHermitianError("drho is not Hermitian");
  }
  const Spectrum spectrum = hermitian_eigendecompose(rho);
  const Eigen::Index n = spectrum.eigenvalues.size();
  const RealVector kappa = spectrum.eigenvalues.cwiseMax(0.0);
  const ComplexMatrix m =
      spectrum.eigenvectors.adjoint() * drho * spectrum.eigenvectors;

  Real total = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const Real pair = kappa(i) + kappa(j);
      if (pair > eig_cutoff) total += 2.0 * std::norm(m(i, j)) / pair;
    }
  }
  return total;
}

QfiResult qfi_three_term_from_spectrum(const Spectrum& spectrum,
                                       const Eigen::Ref<const ComplexMatrix>& drho,
                                       Real degeneracy_delta, Real eig_cutoff) {
  if (hermiticity_residual(drho) > kHermitianTol) {
    throw NotHermitianError("drho is not Hermitian");
  }
  const Eigen::Index n = spectrum.eigenvalues.size();
  const RealVector kappa = spectrum.eigenvalues.cwiseMax(0.0);
  ComplexMatrix vectors = spectrum.eigenvectors;

  // Cluster eigenvalues closer than degeneracy_delta (chained), then rotate
  // each cluster's eigenvectors so the projected drho is diagonal there.
  // First-order perturbation theory is gauge-fixed by that rotation; the
  // within-cluster pairs drop out of the perturbative sums.
  std::vector<int> group(static_cast<size_t>(n), 0);
  int group_count = 1;
  for (Eigen::Index i = 1; i < n; ++i) {
    if (std::abs(spectrum.eigenvalues(i) - spectrum.eigenvalues(i - 1)) >=
        degeneracy_delta) {
      ++group_count;
    }
    group[static_cast<size_t>(i)] = group_count - 1;
  }

  QfiResult result;
  for (int g = 0; g < group_count; ++g) {
    Eigen::Index begin = 0;
    while (begin < n && group[static_cast<size_t>(begin)] != g) ++begin;
    Eigen::Index size = 0;
    while (begin + size < n && group[static_cast<size_t>(begin + size)] == g) {
      ++size;
    }
    if (size < 2) continue;
    ++result.degenerate_groups;

    const ComplexMatrix sub = vectors.middleCols(begin, size);
    const ComplexMatrix projected = sub.adjoint() * drho * sub;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> rot(projected);
    if (rot.info() != Eigen::Success) {
      throw DegeneracyUnresolvedError("projected drho failed to diagonalize");
    }
    vectors.middleCols(begin, size) = sub * rot.eigenvectors();

    const ComplexMatrix check =
        vectors.middleCols(begin, size).adjoint() * drho *
        vectors.middleCols(begin, size);
    Real off = 0.0;
    for (Eigen::Index a = 0; a < size; ++a) {
      for (Eigen::Index b = 0; b < size; ++b) {
        if (a != b) off = std::max(off, std::abs(check(a, b)));
      }
    }
    if (off > 1e-8 * std::max(1.0, drho.norm())) {
      throw DegeneracyUnresolvedError(
          "nonnegligible cross-terms inside a degenerate group");
    }
  }

  const ComplexMatrix m = vectors.adjoint() * drho * vectors;

  for (Eigen::Index j = 0; j < n; ++j) {
    const Real dk = m(j, j).real();
    if (kappa(j) > eig_cutoff) {
      result.f_cl += dk * dk / kappa(j);
    } else {
      ++result.dropped_pairs;
    }
  }

  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index l = 0; l < n; ++l) {
      if (j == l || group[static_cast<size_t>(j)] == group[static_cast<size_t>(l)]) {
        continue;
      }
      const Real gap = spectrum.eigenvalues(j) - spectrum.eigenvalues(l);
      const Real weight = std::norm(m(l, j)) / (gap * gap);
      result.f_qu += 4.0 * kappa(j) * weight;
      const Real pair = kappa(j) + kappa(l);
      if (pair > eig_cutoff) {
        result.f_mix += 8.0 * kappa(j) * kappa(l) / pair * weight;
      } else if (j < l) {
        ++result.dropped_pairs;
      }
    }
  }

  result.total = result.f_cl + result.f_qu - result.f_mix;
  return result;
}

QfiResult qfi_three_term(const Eigen::Ref<const ComplexMatrix>& rho,
                         const Eigen::Ref<const ComplexMatrix>& drho,
                         Real degeneracy_delta, Real eig_cutoff) {
  return qfi_three_term_from_spectrum(hermitian_eigendecompose(rho), drho,
                                      degeneracy_delta, eig_cutoff);
}

QfiResult qfi_for_params(const ModelParams& params, EstimationTarget wrt,
                         DerivativeProvider provider, Real degeneracy_delta,
                         Real eig_cutoff, Real fd_step) {
  validate_params(params);
  const ComplexMatrix rho = build_final_state(params);
  const ComplexMatrix drho =
      provider == DerivativeProvider::Analytic
          ? analytic_drho(params.mu, params.r, wrt,
                          coherence_factor(params.scenario, params.gamma_a,
                                           params.gamma_b))
          : richardson_fd_drho(params, wrt, fd_step);

  const Real sld_total = qfi_sld(rho, drho, eig_cutoff);

  QfiResult result;
  try {
    result = qfi_three_term(rho, drho, degeneracy_delta, eig_cutoff);
    result.residual_vs_sld = std::abs(result.total - sld_total);
    if (result.residual_vs_sld > 1e-6 * std::max(1.0, std::abs(sld_total))) {
      // Near-degenerate cancellation between f_qu and f_mix; the SLD form
      // of the same sum is stable.
      result.total = sld_total;
      result.used_fallback = true;
    }
  } catch (const DegeneracyUnresolvedError&) {
    result = QfiResult{};
    result.total = sld_total;
    result.residual_vs_sld = 0.0;
    result.used_fallback = true;
  }
  return result;
}

}  // namespace qfim

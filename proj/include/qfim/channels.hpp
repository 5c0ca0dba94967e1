#pragma once

#include <vector>

#include "qfim/types.hpp"

namespace qfim {

// A Kraus family acting on the joint 6-dimensional space.
// Invariant: sum_k K_k^dagger K_k == identity (completeness).
struct KrausSet {
  std::vector<ComplexMatrix> operators;
  ChannelScenario label = ChannelScenario::None;
};

// Qubit phase flip: {P1 * I, P2 * (sigma_z x I3)} with P1 = sqrt(1 - g/2),
// P2 = sqrt(g/2).
KrausSet qubit_phase_kraus(Real gamma_a);

// Qutrit phase flip: {R1 * I, R2 * (I2 x D), R2 * (I2 x D)^dagger} with
// D = diag(1, e^{-2pi i/3}, e^{2pi i/3}), R1 = sqrt(1 - 2g/3) and
// R2 = sqrt(g/3) (the unique nonnegative normalization with
// R1^2 + 2 R2^2 = 1).
KrausSet qutrit_phase_kraus(Real gamma_b);

// Kraus family for a whole scenario; Both composes the qutrit family after
// the qubit family into the product set {R_j K_i}.
KrausSet scenario_kraus(ChannelScenario scenario, Real gamma_a, Real gamma_b);

// ||sum_k K_k^dagger K_k - I||_F.
Real completeness_residual(const KrausSet& ks);

// rho -> sum_k K_k rho K_k^dagger. Throws InvalidChannelError when the
// completeness residual exceeds 1e-10.
ComplexMatrix apply_channel(const Eigen::Ref<const ComplexMatrix>& rho,
                            const KrausSet& ks);

// Scalar multiplying the state's coherences after the phase channels:
// None -> 1, QubitOnly -> 1 - gamma_a,
// QutritOnly -> eta_b = 1 - (2 gamma_b/3)(1 - cos(2pi/3)),
// Both -> (1 - gamma_a) * eta_b.
Real coherence_factor(ChannelScenario scenario, Real gamma_a, Real gamma_b);

// Closed-form noisy output state: diagonal unchanged, coherences scaled by
// coherence_factor. Equals explicit Kraus application of scenario_kraus.
ComplexMatrix build_final_state(const ModelParams& params);

}  // namespace qfim

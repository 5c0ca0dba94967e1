#include "qfim/channels.hpp"

#include <cmath>

#include "qfim/states.hpp"

namespace qfim {

namespace {

void require_gamma(const char* name, Real gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw OutOfRangeError(std::string(name) + " outside [0, 1]");
  }
}

ComplexMatrix qutrit_phase_diag() {
  // I2 x diag(1, e^{-2pi i/3}, e^{2pi i/3})
  const Real third = 2.0 * std::numbers::pi / 3.0;
  const Complex w_minus = std::polar(1.0, -third);
  const Complex w_plus = std::polar(1.0, third);
  ComplexMatrix d = ComplexMatrix::Zero(kJointDim, kJointDim);
  d(0, 0) = 1.0, d(1, 1) = w_minus, d(2, 2) = w_plus;
  d(3, 3) = 1.0, d(4, 4) = w_minus, d(5, 5) = w_plus;
  return d;
}

}  // namespace

KrausSet qubit_phase_kraus(Real gamma_a) {
  require_gamma("gamma_a", gamma_a);
  const Real p1 = std::sqrt(1.0 - gamma_a / 2.0);
  const Real p2 = std::sqrt(gamma_a / 2.0);
  ComplexMatrix sigma_z = ComplexMatrix::Zero(kJointDim, kJointDim);
  for (int i = 0; i < kJointDim; ++i) sigma_z(i, i) = i < 3 ? 1.0 : -1.0;

  KrausSet ks;
  ks.label = ChannelScenario::QubitOnly;
  ks.operators.push_back(p1 * ComplexMatrix::Identity(kJointDim, kJointDim));
  ks.operators.push_back(p2 * sigma_z);
  return ks;
}

KrausSet qutrit_phase_kraus(Real gamma_b) {
  require_gamma("gamma_b", gamma_b);
  const Real r1 = std::sqrt(1.0 - 2.0 * gamma_b / 3.0);
  const Real r2 = std::sqrt(gamma_b / 3.0);
  const ComplexMatrix d = qutrit_phase_diag();

  KrausSet ks;
  ks.label = ChannelScenario::QutritOnly;
  ks.operators.push_back(r1 * ComplexMatrix::Identity(kJointDim, kJointDim));
  ks.operators.push_back(r2 * d);
  ks.operators.push_back((r2 * d).adjoint());
  return ks;
}

KrausSet scenario_kraus(ChannelScenario scenario, Real gamma_a, Real gamma_b) {
  switch (scenario) {
    case ChannelScenario::None: {
      KrausSet ks;
      ks.label = ChannelScenario::None;
      ks.operators.push_back(ComplexMatrix::Identity(kJointDim, kJointDim));
      return ks;
    }
    case ChannelScenario::QubitOnly:
      return qubit_phase_kraus(gamma_a);
    case ChannelScenario::QutritOnly:
      return qutrit_phase_kraus(gamma_b);
    case ChannelScenario::Both: {
      const KrausSet qubit = qubit_phase_kraus(gamma_a);
      const KrausSet qutrit = qutrit_phase_kraus(gamma_b);
      KrausSet ks;
      ks.label = ChannelScenario::Both;
      for (const auto& rj : qutrit.operators) {
        for (const auto& ki : qubit.operators) {
          ks.operators.push_back(rj * ki);
        }
      }
      return ks;
    }
  }
  throw DomainError("unhandled scenario");
}

Real completeness_residual(const KrausSet& ks) {
  ComplexMatrix sum = ComplexMatrix::Zero(kJointDim, kJointDim);
  for (const auto& k : ks.operators) sum += k.adjoint() * k;
  return (sum - ComplexMatrix::Identity(kJointDim, kJointDim)).norm();
}

ComplexMatrix apply_channel(const Eigen::Ref<const ComplexMatrix>& rho,
                            const KrausSet& ks) {
  if (completeness_residual(ks) > 1e-10) {
    throw InvalidChannelError("Kraus set violates the completeness relation");
  }
  ComplexMatrix out = ComplexMatrix::Zero(rho.rows(), rho.cols());
  for (const auto& k : ks.operators) out += k * rho * k.adjoint();
  return out;
}

Real coherence_factor(ChannelScenario scenario, Real gamma_a, Real gamma_b) {
  require_gamma("gamma_a", gamma_a);
  require_gamma("gamma_b", gamma_b);
  // Kept unsimplified; cos(2pi/3) = -1/2 makes eta_b collapse to 1 - gamma_b.
  const Real eta_b =
      1.0 - (2.0 * gamma_b / 3.0) * (1.0 - std::cos(2.0 * std::numbers::pi / 3.0));
  switch (scenario) {
    case ChannelScenario::None: return 1.0;
    case ChannelScenario::QubitOnly: return 1.0 - gamma_a;
    case ChannelScenario::QutritOnly: return eta_b;
    case ChannelScenario::Both: return (1.0 - gamma_a) * eta_b;
  }
  throw DomainError("unhandled scenario");
}

ComplexMatrix build_final_state(const ModelParams& params) {
  validate_params(params);
  ComplexMatrix rho = build_accelerated_state(params.mu, params.r);
  const Real factor =
      coherence_factor(params.scenario, params.gamma_a, params.gamma_b);
  rho(0, 5) *= factor;
  rho(5, 0) *= factor;
  rho(2, 3) *= factor;
  rho(3, 2) *= factor;
  return rho;
}

}  // namespace qfim

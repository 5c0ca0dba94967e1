#include "qfim/states.hpp"

#include <cmath>
#include <sstream>

namespace qfim {

namespace {

void require_state_params(Real mu, Real r) {
  if (!(mu >= 0.0 && mu <= kMuMax)) {
    std::ostringstream msg;
    msg << "mu = " << mu << " outside [0, 1/2]";
    throw OutOfRangeError(msg.str());
  }
  if (!(r >= 0.0 && r <= kRindlerMax)) {
    std::ostringstream msg;
    msg << "r = " << r << " outside [0, pi/4]";
    throw OutOfRangeError(msg.str());
  }
}

}  // namespace

CoefficientSet rho_coefficients(Real mu, Real r) {
  require_state_params(mu, r);
  const Real c = std::cos(r);
  const Real s = std::sin(r);
  const Real c2 = c * c;
  const Real s2 = s * s;
  const Real half_mu = mu / 2.0;
  const Real half_rest = (1.0 - 2.0 * mu) / 2.0;

  CoefficientSet k{};
  k.rho1 = k.rho2 = half_mu * c2;
  k.rho3 = k.rho4 = half_mu * c;
  k.rho5 = k.rho6 = half_rest * c;
  k.rho7 = half_rest * c2;
  k.rho8 = half_rest + half_mu * s2;
  k.rho9 = half_mu + half_rest * s2;
  k.rho10 = half_mu * (1.0 + s2);
  return k;
}

ComplexMatrix build_accelerated_state(Real mu, Real r) {
  const CoefficientSet k = rho_coefficients(mu, r);
  ComplexMatrix rho = ComplexMatrix::Zero(kJointDim, kJointDim);
  rho(0, 0) = k.rho1;
  rho(1, 1) = k.rho2;
  rho(2, 2) = k.rho7;
  rho(3, 3) = k.rho8;
  rho(4, 4) = k.rho10;
  rho(5, 5) = k.rho9;
  rho(0, 5) = k.rho3;
  rho(5, 0) = k.rho4;
  rho(3, 2) = k.rho5;
  rho(2, 3) = k.rho6;
  return rho;
}

ComplexMatrix build_initial_state(Real mu) {
  return build_accelerated_state(mu, 0.0);
}

Real acceleration_to_rindler(Real omega, Real proper_acceleration,
                             Real light_speed) {
  if (!(omega > 0.0)) throw DomainError("omega must be positive");
  if (!(light_speed > 0.0)) throw DomainError("light speed must be positive");
  if (proper_acceleration == 0.0) {
    throw DomainError("proper acceleration must be nonzero");
  }
  const Real exponent = -std::numbers::pi * omega * light_speed /
                        proper_acceleration;
  return std::atan(std::exp(exponent));
}

ComplexMatrix analytic_drho(Real mu, Real r, EstimationTarget wrt,
                            Real coherence_factor) {
  require_state_params(mu, r);
  if (!(coherence_factor >= 0.0 && coherence_factor <= 1.0)) {
    throw OutOfRangeError("coherence factor outside [0, 1]");
  }
  const Real c = std::cos(r);
  const Real s = std::sin(r);
  const Real s2r = std::sin(2.0 * r);
  const Real half_mu = mu / 2.0;
  const Real half_rest = (1.0 - 2.0 * mu) / 2.0;

  // Entrywise derivatives of the coefficient set.
  Real d1, d3, d5, d7, d8, d9, d10;
  if (wrt == EstimationTarget::R) {
    d1 = -half_mu * s2r;      // d(mu/2 cos^2 r)/dr
    d3 = -half_mu * s;        // d(mu/2 cos r)/dr
    d5 = -half_rest * s;
    d7 = -half_rest * s2r;
    d8 = half_mu * s2r;       // d(sin^2 r)/dr = sin 2r
    d9 = half_rest * s2r;
    d10 = half_mu * s2r;
  } else {
    // Every coefficient is affine in mu, so these are mu-independent.
    d1 = c * c / 2.0;
    d3 = c / 2.0;
    d5 = -c;
    d7 = -c * c;
    d8 = -1.0 + s * s / 2.0;
    d9 = 0.5 - s * s;
    d10 = (1.0 + s * s) / 2.0;
  }

  ComplexMatrix drho = ComplexMatrix::Zero(kJointDim, kJointDim);
  drho(0, 0) = d1;
  drho(1, 1) = d1;
  drho(2, 2) = d7;
  drho(3, 3) = d8;
  drho(4, 4) = d10;
  drho(5, 5) = d9;
  drho(0, 5) = coherence_factor * d3;
  drho(5, 0) = coherence_factor * d3;
  drho(3, 2) = coherence_factor * d5;
  drho(2, 3) = coherence_factor * d5;
  return drho;
}

}  // namespace qfim

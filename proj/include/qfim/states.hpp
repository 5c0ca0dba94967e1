#pragma once

#include "qfim/types.hpp"

namespace qfim {

// The ten matrix-element coefficients of the accelerated qubit-qutrit state.
// rho1..rho10 are real; rho1 == rho2, rho3 == rho4, rho5 == rho6 by
// construction, and the six diagonal coefficients sum to 1 exactly in exact
// arithmetic (to ~2 ulp in doubles).
struct CoefficientSet {
  Real rho1, rho2, rho3, rho4, rho5, rho6, rho7, rho8, rho9, rho10;

  Real diagonal_sum() const { return rho1 + rho2 + rho7 + rho8 + rho9 + rho10; }
};

// Coefficients as functions of the state setting mu and the acceleration
// parameter r. Throws OutOfRangeError outside mu in [0, 1/2], r in [0, pi/4].
CoefficientSet rho_coefficients(Real mu, Real r);

// Accelerated state in the basis |00>,|01>,|02>,|10>,|11>,|12>
// (index = 3*qubit + qutrit):
//   diagonal (rho1, rho2, rho7, rho8, rho10, rho9),
//   rho3 at (0,5), rho4 at (5,0), rho5 at (3,2), rho6 at (2,3).
ComplexMatrix build_accelerated_state(Real mu, Real r);

// Shared state before acceleration: the r = 0 limit of the accelerated
// state. Hermitian, unit trace, PSD for mu in [0, 1/2].
ComplexMatrix build_initial_state(Real mu);

// Rindler acceleration parameter from a proper acceleration:
//   r = arctan(exp(-pi * omega * c / a)).
// Throws DomainError for omega <= 0, c <= 0, or a == 0. For a > 0 the result
// lies in (0, pi/4) and increases with a.
Real acceleration_to_rindler(Real omega, Real proper_acceleration,
                             Real light_speed);

// Entrywise partial derivative of the noisy final state with respect to the
// estimation target. The phase channels only rescale the coherences by a
// parameter-independent factor, so differentiation commutes with the channel
// and the factor enters as a plain multiplier on the off-diagonal entries.
// Hermitian and traceless by construction.
ComplexMatrix analytic_drho(Real mu, Real r, EstimationTarget wrt,
                            Real coherence_factor);

}  // namespace qfim

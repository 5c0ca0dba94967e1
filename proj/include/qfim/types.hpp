#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qfim {

using Real = double;
using Complex = std::complex<Real>;

// Dense dynamic-size matrices. Everything in this model lives in the joint
// qubit-qutrit space (dimension 6), but the kernels stay size-generic.
template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using ComplexMatrix = DenseMatrix<Complex>;
using RealMatrix = DenseMatrix<Real>;
using RealVector = DenseVector<Real>;

inline constexpr int kJointDim = 6;  // 2 (qubit) x 3 (qutrit)
inline constexpr Real kMuMax = 0.5;
inline constexpr Real kRindlerMax = std::numbers::pi / 4.0;

// Default numeric thresholds (see the module headers for where each applies).
inline constexpr Real kHermitianTol = 1e-12;
inline constexpr Real kEigenvalueCutoff = 1e-12;
inline constexpr Real kDegeneracyDelta = 1e-10;
inline constexpr Real kFdStep = 1e-5;

//------------------------------------------------------------------------
// Errors
//------------------------------------------------------------------------

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OutOfRangeError : Error { using Error::Error; };
struct DimensionMismatchError : Error { using Error::Error; };
struct NotHermitianError : Error { using Error::Error; };
struct NoConvergenceError : Error { using Error::Error; };
struct InvalidChannelError : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct DegeneracyUnresolvedError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };
struct NotTwoDimensionalError : Error { using Error::Error; };
struct SweepDegradedError : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

//------------------------------------------------------------------------
// Model configuration
//------------------------------------------------------------------------

enum class EstimationTarget { R, Mu };

enum class ChannelScenario { None, QubitOnly, QutritOnly, Both };

std::string to_string(EstimationTarget target);
std::string to_string(ChannelScenario scenario);
EstimationTarget parse_target(const std::string& name);      // "r" | "mu"
ChannelScenario parse_scenario(const std::string& name);     // none|qubit|qutrit|both

// Full experiment configuration: state setting mu, Rindler acceleration
// parameter r, the two channel strengths, and which particles pass through
// the phase channel. coupled_gamma pins gamma_a == gamma_b (the single
// shared-strength convention).
struct ModelParams {
  Real mu = 0.0;
  Real r = 0.0;
  Real gamma_a = 0.0;
  Real gamma_b = 0.0;
  ChannelScenario scenario = ChannelScenario::None;
  bool coupled_gamma = false;
};

// Throws OutOfRangeError unless mu in [0, 1/2], r in [0, pi/4], gammas in
// [0, 1], and gamma_a == gamma_b when coupled_gamma is set.
void validate_params(const ModelParams& params);

}  // namespace qfim

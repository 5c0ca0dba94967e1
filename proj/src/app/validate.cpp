#include "app/validate.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>
#include <sstream>

#include "qfim/channels.hpp"
#include "qfim/qfi.hpp"
#include "qfim/states.hpp"

namespace qfim::app {

namespace {

constexpr ChannelScenario kScenarios[] = {
    ChannelScenario::None, ChannelScenario::QubitOnly,
    ChannelScenario::QutritOnly, ChannelScenario::Both};

struct Draw {
  ModelParams params;
  EstimationTarget wrt;
};

class ParamSampler {
 public:
  explicit ParamSampler(std::uint64_t seed) : rng_(seed) {}

  Draw next() {
    Draw d;
    d.params.mu = uniform(0.0, kMuMax);
    d.params.r = uniform(0.0, kRindlerMax);
    d.params.gamma_a = uniform(0.0, 1.0);
    d.params.gamma_b = uniform(0.0, 1.0);
    d.params.scenario = kScenarios[rng_() % 4];
    d.wrt = rng_() % 2 == 0 ? EstimationTarget::R : EstimationTarget::Mu;
    return d;
  }

  Real uniform(Real lo, Real hi) {
    return std::uniform_real_distribution<Real>(lo, hi)(rng_);
  }

 private:
  std::mt19937_64 rng_;
};

// Deliberately mis-normalized qutrit family (R2 = 2 gamma/3 instead of
// sqrt(gamma/3)); violates trace preservation and must be rejected by the
// completeness check.
KrausSet misnormalized_qutrit_kraus(Real gamma_b) {
  KrausSet ks = qutrit_phase_kraus(gamma_b);
  const Real r2_bad = 2.0 * gamma_b / 3.0;
  const Real r2_good = std::sqrt(gamma_b / 3.0);
  ks.operators[1] *= r2_bad / r2_good;
  ks.operators[2] *= r2_bad / r2_good;
  return ks;
}

SuiteResult cptp_suite() {
  SuiteResult suite{"cptp_completeness", true, ""};
  Real worst = 0.0;
  for (int i = 0; i <= 10; ++i) {
    const Real gamma = i / 10.0;
    worst = std::max(worst, completeness_residual(qubit_phase_kraus(gamma)));
    worst = std::max(worst, completeness_residual(qutrit_phase_kraus(gamma)));
  }
  if (worst > 1e-12) suite.passed = false;

  // Mutation guard: the mis-normalized family has to fail the check.
  bool mutation_caught = true;
  for (int i = 1; i <= 10; ++i) {
    const Real gamma = i / 10.0;
    if (completeness_residual(misnormalized_qutrit_kraus(gamma)) <= 1e-12) {
      mutation_caught = false;
    }
  }
  if (!mutation_caught) suite.passed = false;

  std::ostringstream detail;
  detail << "residual<=" << worst
         << (mutation_caught ? ", mutation rejected" : ", MUTATION ACCEPTED");
  suite.detail = detail.str();
  return suite;
}

SuiteResult state_validity_suite(ParamSampler& sampler, int samples) {
  SuiteResult suite{"state_validity", true, ""};
  Real worst_herm = 0.0, worst_trace = 0.0, worst_eig = 0.0, worst_sum = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Draw d = sampler.next();
    const ComplexMatrix rho = build_final_state(d.params);
    const DensityReport report = validate_density(rho, 1e-12, 1e-10);
    if (!report.ok()) suite.passed = false;
    worst_herm = std::max(worst_herm, report.herm_residual);
    worst_trace = std::max(worst_trace, report.trace_residual);
    worst_eig = std::min(worst_eig, report.min_eigenvalue);
    const CoefficientSet k = rho_coefficients(d.params.mu, d.params.r);
    worst_sum = std::max(worst_sum, std::abs(k.diagonal_sum() - 1.0));
  }
  if (worst_sum > 1e-15) suite.passed = false;
  std::ostringstream detail;
  detail << "herm<=" << worst_herm << " trace<=" << worst_trace
         << " mineig>=" << worst_eig << " coeffsum<=" << worst_sum;
  suite.detail = detail.str();
  return suite;
}

SuiteResult channel_equivalence_suite(ParamSampler& sampler, int samples) {
  SuiteResult suite{"channel_equivalence", true, ""};
  Real worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Draw d = sampler.next();
    const ComplexMatrix closed = build_final_state(d.params);
    ComplexMatrix explicit_form =
        build_accelerated_state(d.params.mu, d.params.r);
    if (d.params.scenario == ChannelScenario::QubitOnly ||
        d.params.scenario == ChannelScenario::Both) {
      explicit_form =
          apply_channel(explicit_form, qubit_phase_kraus(d.params.gamma_a));
    }
    if (d.params.scenario == ChannelScenario::QutritOnly ||
        d.params.scenario == ChannelScenario::Both) {
      explicit_form =
          apply_channel(explicit_form, qutrit_phase_kraus(d.params.gamma_b));
    }
    worst = std::max(worst, frobenius_distance(closed, explicit_form));
  }
  if (worst > 1e-12) suite.passed = false;
  std::ostringstream detail;
  detail << "frobenius<=" << worst;
  suite.detail = detail.str();
  return suite;
}

SuiteResult qfi_equivalence_suite(ParamSampler& sampler, int samples) {
  SuiteResult suite{"qfi_equivalence", true, ""};
  Real worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Draw d = sampler.next();
    const ComplexMatrix rho = build_final_state(d.params);
    const ComplexMatrix drho = analytic_drho(
        d.params.mu, d.params.r, d.wrt,
        coherence_factor(d.params.scenario, d.params.gamma_a, d.params.gamma_b));
    const Real sld = qfi_sld(rho, drho);
    const QfiResult three = qfi_three_term(rho, drho);
    const Real rel = std::abs(three.total - sld) / std::max(1.0, sld);
    worst = std::max(worst, rel);
    if (three.total < -1e-10 || sld < -1e-10) suite.passed = false;
  }
  if (worst > 1e-6) suite.passed = false;
  std::ostringstream detail;
  detail << "rel_diff<=" << worst;
  suite.detail = detail.str();
  return suite;
}

SuiteResult derivative_suite(ParamSampler& sampler, int samples) {
  SuiteResult suite{"derivative_agreement", true, ""};
  Real worst_rel = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Draw d = sampler.next();
    const QfiResult analytic =
        qfi_for_params(d.params, d.wrt, DerivativeProvider::Analytic);
    const QfiResult fd =
        qfi_for_params(d.params, d.wrt, DerivativeProvider::FiniteDifference);
    worst_rel = std::max(worst_rel, std::abs(analytic.total - fd.total) /
                                        std::max(1.0, analytic.total));
  }
  if (worst_rel > 1e-6) suite.passed = false;

  // Second-order stencil convergence, checked in r where the h^2 error term
  // has a nonvanishing coefficient (the state is affine in mu, so the mu
  // stencil is exact to round-off).
  Real ratio_lo = 1e30, ratio_hi = 0.0;
  const int convergence_draws = std::min(samples, 100);
  for (int s = 0; s < convergence_draws; ++s) {
    Draw d = sampler.next();
    d.params.mu = sampler.uniform(0.1, 0.45);
    d.params.r = sampler.uniform(0.1, 0.7);
    const ComplexMatrix exact = analytic_drho(
        d.params.mu, d.params.r, EstimationTarget::R,
        coherence_factor(d.params.scenario, d.params.gamma_a, d.params.gamma_b));
    const Real e1 =
        (finite_diff_drho(d.params, EstimationTarget::R, 1e-4) - exact).norm();
    const Real e2 =
        (finite_diff_drho(d.params, EstimationTarget::R, 5e-5) - exact).norm();
    const Real ratio = e1 / e2;
    ratio_lo = std::min(ratio_lo, ratio);
    ratio_hi = std::max(ratio_hi, ratio);
    if (ratio < 3.2 || ratio > 4.8) suite.passed = false;
  }
  std::ostringstream detail;
  detail << "qfi_rel<=" << worst_rel << " ratio in [" << ratio_lo << ", "
         << ratio_hi << "]";
  suite.detail = detail.str();
  return suite;
}

SuiteResult monotonicity_suite(ParamSampler& sampler, int samples) {
  SuiteResult suite{"noise_monotonicity", true, ""};
  Real worst_excess = -1e30;
  const int draws = std::min(samples, 500);
  for (int s = 0; s < draws; ++s) {
    Draw d = sampler.next();
    ModelParams clean = d.params;
    clean.scenario = ChannelScenario::None;
    const Real reference = qfi_for_params(clean, d.wrt).total;
    for (ChannelScenario scenario :
         {ChannelScenario::QubitOnly, ChannelScenario::QutritOnly,
          ChannelScenario::Both}) {
      ModelParams noisy = d.params;
      noisy.scenario = scenario;
      const Real excess = qfi_for_params(noisy, d.wrt).total - reference;
      worst_excess = std::max(worst_excess, excess);
      if (excess > 1e-8) suite.passed = false;
    }
  }
  std::ostringstream detail;
  detail << "max(F_noisy - F_clean)=" << worst_excess;
  suite.detail = detail.str();
  return suite;
}

SuiteResult zero_at_origin_suite() {
  SuiteResult suite{"zero_at_r0", true, ""};
  Real worst = 0.0;
  for (int im = 0; im < 10; ++im) {
    for (int ig = 0; ig < 10; ++ig) {
      for (ChannelScenario scenario : kScenarios) {
        ModelParams params;
        params.mu = kMuMax * im / 9.0;
        params.r = 0.0;
        params.gamma_a = params.gamma_b = ig / 9.0;
        params.coupled_gamma = true;
        params.scenario = scenario;
        worst = std::max(worst,
                         std::abs(qfi_for_params(params, EstimationTarget::R).total));
      }
    }
  }
  if (worst > 1e-10) suite.passed = false;
  std::ostringstream detail;
  detail << "max|F_r(r=0)|=" << worst;
  suite.detail = detail.str();
  return suite;
}

}  // namespace

ValidationReport run_validation(std::uint64_t seed, int samples,
                                std::ostream& log) {
  if (samples < 1) samples = 1;
  ValidationReport report;
  ParamSampler sampler(seed);

  report.suites.push_back(cptp_suite());
  report.suites.push_back(state_validity_suite(sampler, samples));
  report.suites.push_back(channel_equivalence_suite(sampler, samples));
  report.suites.push_back(qfi_equivalence_suite(sampler, samples));
  report.suites.push_back(derivative_suite(sampler, samples));
  report.suites.push_back(monotonicity_suite(sampler, samples));
  report.suites.push_back(zero_at_origin_suite());

  int passed = 0;
  for (const auto& suite : report.suites) {
    log << (suite.passed ? "PASS  " : "FAIL  ") << suite.name << "  ("
        << suite.detail << ")\n";
    if (suite.passed) ++passed;
  }
  log << passed << "/" << report.suites.size() << " suites passed\n";
  return report;
}

}  // namespace qfim::app

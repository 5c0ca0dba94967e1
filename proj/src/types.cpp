#include "qfim/types.hpp"

#include <sstream>

namespace qfim {

std::string to_string(EstimationTarget target) {
  return target == EstimationTarget::R ? "r" : "mu";
}

std::string to_string(ChannelScenario scenario) {
  switch (scenario) {
    case ChannelScenario::None: return "none";
    case ChannelScenario::QubitOnly: return "qubit";
    case ChannelScenario::QutritOnly: return "qutrit";
    case ChannelScenario::Both: return "both";
  }
  return "none";
}

EstimationTarget parse_target(const std::string& name) {
  if (name == "r") return EstimationTarget::R;
  if (name == "mu") return EstimationTarget::Mu;
  throw ConfigError("unknown estimation target '" + name + "' (expected r|mu)");
}

ChannelScenario parse_scenario(const std::string& name) {
  if (name == "none") return ChannelScenario::None;
  if (name == "qubit") return ChannelScenario::QubitOnly;
  if (name == "qutrit") return ChannelScenario::QutritOnly;
  if (name == "both") return ChannelScenario::Both;
  throw ConfigError("unknown scenario '" + name +
                    "' (expected none|qubit|qutrit|both)");
}

namespace {

void require_range(const char* name, Real value, Real lo, Real hi) {
  if (!(value >= lo && value <= hi)) {
    std::ostringstream msg;
    msg << name << " = " << value << " outside [" << lo << ", " << hi << "]";
    throw OutOfRangeError(msg.str());
  }
}

}  // namespace

void validate_params(const ModelParams& params) {
  require_range("mu", params.mu, 0.0, kMuMax);
  require_range("r", params.r, 0.0, kRindlerMax);
  require_range("gamma_a", params.gamma_a, 0.0, 1.0);
  require_range("gamma_b", params.gamma_b, 0.0, 1.0);
  if (params.coupled_gamma && params.gamma_a != params.gamma_b) {
    throw OutOfRangeError("coupled_gamma requires gamma_a == gamma_b");
  }
}

}  // namespace qfim

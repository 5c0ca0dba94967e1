#include "app/config.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qfim/qfi.hpp"

namespace qfim::app {

namespace {

using nlohmann::json;

Real number_field(const json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError("key '" + key + "' must be a number");
  return v.get<Real>();
}

int int_field(const json& v, const std::string& key) {
  if (!v.is_number_integer()) {
    throw ConfigError("key '" + key + "' must be an integer");
  }
  return v.get<int>();
}

bool bool_field(const json& v, const std::string& key) {
  if (!v.is_boolean()) throw ConfigError("key '" + key + "' must be a boolean");
  return v.get<bool>();
}

std::string string_field(const json& v, const std::string& key) {
  if (!v.is_string()) throw ConfigError("key '" + key + "' must be a string");
  return v.get<std::string>();
}

}  // namespace

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config file must hold a JSON object");

  RunConfig cfg;
  for (const auto& [key, value] : doc.items()) {
    if (key == "mu") cfg.mu = number_field(value, key);
    else if (key == "r") {
      if (value.is_string()) {
        cfg.r = value.get<std::string>();
      } else {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", number_field(value, key));
        cfg.r = buf;
      }
    }
    else if (key == "gamma_a") cfg.gamma_a = number_field(value, key);
    else if (key == "gamma_b") cfg.gamma_b = number_field(value, key);
    else if (key == "gamma") cfg.gamma = number_field(value, key);
    else if (key == "scenario") cfg.scenario = string_field(value, key);
    else if (key == "wrt") cfg.wrt = string_field(value, key);
    else if (key == "provider") cfg.provider = string_field(value, key);
    else if (key == "axis1") cfg.axis1 = string_field(value, key);
    else if (key == "axis2") cfg.axis2 = string_field(value, key);
    else if (key == "out") cfg.out = string_field(value, key);
    else if (key == "heatmap") cfg.heatmap = bool_field(value, key);
    else if (key == "components") cfg.components = bool_field(value, key);
    else if (key == "regions") cfg.regions = bool_field(value, key);
    else if (key == "vmax") cfg.vmax = number_field(value, key);
    else if (key == "tau") cfg.tau = number_field(value, key);
    else if (key == "min_cells") cfg.min_cells = int_field(value, key);
    else if (key == "eig_cutoff") cfg.eig_cutoff = number_field(value, key);
    else if (key == "degeneracy_delta") cfg.degeneracy_delta = number_field(value, key);
    else if (key == "fd_step") cfg.fd_step = number_field(value, key);
    else if (key == "json") cfg.json = bool_field(value, key);
    else if (key == "samples") cfg.samples = int_field(value, key);
    else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(int_field(value, key));
    else if (key == "id") cfg.figure_id = string_field(value, key);
    else throw ConfigError("unknown config key '" + key + "'");
  }
  return cfg;
}

RunConfig merge(const RunConfig& file, const RunConfig& flags) {
  RunConfig out = file;
  auto pick = [](auto& dst, const auto& src) {
    if (src.has_value()) dst = src;
  };
  pick(out.mu, flags.mu);
  pick(out.r, flags.r);
  pick(out.gamma_a, flags.gamma_a);
  pick(out.gamma_b, flags.gamma_b);
  pick(out.gamma, flags.gamma);
  pick(out.scenario, flags.scenario);
  pick(out.wrt, flags.wrt);
  pick(out.provider, flags.provider);
  pick(out.axis1, flags.axis1);
  pick(out.axis2, flags.axis2);
  pick(out.out, flags.out);
  pick(out.heatmap, flags.heatmap);
  pick(out.components, flags.components);
  pick(out.regions, flags.regions);
  pick(out.vmax, flags.vmax);
  pick(out.tau, flags.tau);
  pick(out.min_cells, flags.min_cells);
  pick(out.eig_cutoff, flags.eig_cutoff);
  pick(out.degeneracy_delta, flags.degeneracy_delta);
  pick(out.fd_step, flags.fd_step);
  pick(out.json, flags.json);
  pick(out.samples, flags.samples);
  pick(out.seed, flags.seed);
  pick(out.figure_id, flags.figure_id);
  return out;
}

Real parse_r_value(const std::string& text) {
  if (text == "pi/4") return kRindlerMax;
  std::istringstream in(text);
  Real v = 0.0;
  in >> v;
  if (!in || !in.eof()) {
    throw ConfigError("cannot parse r value '" + text + "' (number or pi/4)");
  }
  return v;
}

AxisSpec parse_axis(const std::string& text) {
  std::istringstream in(text);
  std::string name, min_s, max_s, count_s;
  if (!std::getline(in, name, ':') || !std::getline(in, min_s, ':') ||
      !std::getline(in, max_s, ':') || !std::getline(in, count_s)) {
    throw ConfigError("axis spec '" + text + "' is not name:min:max:count");
  }
  AxisSpec axis;
  axis.name = name;
  axis.min = parse_r_value(min_s);
  axis.max = parse_r_value(max_s);
  try {
    size_t pos = 0;
    axis.count = std::stoi(count_s, &pos);
    if (pos != count_s.size()) throw std::invalid_argument(count_s);
  } catch (const std::exception&) {
    throw ConfigError("axis count '" + count_s + "' is not an integer");
  }
  return axis;
}

ModelParams make_params(const RunConfig& cfg) {
  if (cfg.gamma && (cfg.gamma_a || cfg.gamma_b)) {
    throw ConfigError("--gamma conflicts with --gamma-a/--gamma-b");
  }
  ModelParams params;
  params.mu = cfg.mu.value_or(kDefaultMu);
  params.r = cfg.r ? parse_r_value(*cfg.r) : kDefaultR;
  if (cfg.gamma) {
    params.gamma_a = params.gamma_b = *cfg.gamma;
    params.coupled_gamma = true;
  } else {
    params.gamma_a = cfg.gamma_a.value_or(0.0);
    params.gamma_b = cfg.gamma_b.value_or(0.0);
  }
  params.scenario = parse_scenario(cfg.scenario.value_or("none"));
  return params;
}

GridSpec make_grid(const RunConfig& cfg) {
  if (!cfg.axis1) throw ConfigError("sweep needs --axis1 name:min:max:count");
  GridSpec spec;
  spec.axis1 = parse_axis(*cfg.axis1);
  if (cfg.axis2) spec.axis2 = parse_axis(*cfg.axis2);
  spec.base = make_params(cfg);
  spec.wrt = parse_target(cfg.wrt.value_or("r"));
  spec.provider = parse_provider(cfg.provider.value_or("analytic"));
  spec.degeneracy_delta = cfg.degeneracy_delta.value_or(kDegeneracyDelta);
  spec.eig_cutoff = cfg.eig_cutoff.value_or(kEigenvalueCutoff);
  spec.fd_step = cfg.fd_step.value_or(kFdStep);
  return spec;
}

int threads_from_env() {
  const char* raw = std::getenv("QFI_THREADS");
  if (raw == nullptr || *raw == '\0') return 0;
  char* end = nullptr;
  const long v = std::strtol(raw, &end, 10);
  if (end == nullptr || *end != '\0' || v < 1) {
    throw ConfigError("QFI_THREADS must be a positive integer");
  }
  return static_cast<int>(v);
}

}  // namespace qfim::app

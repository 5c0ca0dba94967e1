#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "qfim/sweep.hpp"
#include "qfim/types.hpp"

namespace qfim::app {

// Run configuration shared by the CLI subcommands. Every field is optional;
// command-line flags override config-file values and documented defaults
// fill the rest. File parsing is strict: unknown keys are an error.
struct RunConfig {
  std::optional<Real> mu;
  std::optional<std::string> r;  // number or the literal "pi/4"
  std::optional<Real> gamma_a;
  std::optional<Real> gamma_b;
  std::optional<Real> gamma;  // sets both strengths (coupled)
  std::optional<std::string> scenario;
  std::optional<std::string> wrt;
  std::optional<std::string> provider;

  std::optional<std::string> axis1;  // "name:min:max:count"
  std::optional<std::string> axis2;
  std::optional<std::string> out;
  std::optional<bool> heatmap;
  std::optional<bool> components;
  std::optional<bool> regions;
  std::optional<Real> vmax;

  std::optional<Real> tau;
  std::optional<int> min_cells;
  std::optional<Real> eig_cutoff;
  std::optional<Real> degeneracy_delta;
  std::optional<Real> fd_step;

  std::optional<bool> json;
  std::optional<int> samples;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> figure_id;
};

// Documented defaults (see --help and README).
inline constexpr Real kDefaultMu = 0.2;
inline constexpr Real kDefaultR = 0.1;
inline constexpr Real kDefaultTau = 0.05;
inline constexpr int kDefaultMinCells = 16;
inline constexpr int kDefaultSamples = 1000;
inline constexpr std::uint64_t kDefaultSeed = 20260809ull;

// Strict JSON loader; throws ConfigError on malformed JSON, unknown keys or
// wrong value types.
RunConfig load_config_file(const std::string& path);

// Field-by-field merge; values present in `flags` win.
RunConfig merge(const RunConfig& file, const RunConfig& flags);

// Accepts a plain number or the literal "pi/4".
Real parse_r_value(const std::string& text);

// Parses "name:min:max:count" (min/max accept "pi/4").
AxisSpec parse_axis(const std::string& text);

// Assembled single-point parameters with defaults applied.
ModelParams make_params(const RunConfig& cfg);

// Assembled grid (axis1 required); fixed parameters come from make_params.
GridSpec make_grid(const RunConfig& cfg);

// Sweep parallelism cap from QFI_THREADS (positive integer); 0 = unset.
int threads_from_env();

}  // namespace qfim::app

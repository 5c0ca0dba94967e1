#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "app/config.hpp"
#include "app/figures.hpp"
#include "app/validate.hpp"
#include "qfim/channels.hpp"
#include "qfim/qfi.hpp"
#include "qfim/sweep.hpp"

namespace {

using namespace qfim;
using namespace qfim::app;

constexpr const char* kConfigSchema =
    "Config file: strict JSON object; unknown keys are an error. Keys:\n"
    "  mu, gamma_a, gamma_b, gamma, tau, vmax, eig_cutoff, degeneracy_delta,\n"
    "  fd_step (numbers); r (number or \"pi/4\"); min_cells, samples, seed\n"
    "  (integers); heatmap, components, regions, json (booleans); scenario\n"
    "  (none|qubit|qutrit|both), wrt (r|mu), provider (analytic|fd), axis1,\n"
    "  axis2 (\"name:min:max:count\"), out, id (strings).\n"
    "Flags override file values. QFI_THREADS caps sweep parallelism.";

std::string format_double(Real v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void echo_params(const ModelParams& params, EstimationTarget wrt,
                 DerivativeProvider provider) {
  std::cerr << "mu=" << params.mu << " r=" << params.r
            << " gamma_a=" << params.gamma_a << " gamma_b=" << params.gamma_b
            << " scenario=" << to_string(params.scenario)
            << " wrt=" << to_string(wrt)
            << " provider=" << to_string(provider) << "\n";
}

int run_qfi(const RunConfig& cfg) {
  const ModelParams params = make_params(cfg);
  const EstimationTarget wrt = parse_target(cfg.wrt.value_or("r"));
  const DerivativeProvider provider =
      parse_provider(cfg.provider.value_or("analytic"));
  echo_params(params, wrt, provider);

  const QfiResult q = qfi_for_params(
      params, wrt, provider, cfg.degeneracy_delta.value_or(kDegeneracyDelta),
      cfg.eig_cutoff.value_or(kEigenvalueCutoff), cfg.fd_step.value_or(kFdStep));

  if (cfg.json.value_or(false)) {
    std::cout << "{\"f_total\":" << format_double(q.total)
              << ",\"f_cl\":" << format_double(q.f_cl)
              << ",\"f_qu\":" << format_double(q.f_qu)
              << ",\"f_mix\":" << format_double(q.f_mix)
              << ",\"residual_vs_sld\":" << format_double(q.residual_vs_sld)
              << "}\n";
  } else {
    std::cout << "f_total = " << format_double(q.total) << "\n"
              << "f_cl = " << format_double(q.f_cl) << "\n"
              << "f_qu = " << format_double(q.f_qu) << "\n"
              << "f_mix = " << format_double(q.f_mix) << "\n"
              << "residual_vs_sld = " << format_double(q.residual_vs_sld)
              << "\n";
    if (q.used_fallback) {
      std::cerr << "note: three-term decomposition degraded; total taken from "
                   "the SLD formula\n";
    }
  }
  return 0;
}

void write_regions_csv(const SweepResult& res, Real tau, int min_cells,
                       const std::string& path) {
  const auto regions = detect_frozen_regions(res, tau, min_cells);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "'");
  out << "i0,i1,j0,j1,axis1_min,axis1_max,axis2_min,axis2_max,mean_f,flatness\n";
  for (const auto& region : regions) {
    out << region.i0 << ',' << region.i1 << ',' << region.j0 << ','
        << region.j1 << ',' << format_double(res.spec.axis1.value(region.i0))
        << ',' << format_double(res.spec.axis1.value(region.i1)) << ',';
    if (res.spec.axis2) {
      out << format_double(res.spec.axis2->value(region.j0)) << ','
          << format_double(res.spec.axis2->value(region.j1));
    } else {
      out << ',';
    }
    out << ',' << format_double(region.mean_f) << ','
        << format_double(region.flatness) << "\n";
  }
  if (!out.good()) throw IoError("write failed for '" + path + "'");
}

int run_sweep_cmd(const RunConfig& cfg) {
  if (!cfg.out) throw ConfigError("sweep needs --out <prefix>");
  const GridSpec spec = make_grid(cfg);
  const int threads = threads_from_env();

  const auto start = std::chrono::steady_clock::now();
  const SweepResult res = run_sweep(spec, threads);
  const auto wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - start)
                           .count();

  const std::string csv_path = *cfg.out + ".csv";
  {
    std::ofstream out(csv_path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + csv_path + "'");
    export_csv(res, out);
  }
  std::cerr << "wrote " << csv_path << "\n";

  if (cfg.heatmap.value_or(false)) {
    const HeatmapScale scale = cfg.vmax ? HeatmapScale::fixed(*cfg.vmax)
                                        : HeatmapScale::global_max();
    const std::string pgm_path = *cfg.out + ".pgm";
    std::ofstream out(pgm_path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + pgm_path + "'");
    export_heatmap(res, out, scale);
    std::cerr << "wrote " << pgm_path << "\n";
    if (cfg.components.value_or(false)) {
      const struct {
        const char* suffix;
        const RealMatrix& field;
      } components[] = {{"_fcl", res.f_cl}, {"_fqu", res.f_qu},
                        {"_fmix", res.f_mix}};
      for (const auto& component : components) {
        const std::string path = *cfg.out + component.suffix + ".pgm";
        std::ofstream comp_out(path, std::ios::binary);
        if (!comp_out) throw IoError("cannot open '" + path + "'");
        export_component_heatmap(res, component.field, comp_out, scale);
        std::cerr << "wrote " << path << "\n";
      }
    }
  }

  if (cfg.regions.value_or(false)) {
    write_regions_csv(res, cfg.tau.value_or(kDefaultTau),
                      cfg.min_cells.value_or(kDefaultMinCells),
                      *cfg.out + "_regions.csv");
    std::cerr << "wrote " << *cfg.out << "_regions.csv\n";
  }

  const long cells = static_cast<long>(res.rows()) * res.cols();
  for (size_t k = 0; k < res.failures.size() && k < 3; ++k) {
    const CellIssue& issue = res.failures[k];
    std::cerr << "cell (" << issue.i << ", " << issue.j << ") "
              << (issue.fallback ? "degraded: " : "failed: ") << issue.message
              << "\n";
  }
  std::cout << "cells=" << cells << " failures=" << res.failures.size()
            << " wall_ms=" << wall_ms << "\n";
  return 0;
}

int run_figure(const RunConfig& cfg) {
  if (!cfg.figure_id) throw ConfigError("figure needs --id");
  if (!cfg.out) throw ConfigError("figure needs --out <prefix>");
  const FigurePreset* preset = find_figure_preset(*cfg.figure_id);
  if (preset == nullptr) {
    throw ConfigError("unknown figure id '" + *cfg.figure_id + "'");
  }
  const auto written =
      write_figure_outputs(*preset, *cfg.out, threads_from_env(), std::cerr);
  for (const auto& path : written) std::cerr << "wrote " << path << "\n";
  return 0;
}

int run_validate(const RunConfig& cfg) {
  const ValidationReport report =
      run_validation(cfg.seed.value_or(kDefaultSeed),
                     cfg.samples.value_or(kDefaultSamples), std::cout);
  return report.all_passed() ? 0 : 1;
}

void add_point_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--mu", cfg.mu, "state setting, in [0, 1/2]");
  cmd->add_option("--r", cfg.r, "acceleration parameter, in [0, pi/4]; accepts pi/4");
  cmd->add_option("--gamma-a", cfg.gamma_a, "qubit channel strength, in [0, 1]");
  cmd->add_option("--gamma-b", cfg.gamma_b, "qutrit channel strength, in [0, 1]");
  cmd->add_option("--gamma", cfg.gamma, "coupled strength: sets gamma_a = gamma_b");
  cmd->add_option("--scenario", cfg.scenario, "none|qubit|qutrit|both");
  cmd->add_option("--wrt", cfg.wrt, "estimation target: r|mu");
  cmd->add_option("--provider", cfg.provider, "derivative provider: analytic|fd");
}

void add_threshold_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--eig-cutoff", cfg.eig_cutoff,
                  "eigenvalues below this count as zero [1e-12]");
  cmd->add_option("--degeneracy-delta", cfg.degeneracy_delta,
                  "eigenvalue clustering width [1e-10]");
  cmd->add_option("--fd-step", cfg.fd_step, "finite-difference step [1e-5]");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "qfim: quantum Fisher information of an accelerated qubit-qutrit "
      "state under phase noise"};
  app.footer(kConfigSchema);
  app.require_subcommand(1);

  RunConfig flags;
  std::string config_path;

  CLI::App* qfi_cmd = app.add_subcommand(
      "qfi", "QFI at a single parameter point (JSON with --json)");
  qfi_cmd->add_option("--config", config_path, "strict JSON config file");
  add_point_flags(qfi_cmd, flags);
  add_threshold_flags(qfi_cmd, flags);
  bool json_flag = false;
  qfi_cmd->add_flag("--json", json_flag, "one-line JSON record on stdout");

  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "grid sweep; writes <prefix>.csv (+ .pgm with --heatmap)");
  sweep_cmd->add_option("--config", config_path, "strict JSON config file");
  add_point_flags(sweep_cmd, flags);
  add_threshold_flags(sweep_cmd, flags);
  sweep_cmd->add_option("--axis1", flags.axis1,
                        "swept axis, name:min:max:count (mu|r|gamma_a|gamma_b|gamma)");
  sweep_cmd->add_option("--axis2", flags.axis2, "optional second axis");
  sweep_cmd->add_option("--out", flags.out, "output path prefix");
  bool heatmap_flag = false, components_flag = false, regions_flag = false;
  sweep_cmd->add_flag("--heatmap", heatmap_flag, "also write a P2 PGM (2-D only)");
  sweep_cmd->add_flag("--components", components_flag,
                      "also write f_cl/f_qu/f_mix component PGMs");
  sweep_cmd->add_flag("--regions", regions_flag,
                      "also write detected frozen regions to <prefix>_regions.csv");
  sweep_cmd->add_option("--vmax", flags.vmax, "fixed heatmap scale (default: global max)");
  sweep_cmd->add_option("--tau", flags.tau, "frozen-region flatness threshold [0.05]");
  sweep_cmd->add_option("--min-cells", flags.min_cells,
                        "minimum frozen-region area in cells [16]");

  CLI::App* figure_cmd = app.add_subcommand(
      "figure", "figure-reproduction presets (ids: 2a 2b 3 4a 4b 5a 5b 6 7a 7b "
                "8a 8b 9a 9b)");
  figure_cmd->add_option("--config", config_path, "strict JSON config file");
  figure_cmd->add_option("--id", flags.figure_id, "figure id");
  figure_cmd->add_option("--out", flags.out, "output path prefix");

  CLI::App* validate_cmd = app.add_subcommand(
      "validate", "run the randomized invariant suites; exit 0 iff all pass");
  validate_cmd->add_option("--config", config_path, "strict JSON config file");
  validate_cmd->add_option("--seed", flags.seed, "RNG seed [20260809]");
  validate_cmd->add_option("--samples", flags.samples, "draws per suite [1000]");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (json_flag) flags.json = true;
    if (heatmap_flag) flags.heatmap = true;
    if (components_flag) flags.components = true;
    if (regions_flag) flags.regions = true;

    RunConfig cfg = flags;
    if (!config_path.empty()) {
      cfg = merge(load_config_file(config_path), flags);
    }

    if (qfi_cmd->parsed()) return run_qfi(cfg);
    if (sweep_cmd->parsed()) return run_sweep_cmd(cfg);
    if (figure_cmd->parsed()) return run_figure(cfg);
    return run_validate(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NotTwoDimensionalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const OutOfRangeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const SweepDegradedError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

#include "app/figures.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

namespace qfim::app {

namespace {

constexpr int kFigureGridPoints = 201;

GridSpec heatmap_grid(ChannelScenario scenario, EstimationTarget wrt, Real r) {
  GridSpec spec;
  spec.axis1 = {"mu", 0.0, kMuMax, kFigureGridPoints};
  spec.axis2 = AxisSpec{"gamma", 0.0, 1.0, kFigureGridPoints};
  spec.base.r = r;
  spec.base.scenario = scenario;
  spec.wrt = wrt;
  return spec;
}

GridSpec curve_grid(ChannelScenario scenario, EstimationTarget wrt, Real gamma) {
  GridSpec spec;
  spec.axis1 = {"r", 0.0, kRindlerMax, kFigureGridPoints};
  spec.base.gamma_a = spec.base.gamma_b = gamma;
  spec.base.coupled_gamma = true;
  spec.base.scenario = scenario;
  spec.wrt = wrt;
  return spec;
}

FigurePreset heatmap(std::string id, std::string note, ChannelScenario scenario,
                     EstimationTarget wrt, Real r) {
  FigurePreset preset;
  preset.id = std::move(id);
  preset.note = std::move(note);
  preset.grid = heatmap_grid(scenario, wrt, r);
  return preset;
}

FigurePreset curves(std::string id, std::string note, ChannelScenario scenario,
                    EstimationTarget wrt, std::vector<Real> mus) {
  FigurePreset preset;
  preset.id = std::move(id);
  preset.note = std::move(note);
  preset.curve_family = true;
  preset.grid = curve_grid(scenario, wrt, 0.99);
  preset.mu_values = std::move(mus);
  return preset;
}

std::string format_number(Real v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string format_label(Real v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

}  // namespace

const std::vector<FigurePreset>& figure_presets() {
  using S = ChannelScenario;
  using T = EstimationTarget;
  static const std::vector<FigurePreset> presets = {
      heatmap("2a", "F_r, qubit channel, r=0.1, mu in [0,1/2] x gamma in [0,1]",
              S::QubitOnly, T::R, 0.1),
      heatmap("2b", "F_r, qubit channel, r=0.2, mu in [0,1/2] x gamma in [0,1]",
              S::QubitOnly, T::R, 0.2),
      curves("3",
             "F_r vs r, qubit channel, gamma=0.99, mu=0.01,0.1,0.2,0.3 "
             "(the published mu list ends in a bare '3'; 0.3 is the in-range "
             "reading)",
             S::QubitOnly, T::R, {0.01, 0.1, 0.2, 0.3}),
      heatmap("4a", "F_mu, qubit channel, r=0.2, mu in [0,1/2] x gamma in [0,1]",
              S::QubitOnly, T::Mu, 0.2),
      curves("4b", "F_mu vs r, qubit channel, gamma=0.99, mu=0.05,0.1,0.15,0.2",
             S::QubitOnly, T::Mu, {0.05, 0.1, 0.15, 0.2}),
      heatmap("5a", "F_r, qutrit channel, r=0.1, mu in [0,1/2] x gamma in [0,1]",
              S::QutritOnly, T::R, 0.1),
      heatmap("5b", "F_r, qutrit channel, r=0.5, mu in [0,1/2] x gamma in [0,1]",
              S::QutritOnly, T::R, 0.5),
      curves("6", "F_r vs r, qutrit channel, gamma=0.99, mu=0.1,0.2,0.3,0.4",
             S::QutritOnly, T::R, {0.1, 0.2, 0.3, 0.4}),
      heatmap("7a", "F_mu, qutrit channel, r=0.5, mu in [0,1/2] x gamma in [0,1]",
              S::QutritOnly, T::Mu, 0.5),
      heatmap("7b",
              "F_mu, qutrit channel; the published r=0.8 exceeds pi/4 and is "
              "clamped to r=pi/4",
              S::QutritOnly, T::Mu, kRindlerMax),
      heatmap("8a",
              "F_r, both channels, r=0.2 (companion text mentions r=0.1), "
              "mu in [0,1/2] x gamma in [0,1]",
              S::Both, T::R, 0.2),
      heatmap("8b", "F_r, both channels, r=0.5, mu in [0,1/2] x gamma in [0,1]",
              S::Both, T::R, 0.5),
      heatmap("9a", "F_mu, both channels, r=0.1, mu in [0,1/2] x gamma in [0,1]",
              S::Both, T::Mu, 0.1),
      heatmap("9b", "F_mu, both channels, r=0.5, mu in [0,1/2] x gamma in [0,1]",
              S::Both, T::Mu, 0.5),
  };
  return presets;
}

const FigurePreset* find_figure_preset(const std::string& id) {
  for (const auto& preset : figure_presets()) {
    if (preset.id == id) return &preset;
  }
  return nullptr;
}

std::vector<std::string> write_figure_outputs(const FigurePreset& preset,
                                              const std::string& prefix,
                                              int max_threads,
                                              std::ostream& info) {
  info << "figure " << preset.id << ": " << preset.note << "\n";
  std::vector<std::string> written;

  if (preset.curve_family) {
    std::vector<SweepResult> columns;
    columns.reserve(preset.mu_values.size());
    for (Real mu : preset.mu_values) {
      GridSpec spec = preset.grid;
      spec.base.mu = mu;
      columns.push_back(run_sweep(spec, max_threads));
    }
    const std::string path = prefix + ".csv";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "'");
    out << "r";
    for (Real mu : preset.mu_values) out << ",f[mu=" << format_label(mu) << "]";
    out << "\n";
    const AxisSpec& axis = preset.grid.axis1;
    for (int i = 0; i < axis.count; ++i) {
      out << format_number(axis.value(i));
      for (const auto& column : columns) {
        out << ',' << format_number(column.values(i, 0));
      }
      out << "\n";
    }
    if (!out.good()) throw IoError("write failed for '" + path + "'");
    written.push_back(path);
    return written;
  }

  const SweepResult res = run_sweep(preset.grid, max_threads);
  const std::string csv_path = prefix + ".csv";
  {
    std::ofstream out(csv_path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + csv_path + "'");
    export_csv(res, out);
  }
  written.push_back(csv_path);
  const std::string pgm_path = prefix + ".pgm";
  {
    std::ofstream out(pgm_path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + pgm_path + "'");
    export_heatmap(res, out);
  }
  written.push_back(pgm_path);
  return written;
}

}  // namespace qfim::app

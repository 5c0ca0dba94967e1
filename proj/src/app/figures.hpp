#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qfim/sweep.hpp"

namespace qfim::app {

// Reproduction presets for the published figure set. Heatmap figures scan
// mu in [0, 1/2] (vertical) against the coupled channel strength gamma in
// [0, 1] (horizontal) at a fixed acceleration; curve figures sweep r over
// [0, pi/4] for a family of mu values at gamma = 0.99.
struct FigurePreset {
  std::string id;
  std::string note;  // preset parameters, plus any recorded discrepancy
  bool curve_family = false;
  GridSpec grid;
  std::vector<Real> mu_values;  // curve families: one column per value
};

const std::vector<FigurePreset>& figure_presets();

// nullptr when the id is unknown.
const FigurePreset* find_figure_preset(const std::string& id);

// Writes <prefix>.csv (and <prefix>.pgm for heatmap figures); returns the
// paths written. Progress and the preset note go to `info`.
std::vector<std::string> write_figure_outputs(const FigurePreset& preset,
                                              const std::string& prefix,
                                              int max_threads,
                                              std::ostream& info);

}  // namespace qfim::app

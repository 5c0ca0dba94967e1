#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qfim/qfi.hpp"
#include "qfim/types.hpp"

namespace qfim {

// One sweep axis: which parameter varies and the inclusive linspace over it.
// Valid names: mu, r, gamma_a, gamma_b, gamma (sets gamma_a = gamma_b).
struct AxisSpec {
  std::string name;
  Real min = 0.0;
  Real max = 0.0;
  int count = 0;

  Real value(int i) const;
};

struct GridSpec {
  AxisSpec axis1;
  std::optional<AxisSpec> axis2;
  ModelParams base;  // fixed parameters, including the scenario
  EstimationTarget wrt = EstimationTarget::R;
  DerivativeProvider provider = DerivativeProvider::Analytic;
  Real degeneracy_delta = kDegeneracyDelta;
  Real eig_cutoff = kEigenvalueCutoff;
  Real fd_step = kFdStep;
};

// Throws OutOfRangeError unless every axis has count >= 2, min < max and
// stays inside the named parameter's domain.
void validate_grid(const GridSpec& spec);

struct CellIssue {
  int i = 0;
  int j = 0;
  bool fallback = false;  // degraded to the SLD total (still usable)
  std::string message;
};

struct SweepResult {
  GridSpec spec;
  // axis1-major: rows follow axis1, columns axis2 (a single column for 1-D).
  RealMatrix values;
  RealMatrix f_cl;
  RealMatrix f_qu;
  RealMatrix f_mix;
  std::vector<CellIssue> failures;

  int rows() const { return static_cast<int>(values.rows()); }
  int cols() const { return static_cast<int>(values.cols()); }
  bool two_dimensional() const { return spec.axis2.has_value(); }
};

// Evaluates qfi_for_params on every grid node. Deterministic: the result is
// identical whatever max_threads is (cells are independent and written into
// preallocated storage). max_threads <= 0 means use the hardware count.
// Throws SweepDegradedError when more than 10% of cells error out.
SweepResult run_sweep(const GridSpec& spec, int max_threads = 0);

// Axis-aligned rectangle of cells with nearly constant QFI.
struct FrozenRegion {
  int i0 = 0, i1 = 0;  // inclusive axis1 cell range
  int j0 = 0, j1 = 0;  // inclusive axis2 cell range
  Real mean_f = 0.0;
  Real flatness = 0.0;  // relative peak-to-peak over the region

  long area() const {
    return static_cast<long>(i1 - i0 + 1) * static_cast<long>(j1 - j0 + 1);
  }
};

// Relative peak-to-peak (max - min) / max(mean, 1e-9) of a cell block.
Real region_flatness(const RealMatrix& values, int i0, int i1, int j0, int j1);

// Greedy scan in row-major order: from each unclaimed cell, grow rows
// top-down in the start column, then merge whole columns rightward, keeping
// the flatness <= tau; rectangles of at least min_cells cells claim their
// cells (first claim wins, so regions never overlap). Returned sorted by
// area descending.
std::vector<FrozenRegion> detect_frozen_regions(const SweepResult& res,
                                                Real tau, int min_cells);

// CSV export, axis1-major, header
//   axis1,axis2,wrt,scenario,f_total,f_cl,f_qu,f_mix
// with 17-significant-digit numbers and LF newlines. The axis2 field is
// empty for 1-D sweeps. Byte-identical across repeated runs.
void export_csv(const SweepResult& res, std::ostream& out);

struct HeatmapScale {
  enum class Kind { GlobalMax, Fixed };
  Kind kind = Kind::GlobalMax;
  Real vmax = 0.0;  // used when kind == Fixed

  static HeatmapScale global_max() { return {Kind::GlobalMax, 0.0}; }
  static HeatmapScale fixed(Real v) { return {Kind::Fixed, v}; }
};

// ASCII portable graymap (P2), width = axis2 count, height = axis1 count,
// maxval 65535, pixel = round(65535 * F / vmax) clamped; image row 0 holds
// the highest axis1 value. Throws NotTwoDimensionalError for 1-D sweeps.
void export_heatmap(const SweepResult& res, std::ostream& out,
                    HeatmapScale scale = HeatmapScale::global_max());

// export_heatmap applied to one of the component matrices (f_cl, f_qu,
// f_mix) instead of the totals.
void export_component_heatmap(const SweepResult& res, const RealMatrix& field,
                              std::ostream& out,
                              HeatmapScale scale = HeatmapScale::global_max());

}  // namespace qfim

#include "qfim/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <ostream>
#include <thread>

#include "qfim/channels.hpp"

namespace qfim {

namespace {

struct AxisDomain {
  Real lo, hi;
};

AxisDomain axis_domain(const std::string& name) {
  if (name == "mu") return {0.0, kMuMax};
  if (name == "r") return {0.0, kRindlerMax};
  if (name == "gamma_a" || name == "gamma_b" || name == "gamma") {
    return {0.0, 1.0};
  }
  throw OutOfRangeError("unknown axis '" + name +
                        "' (expected mu|r|gamma_a|gamma_b|gamma)");
}

void apply_axis(ModelParams& params, const std::string& name, Real value) {
  if (name == "mu") {
    params.mu = value;
  } else if (name == "r") {
    params.r = value;
  } else if (name == "gamma_a") {
    params.gamma_a = value;
  } else if (name == "gamma_b") {
    params.gamma_b = value;
  } else {  // coupled gamma
    params.gamma_a = value;
    params.gamma_b = value;
    params.coupled_gamma = true;
  }
}

void validate_axis(const AxisSpec& axis) {
  const AxisDomain domain = axis_domain(axis.name);
  if (axis.count < 2) throw OutOfRangeError("axis count must be >= 2");
  if (!(axis.min < axis.max)) throw OutOfRangeError("axis needs min < max");
  if (axis.min < domain.lo || axis.max > domain.hi) {
    throw OutOfRangeError("axis '" + axis.name + "' leaves its domain");
  }
}

// 17 significant digits: enough to reproduce any double exactly.
void append_number(std::string& out, Real v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

int thread_budget(int max_threads, long cells) {
  int budget = max_threads > 0
                   ? max_threads
                   : static_cast<int>(std::thread::hardware_concurrency());
  if (budget < 1) budget = 1;
  return static_cast<int>(std::min<long>(budget, cells));
}

}  // namespace

Real AxisSpec::value(int i) const {
  // Exact endpoints keep every node inside the validated range.
  if (i <= 0 || count < 2) return min;
  if (i >= count - 1) return max;
  const Real t = static_cast<Real>(i) / static_cast<Real>(count - 1);
  return min + (max - min) * t;
}

void validate_grid(const GridSpec& spec) {
  validate_axis(spec.axis1);
  if (spec.axis2) {
    validate_axis(*spec.axis2);
    if (spec.axis2->name == spec.axis1.name) {
      throw OutOfRangeError("the two axes must differ");
    }
  }
  for (const AxisSpec* axis :
       {&spec.axis1, spec.axis2 ? &*spec.axis2 : nullptr}) {
    if (axis != nullptr && spec.base.coupled_gamma &&
        (axis->name == "gamma_a" || axis->name == "gamma_b")) {
      throw OutOfRangeError(
          "a per-particle gamma axis conflicts with coupled gamma");
    }
  }
  validate_params(spec.base);
}

SweepResult run_sweep(const GridSpec& spec, int max_threads) {
  validate_grid(spec);
  const int n1 = spec.axis1.count;
  const int n2 = spec.axis2 ? spec.axis2->count : 1;
  const long cells = static_cast<long>(n1) * n2;

  SweepResult res;
  res.spec = spec;
  res.values.setZero(n1, n2);
  res.f_cl.setZero(n1, n2);
  res.f_qu.setZero(n1, n2);
  res.f_mix.setZero(n1, n2);

  std::mutex issues_mutex;
  std::vector<CellIssue> issues;
  std::atomic<long> errors{0};

  auto evaluate_cell = [&](long cell) {
    const int i = static_cast<int>(cell / n2);
    const int j = static_cast<int>(cell % n2);
    ModelParams params = spec.base;
    apply_axis(params, spec.axis1.name, spec.axis1.value(i));
    if (spec.axis2) apply_axis(params, spec.axis2->name, spec.axis2->value(j));
    try {
      const QfiResult q =
          qfi_for_params(params, spec.wrt, spec.provider, spec.degeneracy_delta,
                         spec.eig_cutoff, spec.fd_step);
      res.values(i, j) = q.total;
      res.f_cl(i, j) = q.f_cl;
      res.f_qu(i, j) = q.f_qu;
      res.f_mix(i, j) = q.f_mix;
      if (q.used_fallback) {
        std::lock_guard<std::mutex> lock(issues_mutex);
        issues.push_back({i, j, true, "three-term decomposition degraded"});
      }
    } catch (const std::exception& e) {
      res.values(i, j) = std::numeric_limits<Real>::quiet_NaN();
      ++errors;
      std::lock_guard<std::mutex> lock(issues_mutex);
      issues.push_back({i, j, false, e.what()});
    }
  };

  const int workers = thread_budget(max_threads, cells);
  if (workers <= 1) {
    for (long cell = 0; cell < cells; ++cell) evaluate_cell(cell);
  } else {
    // Static striping: each cell's arithmetic is self-contained, so the
    // partition cannot change any value.
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (long cell = w; cell < cells; cell += workers) evaluate_cell(cell);
      });
    }
    for (auto& t : pool) t.join();
  }

  std::sort(issues.begin(), issues.end(), [](const CellIssue& a, const CellIssue& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  });
  res.failures = std::move(issues);

  if (errors * 10 > cells) {
    throw SweepDegradedError("more than 10% of sweep cells failed");
  }
  return res;
}

Real region_flatness(const RealMatrix& values, int i0, int i1, int j0, int j1) {
  const auto block = values.block(i0, j0, i1 - i0 + 1, j1 - j0 + 1);
  const Real mean = block.mean();
  return (block.maxCoeff() - block.minCoeff()) / std::max(mean, 1e-9);
}

std::vector<FrozenRegion> detect_frozen_regions(const SweepResult& res,
                                                Real tau, int min_cells) {
  if (!(tau > 0.0)) throw OutOfRangeError("tau must be positive");
  const int n1 = res.rows();
  const int n2 = res.cols();
  const RealMatrix& values = res.values;
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> claimed(n1, n2);
  claimed.setConstant(false);

  std::vector<FrozenRegion> regions;
  for (int i0 = 0; i0 < n1; ++i0) {
    for (int j0 = 0; j0 < n2; ++j0) {
      if (claimed(i0, j0)) continue;
      // Grow rows top-down in the start column.
      int i1 = i0;
      while (i1 + 1 < n1 && !claimed(i1 + 1, j0) &&
             region_flatness(values, i0, i1 + 1, j0, j0) <= tau) {
        ++i1;
      }
      // Merge whole columns rightward.
      int j1 = j0;
      while (j1 + 1 < n2 &&
             !claimed.block(i0, j1 + 1, i1 - i0 + 1, 1).any() &&
             region_flatness(values, i0, i1, j0, j1 + 1) <= tau) {
        ++j1;
      }
      FrozenRegion region;
      region.i0 = i0, region.i1 = i1, region.j0 = j0, region.j1 = j1;
      if (region.area() < min_cells) continue;
      claimed.block(i0, j0, i1 - i0 + 1, j1 - j0 + 1).setConstant(true);
      region.mean_f = values.block(i0, j0, i1 - i0 + 1, j1 - j0 + 1).mean();
      region.flatness = region_flatness(values, i0, i1, j0, j1);
      regions.push_back(region);
    }
  }
  std::stable_sort(regions.begin(), regions.end(),
                   [](const FrozenRegion& a, const FrozenRegion& b) {
                     return a.area() > b.area();
                   });
  return regions;
}

void export_csv(const SweepResult& res, std::ostream& out) {
  std::string line = "axis1,axis2,wrt,scenario,f_total,f_cl,f_qu,f_mix\n";
  out << line;
  const std::string wrt = to_string(res.spec.wrt);
  const std::string scenario = to_string(res.spec.base.scenario);
  for (int i = 0; i < res.rows(); ++i) {
    for (int j = 0; j < res.cols(); ++j) {
      line.clear();
      append_number(line, res.spec.axis1.value(i));
      line += ',';
      if (res.spec.axis2) append_number(line, res.spec.axis2->value(j));
      line += ',';
      line += wrt;
      line += ',';
      line += scenario;
      line += ',';
      append_number(line, res.values(i, j));
      line += ',';
      append_number(line, res.f_cl(i, j));
      line += ',';
      append_number(line, res.f_qu(i, j));
      line += ',';
      append_number(line, res.f_mix(i, j));
      line += '\n';
      out << line;
    }
  }
  if (!out.good()) throw IoError("CSV export failed");
}

namespace {

void write_pgm(const RealMatrix& field, std::ostream& out, HeatmapScale scale) {
  const int n1 = static_cast<int>(field.rows());
  const int n2 = static_cast<int>(field.cols());
  Real vmax = scale.kind == HeatmapScale::Kind::Fixed ? scale.vmax
                                                      : field.maxCoeff();
  out << "P2\n" << n2 << ' ' << n1 << "\n65535\n";
  std::string line;
  for (int row = 0; row < n1; ++row) {
    const int i = n1 - 1 - row;  // row 0 = highest axis1 value
    for (int j = 0; j < n2; ++j) {
      long pixel = 0;
      if (vmax > 0.0) {
        pixel = std::lround(65535.0 * field(i, j) / vmax);
        pixel = std::clamp(pixel, 0L, 65535L);
      }
      const std::string token = std::to_string(pixel);
      if (!line.empty() && line.size() + 1 + token.size() > 70) {
        out << line << '\n';
        line.clear();
      }
      if (!line.empty()) line += ' ';
      line += token;
    }
  }
  if (!line.empty()) out << line << '\n';
  if (!out.good()) throw IoError("PGM export failed");
}

}  // namespace

void export_heatmap(const SweepResult& res, std::ostream& out,
                    HeatmapScale scale) {
  if (!res.two_dimensional()) {
    throw NotTwoDimensionalError("heatmap export needs a 2-D sweep");
  }
  write_pgm(res.values, out, scale);
}

void export_component_heatmap(const SweepResult& res, const RealMatrix& field,
                              std::ostream& out, HeatmapScale scale) {
  if (!res.two_dimensional()) {
    throw NotTwoDimensionalError("heatmap export needs a 2-D sweep");
  }
  write_pgm(field, out, scale);
}

}  // namespace qfim

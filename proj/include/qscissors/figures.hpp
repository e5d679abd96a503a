// Batch runs: a configured variance scan with window detection, and the
// fixed-parameter figure bundles for the two- and three-mode couplers.

#pragma once

#include "qscissors/config.hpp"
#include "qscissors/csv.hpp"
#include "qscissors/squeezing.hpp"

#include <array>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace qscissors {

struct RunResult {
  VarianceSeries series;
  std::vector<SqueezingWindow> windows;
};

inline RunResult run_variances(const RunConfig& config) {
  validate_config(config);
  const VarianceSource source = make_source(config);
  RunResult r;
  r.series = scan_variances(source, config.t_max_us, config.dt_us);
  r.windows = detect_windows(r.series, source);
  return r;
}

/// Coupling used by every figure: 10^8/200 = 5e5 1/s.
inline constexpr double kFigureCoupling = 5e5;

inline constexpr std::array<std::string_view, 5> kFigureIds = {"fig1a", "fig1b", "fig2a", "fig2b", "fig3"};

inline RunConfig figure_config(std::string_view id, double dt_us = 0.01) {
  const double e = kFigureCoupling;
  RunConfig c;
  c.epsilon = e;
  c.dt_us = dt_us;
  if (id == "fig1a") {
    c.modes = 2;
    c.pumps = {e, 0.0};
    c.t_max_us = 5.0;
  } else if (id == "fig1b") {
    c.modes = 2;
    c.pumps = {e, e};
    c.t_max_us = 10.0;
  } else if (id == "fig2a") {
    c.modes = 3;
    c.pumps = {e, 0.0, 0.0};
    c.t_max_us = 20.0;
    c.path = ComputationPath::TruncatedOde;
  } else if (id == "fig2b") {
    c.modes = 3;
    c.pumps = {e, e, 0.0};
    c.t_max_us = 20.0;
    c.path = ComputationPath::TruncatedOde;
  } else if (id == "fig3") {
    c.modes = 3;
    c.pumps = {e, e, e};
    c.t_max_us = 20.0;
  } else {
    throw std::invalid_argument("unknown figure id \"" + std::string(id) + "\" (expected fig1a, fig1b, fig2a, fig2b, fig3)");
  }
  validate_config(c);
  return c;
}

struct FigureOutput {
  RunResult result;
  std::filesystem::path series_path;
  std::filesystem::path windows_path;
};

/// Writes <out_dir>/<id>_series.csv and <out_dir>/<id>_windows.csv.
inline FigureOutput run_figure(std::string_view id, const std::filesystem::path& out_dir, double dt_us = 0.01) {
  const RunConfig config = figure_config(id, dt_us);
  FigureOutput out;
  out.result = run_variances(config);
  out.series_path = out_dir / (std::string(id) + "_series.csv");
  out.windows_path = out_dir / (std::string(id) + "_windows.csv");
  write_file_atomic(out.series_path, series_csv(out.result.series));
  write_file_atomic(out.windows_path, windows_csv(out.result.windows));
  return out;
}

}  // namespace qscissors

// Sampling variance traces on a time grid and locating squeezing windows,
// the maximal intervals where a trace sits strictly below 1/4.

#pragma once

#include "qscissors/observables.hpp"
#include "qscissors/sources.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <string>
#include <vector>

namespace qscissors {

struct VarianceSeries {
  std::vector<double> times_us;
  std::vector<std::vector<double>> dX2;  // [mode][sample]
  std::vector<std::vector<double>> dY2;
  std::string provenance;

  std::size_t modes() const noexcept { return dX2.size(); }
  std::size_t size() const noexcept { return times_us.size(); }
  const std::vector<double>& trace(std::size_t mode, Quadrature q) const {
    return q == Quadrature::X ? dX2.at(mode) : dY2.at(mode);
  }
};

/// Grid 0, dt, 2dt, ... <= t_max (all in microseconds).
inline std::vector<double> time_grid_us(double t_max_us, double dt_us) {
  if (!(dt_us > 0.0)) throw std::invalid_argument("time grid: dt must be positive");
  if (!(t_max_us >= dt_us)) throw std::invalid_argument("time grid: t_max must be >= dt");
  const auto steps = static_cast<std::size_t>(std::floor(t_max_us / dt_us + 1e-9));
  std::vector<double> grid(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i) grid[i] = double(i) * dt_us;
  return grid;
}

inline VarianceSeries scan_variances(const VarianceSource& source, double t_max_us, double dt_us) {
  VarianceSeries series;
  series.times_us = time_grid_us(t_max_us, dt_us);
  series.provenance = source.provenance;
  const std::size_t n = series.times_us.size();
  series.dX2.assign(source.modes, std::vector<double>(n));
  series.dY2.assign(source.modes, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const QuadratureVariances v = source.evaluate(us_to_s(series.times_us[i]));
    if (v.modes() != source.modes) throw std::runtime_error("scan_variances: evaluator returned wrong mode count");
    for (std::size_t p = 0; p < source.modes; ++p) {
      if (!(v.dX2[p] > 0.0) || !(v.dY2[p] > 0.0))
        throw std::runtime_error("scan_variances: nonpositive variance at t = " +
                                 std::to_string(series.times_us[i]) + " us (" + source.provenance + ")");
      series.dX2[p][i] = v.dX2[p];
      series.dY2[p][i] = v.dY2[p];
    }
  }
  return series;
}

struct SqueezingWindow {
  std::size_t mode = 0;  // 0-based
  Quadrature quadrature = Quadrature::X;
  double t_start_us = 0.0;
  double t_end_us = 0.0;
  double t_min_us = 0.0;
  double v_min = 0.0;
  bool open_start = false;  // begins at the start of the scanned domain
  bool open_end = false;    // still squeezed at the end of the domain
  bool refined = true;
  std::string note;
};

namespace detail {

/// Residual |variance - threshold| accepted at a refined crossing.
inline constexpr double kCrossingValueTol = 1e-8;

/// Shrinks [above, below] (g >= 0 at `above`, g < 0 at `below`) until the
/// bracket is narrower than `tol` and |g| at its midpoint is below
/// kCrossingValueTol, then returns that midpoint.
template <class F>
double bisect_crossing(F&& g, double above, double below, double tol) {
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (above + below);
    const double gm = g(mid);
    if (std::abs(below - above) <= tol && std::abs(gm) <= kCrossingValueTol) break;
    if (mid == above || mid == below) break;
    if (gm < 0.0)
      below = mid;
    else
      above = mid;
  }
  return 0.5 * (above + below);
}

template <class F>
double golden_minimum(F&& f, double a, double b, double tol) {
  constexpr double inv_phi = 0.6180339887498949;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 200 && (b - a) > tol; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace detail

/// One window per maximal sub-threshold run of each trace. Boundaries are
/// bisected on (variance - threshold) with `source` down to `refine_tol_us`;
/// the minimum is located by golden-section search around the lowest grid
/// sample. Windows come back sorted by t_start (ties by quadrature, mode).
inline std::vector<SqueezingWindow> detect_windows(const VarianceSeries& series, const VarianceSource& source,
                                                   double threshold = kVacuumVariance, double refine_tol_us = 1e-4) {
  if (!(threshold > 0.0)) throw std::invalid_argument("detect_windows: threshold must be positive");
  if (!(refine_tol_us > 0.0)) throw std::invalid_argument("detect_windows: refine_tol must be positive");
  const auto& t = series.times_us;
  const std::size_t n = t.size();
  std::vector<SqueezingWindow> windows;
  if (n == 0) return windows;

  for (Quadrature q : {Quadrature::X, Quadrature::Y}) {
    for (std::size_t mode = 0; mode < series.modes(); ++mode) {
      const auto& v = series.trace(mode, q);
      auto value = [&](double t_us) { return source.evaluate(us_to_s(t_us)).get(mode, q); };
      auto g = [&](double t_us) { return value(t_us) - threshold; };

      std::size_t i = 0;
      while (i < n) {
        if (!(v[i] < threshold)) {
          ++i;
          continue;
        }
        std::size_t j = i;
        while (j + 1 < n && v[j + 1] < threshold) ++j;

        SqueezingWindow w;
        w.mode = mode;
        w.quadrature = q;
        std::size_t m = i;
        for (std::size_t k = i; k <= j; ++k)
          if (v[k] < v[m]) m = k;
        w.t_start_us = t[i];
        w.t_end_us = t[j];
        w.t_min_us = t[m];
        w.v_min = v[m];
        w.open_start = i == 0;
        w.open_end = j + 1 == n;

        try {
          if (!w.open_start) {
            if (g(t[i - 1]) < 0.0 || !(g(t[i]) < 0.0)) throw std::runtime_error("start bracket does not straddle");
            w.t_start_us = detail::bisect_crossing(g, t[i - 1], t[i], refine_tol_us);
            if (w.t_start_us - t.front() <= refine_tol_us) {
              w.t_start_us = t.front();
              w.open_start = true;
            }
          }
          if (!w.open_end) {
            if (g(t[j + 1]) < 0.0 || !(g(t[j]) < 0.0)) throw std::runtime_error("end bracket does not straddle");
            w.t_end_us = detail::bisect_crossing(g, t[j + 1], t[j], refine_tol_us);
          }
          const double lo = std::max(w.t_start_us, m > 0 ? t[m - 1] : t[m]);
          const double hi = std::min(w.t_end_us, m + 1 < n ? t[m + 1] : t[m]);
          if (hi > lo) {
            const double tm = detail::golden_minimum(value, lo, hi, 1e-3 * refine_tol_us);
            const double vm = value(tm);
            if (vm <= w.v_min) {
              w.t_min_us = tm;
              w.v_min = vm;
            }
          }
        } catch (const std::exception& e) {
          w.refined = false;
          w.note = e.what();
        }
        windows.push_back(std::move(w));
        i = j + 1;
      }
    }
  }
  std::stable_sort(windows.begin(), windows.end(),
                   [](const SqueezingWindow& a, const SqueezingWindow& b) { return a.t_start_us < b.t_start_us; });
  return windows;
}

/// Windows of one (mode, quadrature) trace, in time order.
inline std::vector<SqueezingWindow> windows_for(const std::vector<SqueezingWindow>& all, std::size_t mode,
                                                Quadrature q) {
  std::vector<SqueezingWindow> out;
  for (const auto& w : all)
    if (w.mode == mode && w.quadrature == q) out.push_back(w);
  return out;
}

}  // namespace qscissors

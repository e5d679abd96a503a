// Acceptance checks. Prints one line per criterion:
//   criterion <n>: PASS|FAIL  <summary>
// followed by indented detail lines. Exit status is nonzero when any
// selected criterion fails.

#include "qscissors/qscissors.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace qscissors;

namespace {

constexpr double kE = 5e5;
constexpr double kWindowTol = 0.05;  // microseconds

struct Outcome {
  bool pass = true;
  std::string summary;
  std::vector<std::string> details;

  void check(bool ok, const std::string& what) {
    details.push_back(std::string(ok ? "ok   " : "MISS ") + what);
    pass = pass && ok;
  }
  void note(const std::string& what) { details.push_back("     " + what); }
};

std::string fmt(double v, int prec = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", prec, v);
  return buf;
}

std::string sci(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string trace_name(std::size_t mode, Quadrature q) {
  return std::string("d") + quadrature_name(q) + "2_" + std::to_string(mode + 1);
}

std::string describe(const SqueezingWindow& w) {
  return "(" + fmt(w.t_start_us) + ", " + fmt(w.t_end_us) + ") min " + fmt(w.v_min, 5) + " at " + fmt(w.t_min_us);
}

void check_near(Outcome& o, const std::string& label, double got, double want, double tol) {
  o.check(std::abs(got - want) <= tol, label + " = " + fmt(got) + " (target " + fmt(want, 2) + " +/- " + fmt(tol, 2) + ")");
}

struct ExpectedWindow {
  double start, end;
};

/// Compares all windows of one trace against a target list, pairwise in time order.
void check_trace(Outcome& o, const std::vector<SqueezingWindow>& all, std::size_t mode, Quadrature q,
                 const std::vector<ExpectedWindow>& expected) {
  const auto got = windows_for(all, mode, q);
  const std::string name = trace_name(mode, q);
  o.check(got.size() == expected.size(),
          name + ": " + std::to_string(got.size()) + " window(s), target " + std::to_string(expected.size()));
  for (std::size_t i = 0; i < expected.size(); ++i) {
    const std::string label = name + " window " + std::to_string(i + 1);
    if (i >= got.size()) {
      o.check(false, label + " (" + fmt(expected[i].start, 2) + ", " + fmt(expected[i].end, 2) + ") not found");
      continue;
    }
    check_near(o, label + " start", got[i].t_start_us, expected[i].start, kWindowTol);
    check_near(o, label + " end", got[i].t_end_us, expected[i].end, kWindowTol);
  }
  for (std::size_t i = expected.size(); i < got.size(); ++i) o.note(name + " extra window " + describe(got[i]));
}

/// Time of the lowest windowed value of a trace, or NaN without windows.
double trace_minimum_time(const std::vector<SqueezingWindow>& all, std::size_t mode, Quadrature q) {
  double best_v = 1e300, best_t = std::numeric_limits<double>::quiet_NaN();
  for (const auto& w : windows_for(all, mode, q))
    if (w.v_min < best_v) {
      best_v = w.v_min;
      best_t = w.t_min_us;
    }
  return best_t;
}

Outcome criterion1() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const RunResult r = run_variances(figure_config("fig1a"));
  const double elapsed = seconds_since(t0);

  const auto x2 = windows_for(r.windows, 1, Quadrature::X);
  const auto y1 = windows_for(r.windows, 0, Quadrature::Y);
  o.check(!x2.empty(), "dX2_2 has a squeezing window");
  if (!x2.empty()) {
    check_near(o, "dX2_2 start", x2[0].t_start_us, 0.06, kWindowTol);
    check_near(o, "dX2_2 end", x2[0].t_end_us, 2.37, kWindowTol);
    check_near(o, "dX2_2 minimum", x2[0].t_min_us, 1.83, kWindowTol);
    const VarianceSource src = analytic_source(TwoModeSinglePump{kE});
    for (double t : {0.01, 0.03, 0.06})
      o.note("dX2_2(" + fmt(t, 2) + " us) - 1/4 = " + sci(src.evaluate(us_to_s(t)).dX2[1] - 0.25));
  }
  o.check(!y1.empty(), "dY2_1 has a squeezing window");
  if (!y1.empty()) {
    check_near(o, "dY2_1 start", y1[0].t_start_us, 0.0, kWindowTol);
    check_near(o, "dY2_1 end", y1[0].t_end_us, 1.74, kWindowTol);
    check_near(o, "dY2_1 minimum", y1[0].t_min_us, 1.08, kWindowTol);
  }
  o.check(elapsed < 5.0, "runtime " + fmt(elapsed, 3) + " s < 5 s");
  o.summary = "single-pump windows, amplitude path";
  return o;
}

Outcome criterion2() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const RunResult r = run_variances(figure_config("fig1b"));
  const double elapsed = seconds_since(t0);

  check_trace(o, r.windows, 0, Quadrature::X, {{5.42, 6.10}, {6.56, 6.84}});
  check_trace(o, r.windows, 1, Quadrature::X, {{2.80, 3.06}, {5.58, 6.10}, {8.78, 9.16}});
  check_trace(o, r.windows, 0, Quadrature::Y, {{0.0, 1.42}, {5.68, 6.10}});
  check_trace(o, r.windows, 1, Quadrature::Y, {{2.66, 3.06}, {5.82, 6.10}, {8.84, 9.16}});
  const double tx1 = trace_minimum_time(r.windows, 0, Quadrature::X);
  const double ty1 = trace_minimum_time(r.windows, 0, Quadrature::Y);
  o.check(std::isfinite(tx1) && std::abs(tx1 - 5.70) <= kWindowTol,
          "dX2_1 extremum at " + (std::isfinite(tx1) ? fmt(tx1) : std::string("none")) + " (target 5.70 +/- 0.05)");
  check_near(o, "dY2_1 extremum", ty1, 0.94, kWindowTol);
  o.check(elapsed < 10.0, "runtime " + fmt(elapsed, 3) + " s < 10 s");

  // Cross-checks on why the targets are out of reach.
  const SystemSpec full_spec{{1e8, 1e8}, kE, {kE, kE}};
  const FockBasis big(2, 4);
  const VarianceSource full = spectral_source(full_spec, 4, StateVector::vacuum(big));
  const VarianceSeries fs = scan_variances(full, 10.0, 0.01);
  std::size_t full_x = 0;
  for (const auto& w : detect_windows(fs, full)) full_x += w.quadrature == Quadrature::X;
  o.note("full Fock space (chi = 1e8 1/s, cutoff 4): " + std::to_string(full_x) + " X window(s) in [0, 10] us");
  const VarianceSource printed = printed_two_pump_source(kE, kE, true);
  const auto pw = detect_windows(scan_variances(printed, 10.0, 0.01), printed);
  o.note("published two-pump formulas (Xi4, Xi8 corrected) give:");
  for (const auto& w : pw) o.note("  " + trace_name(w.mode, w.quadrature) + " " + describe(w));
  o.summary = "two-pump windows, amplitude path";
  return o;
}

Outcome criterion3() {
  Outcome o;
  const VarianceSource src = analytic_source(TwoModeNoPump{kE});
  for (double t_max : {1.0, 7.3, 20.0}) {
    for (double dt : {0.001, 0.01, 0.0137, 0.25}) {
      if (dt > t_max) continue;
      const VarianceSeries s = scan_variances(src, t_max, dt);
      const auto w = detect_windows(s, src);
      double lo = 1e300;
      for (std::size_t p = 0; p < 2; ++p)
        for (std::size_t i = 0; i < s.size(); ++i) lo = std::min({lo, s.dX2[p][i], s.dY2[p][i]});
      const bool ok = w.empty() && lo >= 0.25 - 1e-12;
      if (!ok || (dt == 0.01 && t_max == 20.0))
        o.check(ok, "t_max " + fmt(t_max, 1) + " us, dt " + fmt(dt, 4) + ": " + std::to_string(w.size()) +
                        " windows, min - 1/4 = " + sci(lo - 0.25));
      o.pass = o.pass && ok;
    }
  }
  o.summary = "no-pump coupler is never squeezed";
  return o;
}

Outcome criterion4() {
  Outcome o;
  std::mt19937_64 rng(20240607);
  std::uniform_real_distribution<double> time(0.0, 1e-4);
  auto norm2 = [](const auto& c) {
    double s = 0.0;
    for (const Complex& z : c) s += std::norm(z);
    return s;
  };
  double d7 = 0, d8 = 0, d19 = 0, d0 = 0;
  for (int i = 0; i < 10000; ++i) {
    const double t = time(rng);
    d7 = std::max(d7, std::abs(norm2(analytic_two_mode_single_pump(kE, t)) - 1.0));
    d8 = std::max(d8, std::abs(norm2(analytic_two_mode_two_pump(kE, kE, t)) - 1.0));
    d19 = std::max(d19, std::abs(norm2(analytic_three_mode_symmetric(kE, t)) - 1.0));
    d0 = std::max(d0, std::abs(norm2(analytic_two_mode_no_pump(kE, t)) - 1.0));
  }
  o.check(d7 <= 1e-12, "single pump max |norm^2 - 1| = " + sci(d7));
  o.check(d8 <= 1e-12, "two pumps max |norm^2 - 1| = " + sci(d8));
  o.check(d19 <= 1e-12, "three-mode symmetric max |norm^2 - 1| = " + sci(d19));
  o.check(d0 <= 1e-12, "no pump max |norm^2 - 1| = " + sci(d0));
  o.summary = "closed forms normalized at 1e4 random times";
  return o;
}

Outcome criterion5() {
  Outcome o;
  const std::vector<double> grid_us = time_grid_us(20.0, 0.01);
  std::vector<double> grid_s;
  for (double t : grid_us) grid_s.push_back(us_to_s(t));

  const SystemSpec sym{{0.0, 0.0, 0.0}, kE, {kE, kE, kE}};
  const FockBasis q3(3, 1);
  const auto ode = integrate_ode(sym, q3, StateVector::vacuum(q3), grid_s, 1e-10);
  double dev = 0.0;
  for (std::size_t i = 0; i < grid_s.size(); ++i) {
    const auto c = analytic_three_mode_symmetric(kE, grid_s[i]);
    for (std::size_t k = 0; k < 8; ++k) dev = std::max(dev, std::abs(ode[i][k] - c[k]));
  }
  o.check(dev <= 1e-8, "ODE (tol 1e-10) vs symmetric closed form over [0, 20] us: " + sci(dev) + " <= 1e-8");

  const SystemSpec nopump{{0.0, 0.0}, kE, {0.0, 0.0}};
  const FockBasis q2(2, 1);
  const auto spec_states = propagate(build_hamiltonian(nopump, q2), StateVector::basis_state(q2, {1, 0}), grid_s);
  double dev2 = 0.0;
  for (std::size_t i = 0; i < grid_s.size(); ++i) {
    const auto c = analytic_two_mode_no_pump(kE, grid_s[i]);
    for (std::size_t k = 0; k < 4; ++k) dev2 = std::max(dev2, std::abs(spec_states[i][k] - c[k]));
  }
  o.check(dev2 <= 1e-10, "spectral propagator vs no-pump closed form: " + sci(dev2) + " <= 1e-10");
  o.summary = "analytic vs numerical amplitudes";
  return o;
}

Outcome criterion6(const std::string& out_dir) {
  Outcome o;
  const auto report = reconciliation_report(kE, kE, kE, 10e-6, 1000);
  const std::filesystem::path path = std::filesystem::path(out_dir) / "reconciliation.csv";
  write_file_atomic(path, reconciliation_csv(report));
  o.check(std::filesystem::exists(path), "report written to " + path.string());
  std::size_t flagged = 0;
  for (const auto& e : report) {
    const std::string label = e.model + " " + e.expression + ": " + status_name(e.status);
    switch (e.status) {
      case ReconciliationStatus::MatchedAsPrinted:
        o.check(e.max_dev_as_printed <= kReconciliationTolerance, label + ", max dev " + sci(e.max_dev_as_printed));
        break;
      case ReconciliationStatus::MatchedWithCorrection:
        o.check(e.max_dev_fitted <= kReconciliationTolerance,
                label + ", term [" + e.term + "] " + fmt(e.printed_coefficient, 6) + " -> " +
                    fmt(e.fitted_coefficient, 6) + ", max dev " + sci(e.max_dev_fitted));
        break;
      case ReconciliationStatus::Irrecoverable:
        ++flagged;
        o.note(label + ", best single-term refit leaves " + sci(e.max_dev_fitted));
        break;
    }
    if (e.model == "two-mode-single-pump")
      o.check(e.status != ReconciliationStatus::Irrecoverable, "single-pump " + e.expression + " reconciled");
  }
  o.summary = std::to_string(report.size() - flagged) + " expressions matched, " + std::to_string(flagged) +
              " flagged irrecoverable";
  return o;
}

Outcome criterion7() {
  Outcome o;
  auto degeneracy = [&](const char* id, std::vector<std::pair<std::size_t, std::size_t>> pairs) {
    const RunResult r = run_variances(figure_config(id));
    for (auto [p, q] : pairs) {
      double dev = 0.0;
      for (std::size_t i = 0; i < r.series.size(); ++i)
        dev = std::max({dev, std::abs(r.series.dX2[p][i] - r.series.dX2[q][i]),
                        std::abs(r.series.dY2[p][i] - r.series.dY2[q][i])});
      o.check(dev <= 1e-12, std::string(id) + ": modes " + std::to_string(p + 1) + " and " + std::to_string(q + 1) +
                                " max difference " + sci(dev));
    }
    return r;
  };
  degeneracy("fig2a", {{1, 2}});
  degeneracy("fig2b", {{0, 1}});
  const RunResult r3 = degeneracy("fig3", {{0, 1}, {1, 2}, {0, 2}});
  for (std::size_t p = 0; p < 3; ++p) {
    const auto w = windows_for(r3.windows, p, Quadrature::Y);
    o.check(!w.empty(), "fig3 dY2_" + std::to_string(p + 1) + " squeezed: " +
                            (w.empty() ? std::string("no window") : describe(w.front())));
  }
  o.summary = "three-mode degeneracies and Y squeezing with three pumps";
  return o;
}

Outcome criterion8() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const SystemSpec spec{{0.0, 0.0}, kE, {kE, kE}};
  const auto reports = rwa_validation(spec, 4, 10.0, {50.0, 200.0, 1000.0});
  const double elapsed = seconds_since(t0);
  for (const auto& r : reports)
    o.note("chi/eps " + fmt(r.chi_ratio, 0) + ": leakage " + sci(r.max_leakage) + ", amplitude deviation " +
           sci(r.max_amplitude_deviation) + ", top-level population " + sci(r.max_top_level_population));
  for (std::size_t i = 1; i < reports.size(); ++i) {
    o.check(reports[i].max_leakage < reports[i - 1].max_leakage,
            "leakage decreases from ratio " + fmt(reports[i - 1].chi_ratio, 0) + " to " + fmt(reports[i].chi_ratio, 0));
    o.check(reports[i].max_amplitude_deviation < reports[i - 1].max_amplitude_deviation,
            "amplitude deviation decreases from ratio " + fmt(reports[i - 1].chi_ratio, 0) + " to " +
                fmt(reports[i].chi_ratio, 0));
  }
  for (const auto& r : reports)
    o.check(!r.cutoff_insufficient, "cutoff 4 adequate at ratio " + fmt(r.chi_ratio, 0));
  o.check(elapsed < 60.0, "runtime " + fmt(elapsed, 3) + " s < 60 s");
  o.summary = "RWA truncation improves monotonically with chi/eps";
  return o;
}

Outcome criterion9() {
  Outcome o;
  const auto vac = quadrature_variances(StateVector::vacuum(FockBasis(2, 1)));
  o.check(vac.dX2 == std::vector<double>{0.25, 0.25} && vac.dY2 == std::vector<double>{0.25, 0.25},
          "vacuum: all variances exactly 1/4");
  const auto one = quadrature_variances(StateVector::basis_state(FockBasis(2, 1), {1, 0}));
  o.check(one.dX2[0] == 0.75 && one.dY2[0] == 0.75, "|10>: mode 1 variances (" + fmt(one.dX2[0], 12) + ", " +
                                                        fmt(one.dY2[0], 12) + ")");
  Vector c(2);
  c << std::sqrt(3.0) / 2.0, 0.5;
  const double dx = quadrature_variances(StateVector(FockBasis(1, 1), c)).dX2[0];
  o.check(std::abs(dx - 3.0 / 16.0) <= 1e-12, "(sqrt3/2)|0> + (1/2)|1>: dX^2 - 3/16 = " + sci(dx - 3.0 / 16.0));
  o.summary = "variance unit values";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance checks for the qscissors library"};
  std::vector<int> selected;
  std::string out_dir = ".";
  bool verbose = true;
  app.add_option("-c,--criterion", selected, "Criterion numbers to run (default: all)")->check(CLI::Range(1, 9));
  app.add_option("--out", out_dir, "Directory for report files");
  app.add_flag("!--quiet", verbose, "Print only the pass/fail lines");
  CLI11_PARSE(app, argc, argv);
  if (selected.empty()) selected = {1, 2, 3, 4, 5, 6, 7, 8, 9};

  const std::vector<std::function<Outcome()>> checks = {
      criterion1, criterion2, criterion3, criterion4, criterion5,
      [&] { return criterion6(out_dir); }, criterion7, criterion8, criterion9};

  bool all_pass = true;
  for (int n : selected) {
    Outcome o;
    try {
      o = checks.at(std::size_t(n - 1))();
    } catch (const std::exception& e) {
      o.pass = false;
      o.summary = std::string("error: ") + e.what();
    }
    all_pass = all_pass && o.pass;
    std::cout << "criterion " << n << ": " << (o.pass ? "PASS" : "FAIL") << "  " << o.summary << '\n';
    if (verbose)
      for (const auto& d : o.details) std::cout << "    " << d << '\n';
  }
  return all_pass ? 0 : 1;
}

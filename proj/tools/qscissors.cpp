// Batch front-end: evolve, variances, windows, validate-rwa, figure, reconcile.
// Exit status: 0 on success, 2 for configuration or usage errors, 1 for
// numerical or I/O failures.

#include "qscissors/qscissors.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace qscissors;

namespace {

struct Globals {
  std::string config_path;
  std::optional<std::string> out_dir;
  std::optional<double> dt_us;
  std::optional<double> t_max_us;
  std::optional<std::string> path;
  bool quiet = false;
};

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("--config", "cannot open \"" + path + "\"");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunConfig load_config(const Globals& g) {
  if (g.config_path.empty()) throw ConfigError("--config", "this command needs a configuration file");
  RunConfig c = parse_config(read_text(g.config_path));
  if (g.out_dir) c.out_dir = *g.out_dir;
  if (g.dt_us) c.dt_us = *g.dt_us;
  if (g.t_max_us) c.t_max_us = *g.t_max_us;
  if (g.path) c.path = parse_path(*g.path);
  validate_config(c);
  return c;
}

void report(const Globals& g, const std::string& line) {
  if (!g.quiet) std::cout << line << '\n';
}

void write(const Globals& g, const fs::path& path, const std::string& content) {
  write_file_atomic(path, content);
  report(g, "wrote " + path.string());
}

void summarize_windows(const Globals& g, const std::vector<SqueezingWindow>& windows) {
  if (g.quiet) return;
  std::cout << windows.size() << " squeezing window(s)\n";
  for (const auto& w : windows) {
    std::cout << "  mode " << (w.mode + 1) << ' ' << quadrature_name(w.quadrature) << "  " << format_number(w.t_start_us)
              << (w.open_start ? " (edge)" : "") << " .. " << format_number(w.t_end_us) << (w.open_end ? " (edge)" : "")
              << " us, min " << format_number(w.v_min) << " at " << format_number(w.t_min_us) << " us";
    if (!w.refined) std::cout << "  [unrefined: " << w.note << ']';
    std::cout << '\n';
  }
}

void cmd_evolve(const Globals& g) {
  const RunConfig c = load_config(g);
  const VarianceSource src = make_source(c);
  std::vector<double> times = time_grid_us(c.t_max_us, c.dt_us);
  std::vector<StateVector> states;
  states.reserve(times.size());
  for (double t : times) states.push_back(src.state(us_to_s(t)));
  write(g, fs::path(c.out_dir) / "amplitudes.csv", amplitudes_csv(times, states));
}

void cmd_variances(const Globals& g) {
  const RunConfig c = load_config(g);
  const VarianceSeries s = scan_variances(make_source(c), c.t_max_us, c.dt_us);
  write(g, fs::path(c.out_dir) / "series.csv", series_csv(s));
}

void cmd_windows(const Globals& g) {
  const RunConfig c = load_config(g);
  const RunResult r = run_variances(c);
  write(g, fs::path(c.out_dir) / "windows.csv", windows_csv(r.windows));
  summarize_windows(g, r.windows);
}

void cmd_validate_rwa(const Globals& g, const std::vector<double>& ratios) {
  const RunConfig c = load_config(g);
  if (c.cutoff < 3) throw ConfigError("cutoff", "validate-rwa needs cutoff >= 3 to represent leakage");
  const auto reports = rwa_validation(make_spec(c), c.cutoff, c.t_max_us, ratios, c.dt_us);
  write(g, fs::path(c.out_dir) / "rwa.csv", rwa_csv(reports));
  for (const auto& r : reports) {
    report(g, "chi/eps " + format_number(r.chi_ratio) + ": leakage " + format_number(r.max_leakage) +
                  ", amplitude deviation " + format_number(r.max_amplitude_deviation) +
                  (r.cutoff_insufficient ? "  [cutoff too small: top level populated]" : ""));
  }
}

void cmd_figure(const Globals& g, const std::string& id) {
  const fs::path out = g.out_dir.value_or(".");
  const double dt = g.dt_us.value_or(0.01);
  std::vector<std::string_view> ids;
  if (id == "all")
    ids.assign(kFigureIds.begin(), kFigureIds.end());
  else
    ids.push_back(id);
  for (std::string_view one : ids) {
    figure_config(one, dt);  // rejects unknown ids before any work
    const FigureOutput f = run_figure(one, out, dt);
    report(g, "wrote " + f.series_path.string());
    report(g, "wrote " + f.windows_path.string());
    summarize_windows(g, f.result.windows);
  }
}

void cmd_reconcile(const Globals& g, double alpha1, double alpha, double epsilon, double t_max_us) {
  const auto entries = reconciliation_report(alpha1, alpha, epsilon, us_to_s(t_max_us));
  write(g, fs::path(g.out_dir.value_or(".")) / "reconciliation.csv", reconciliation_csv(entries));
  for (const auto& e : entries) report(g, e.model + " " + e.expression + ": " + status_name(e.status));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Squeezing in pumped Kerr couplers with quantum-scissors truncation"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--config", g.config_path, "JSON run configuration");
  app.add_option("--out", g.out_dir, "Output directory (overrides out_dir)");
  app.add_option("--dt-us", g.dt_us, "Grid step in microseconds")->check(CLI::PositiveNumber);
  app.add_option("--t-max-us", g.t_max_us, "Horizon in microseconds")->check(CLI::PositiveNumber);
  app.add_option("--path", g.path, "Computation path")
      ->check(CLI::IsMember({"analytic", "truncated-ode", "full"}));
  app.add_flag("--quiet", g.quiet, "Suppress progress output");

  auto* evolve = app.add_subcommand("evolve", "Write state amplitudes on the time grid (amplitudes.csv)");
  auto* variances = app.add_subcommand("variances", "Write quadrature variance series (series.csv)");
  auto* windows = app.add_subcommand("windows", "Detect squeezing windows (windows.csv)");

  auto* rwa = app.add_subcommand("validate-rwa", "Compare full Fock-space and qubit-truncated dynamics (rwa.csv)");
  std::vector<double> ratios = {50.0, 200.0, 1000.0};
  rwa->add_option("--chi-ratios", ratios, "Kerr-to-coupling ratios")->delimiter(',')->check(CLI::PositiveNumber);

  auto* figure = app.add_subcommand("figure", "Reproduce a figure bundle (<id>_series.csv, <id>_windows.csv)");
  std::string figure_id;
  figure->add_option("id", figure_id, "fig1a, fig1b, fig2a, fig2b, fig3 or all")->required();

  auto* reconcile = app.add_subcommand("reconcile", "Compare published variance formulas with the amplitude path");
  double alpha1 = 5e5, alpha = 5e5, epsilon = 5e5, horizon_us = 10.0;
  reconcile->add_option("--alpha1", alpha1, "Single-pump amplitude (1/s)")->check(CLI::PositiveNumber);
  reconcile->add_option("--alpha", alpha, "Two-pump amplitude (1/s)")->check(CLI::PositiveNumber);
  reconcile->add_option("--epsilon", epsilon, "Coupling (1/s)")->check(CLI::PositiveNumber);
  reconcile->add_option("--horizon-us", horizon_us, "Comparison horizon (us)")->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*evolve) cmd_evolve(g);
    if (*variances) cmd_variances(g);
    if (*windows) cmd_windows(g);
    if (*rwa) cmd_validate_rwa(g, ratios);
    if (*figure) cmd_figure(g, figure_id);
    if (*reconcile) cmd_reconcile(g, alpha1, alpha, epsilon, horizon_us);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

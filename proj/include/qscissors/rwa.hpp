// Quantifies how well the qubit-truncated dynamics track the full Fock-space
// dynamics as the Kerr nonlinearity grows relative to the couplings.

#pragma once

#include "qscissors/propagation.hpp"
#include "qscissors/sources.hpp"
#include "qscissors/squeezing.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <stdexcept>
#include <vector>

namespace qscissors {

struct RwaReport {
  double chi_ratio = 0.0;
  double max_leakage = 0.0;
  double max_amplitude_deviation = 0.0;
  double horizon_us = 0.0;
  /// Largest population on any basis state with some mode at the cutoff.
  double max_top_level_population = 0.0;
  /// Set when that population exceeds 1e-6: the cutoff cannot bound leakage.
  bool cutoff_insufficient = false;
};

inline constexpr double kTopLevelPopulationLimit = 1e-6;

/// Starting state used by the validation and the CLI: vacuum for a pumped
/// coupler, one photon in the first mode otherwise.
inline StateVector default_initial_state(const SystemSpec& spec, const FockBasis& basis) {
  if (spec.has_pumps()) return StateVector::vacuum(basis);
  Occupation occ(basis.modes(), 0);
  occ[0] = 1;
  return StateVector::basis_state(basis, occ);
}

/// Sets every chi_p = ratio * |eps| and compares the full-space run at
/// `cutoff` against the qubit-subspace run of the same coupler.
inline RwaReport rwa_single(const SystemSpec& spec, std::size_t cutoff, double t_max_us, double chi_ratio,
                            double dt_us = 0.01) {
  SystemSpec full = spec;
  const double chi = chi_ratio * std::abs(spec.epsilon);
  std::fill(full.chi.begin(), full.chi.end(), chi);

  const FockBasis big(spec.modes(), cutoff);
  const FockBasis small(spec.modes(), 1);
  const SpectralTrajectory full_run(build_hamiltonian(full, big), default_initial_state(spec, big));
  const SpectralTrajectory truncated_run(build_hamiltonian(full, small), default_initial_state(spec, small));

  std::vector<std::size_t> top_states;
  for (std::size_t j = 0; j < big.dimension(); ++j) {
    for (std::size_t p = 0; p < big.modes(); ++p) {
      if (big.level(j, p) == cutoff) {
        top_states.push_back(j);
        break;
      }
    }
  }

  RwaReport r;
  r.chi_ratio = chi_ratio;
  r.horizon_us = t_max_us;
  for (double t_us : time_grid_us(t_max_us, dt_us)) {
    const double t = us_to_s(t_us);
    const StateVector psi = full_run.at(t);
    const QubitProjection proj = project_qubit(psi);
    const Vector ref = truncated_run.at(t).amplitudes();
    r.max_leakage = std::max(r.max_leakage, proj.leakage);
    r.max_amplitude_deviation = std::max(r.max_amplitude_deviation, (proj.amplitudes - ref).cwiseAbs().maxCoeff());
    double top = 0.0;
    for (std::size_t j : top_states) top += std::norm(psi[j]);
    r.max_top_level_population = std::max(r.max_top_level_population, top);
  }
  r.cutoff_insufficient = r.max_top_level_population > kTopLevelPopulationLimit;
  return r;
}

/// One report per ratio, evaluated concurrently.
inline std::vector<RwaReport> rwa_validation(const SystemSpec& spec, std::size_t cutoff, double t_max_us,
                                             const std::vector<double>& chi_ratios, double dt_us = 0.01) {
  spec.validate();
  if (cutoff < 3) throw std::invalid_argument("rwa_validation: cutoff must be >= 3");
  if (std::abs(spec.epsilon) == 0.0) throw std::invalid_argument("rwa_validation: epsilon must be nonzero");
  for (double r : chi_ratios)
    if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument("rwa_validation: chi ratios must be positive");

  std::vector<std::future<RwaReport>> jobs;
  jobs.reserve(chi_ratios.size());
  for (double ratio : chi_ratios)
    jobs.push_back(std::async(std::launch::async, rwa_single, std::cref(spec), cutoff, t_max_us, ratio, dt_us));
  std::vector<RwaReport> out;
  out.reserve(jobs.size());
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

}  // namespace qscissors

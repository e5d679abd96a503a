// Variance evaluators over time: closed-form amplitudes, published formulas,
// exact spectral propagation, and adaptive integration of the amplitude
// equations. Each is a callable t[s] -> QuadratureVariances plus a tag.

#pragma once

#include "qscissors/closed_form.hpp"
#include "qscissors/observables.hpp"
#include "qscissors/ode.hpp"
#include "qscissors/printed_variances.hpp"
#include "qscissors/propagation.hpp"

#include <cmath>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace qscissors {

inline constexpr double kSecondsPerMicrosecond = 1e-6;

inline double us_to_s(double t_us) noexcept { return t_us * kSecondsPerMicrosecond; }
inline double s_to_us(double t_s) noexcept { return t_s / kSecondsPerMicrosecond; }

/// Produces the quantum state at a time, when the source has one.
using StateEvaluator = std::function<StateVector(double)>;

struct VarianceSource {
  std::size_t modes = 0;
  std::string provenance;
  std::function<QuadratureVariances(double)> evaluate;  // t in seconds
  StateEvaluator state;                                 // empty for formula-only sources
};

inline VarianceSource analytic_source(const AnalyticModel& model) {
  auto state = [model](double t) { return model_state(model, t); };
  return {model_modes(model), "analytic:" + model_name(model),
          [state](double t) { return quadrature_variances(state(t)); }, state};
}

/// Single-pump published variance formulas (corrected dX2_2 by default).
inline VarianceSource printed_single_pump_source(double alpha1,
                                                 SinglePumpReading reading = SinglePumpReading::Corrected) {
  return {2, reading == SinglePumpReading::Corrected ? "printed:single-pump" : "printed:single-pump-as-printed",
          [alpha1, reading](double t) { return analytic_variances_single_pump(alpha1, t, reading); }, {}};
}

/// Two-pump published variance formulas; diagnostic only.
inline VarianceSource printed_two_pump_source(double alpha, double epsilon, bool corrected_xi = false) {
  return {2, corrected_xi ? "printed:two-pump-corrected-xi" : "printed:two-pump",
          [alpha, epsilon, corrected_xi](double t) {
            return analytic_variances_two_pump(alpha, epsilon, t, corrected_xi);
          },
          {}};
}

inline VarianceSource no_pump_formula_source(double epsilon) {
  return {2, "printed:no-pump", [epsilon](double t) { return analytic_variances_no_pump(epsilon, t); }, {}};
}

/// Exact propagation of `psi0` under the coupler Hamiltonian on `cutoff`.
inline VarianceSource spectral_source(const SystemSpec& spec, std::size_t cutoff, const StateVector& psi0) {
  const FockBasis basis(spec.modes(), cutoff);
  auto trajectory = std::make_shared<const SpectralTrajectory>(build_hamiltonian(spec, basis), psi0);
  auto state = [trajectory](double t) { return trajectory->at(t); };
  return {spec.modes(), "spectral:cutoff-" + std::to_string(cutoff),
          [state](double t) { return quadrature_variances(state(t)); }, state};
}

/// Adaptive integration with cached checkpoints every `checkpoint_s`. A
/// state at time t is always integrated from checkpoint floor(t/h), and
/// checkpoint k from checkpoint k-1, so results do not depend on the order
/// of queries. Not safe for concurrent use.
class OdeTrajectory {
 public:
  OdeTrajectory(HamiltonianMatrix h, StateVector psi0, double tol, double checkpoint_s)
      : h_(std::move(h)), tol_(tol), step_(checkpoint_s) {
    if (!(checkpoint_s > 0.0)) throw std::invalid_argument("OdeTrajectory: checkpoint spacing must be positive");
    checkpoints_.push_back(std::move(psi0));
  }

  StateVector at(double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("OdeTrajectory: time must be nonnegative");
    auto k = static_cast<std::size_t>(std::floor(t / step_));
    while (k > 0 && double(k) * step_ > t) --k;
    while (checkpoints_.size() <= k) {
      const std::size_t j = checkpoints_.size();
      const double target = double(j) * step_;
      checkpoints_.push_back(
          integrate_schrodinger(h_, checkpoints_[j - 1], std::span<const double>(&target, 1), tol_, double(j - 1) * step_)
              .front());
    }
    const double tk = double(k) * step_;
    if (t == tk) return checkpoints_[k];
    return integrate_schrodinger(h_, checkpoints_[k], std::span<const double>(&t, 1), tol_, tk).front();
  }

 private:
  HamiltonianMatrix h_;
  double tol_;
  double step_;
  std::vector<StateVector> checkpoints_;
};

inline VarianceSource ode_source(const SystemSpec& spec, std::size_t cutoff, const StateVector& psi0, double tol,
                                 double checkpoint_s = 0.1 * kSecondsPerMicrosecond) {
  const FockBasis basis(spec.modes(), cutoff);
  auto trajectory = std::make_shared<OdeTrajectory>(build_hamiltonian(spec, basis), psi0, tol, checkpoint_s);
  auto state = [trajectory](double t) { return trajectory->at(t); };
  return {spec.modes(), "ode:cutoff-" + std::to_string(cutoff),
          [state](double t) { return quadrature_variances(state(t)); }, state};
}

}  // namespace qscissors

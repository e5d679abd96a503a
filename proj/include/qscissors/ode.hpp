// Adaptive integration of the amplitude equations i dc/dt = H c with an
// embedded Dormand-Prince 5(4) pair.

#pragma once

#include "qscissors/fock.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qscissors {

class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, double time_reached)
      : std::runtime_error(what + " (time reached " + std::to_string(time_reached) + " s)"),
        time_reached_(time_reached) {}

  double time_reached() const noexcept { return time_reached_; }

 private:
  double time_reached_;
};

namespace detail {

using OdeState = std::vector<Complex>;

inline OdeState to_ode_state(const Vector& v) { return OdeState(v.data(), v.data() + v.size()); }

inline Vector from_ode_state(const OdeState& s) {
  return Eigen::Map<const Vector>(s.data(), static_cast<Eigen::Index>(s.size()));
}

}  // namespace detail

/// Integrates from psi0 at t = `t0` through each entry of `times` (seconds,
/// nondecreasing, all >= t0). `tol` is the target accuracy of the returned
/// amplitudes; each step is held to tol/10, relative and absolute.
inline std::vector<StateVector> integrate_schrodinger(const HamiltonianMatrix& h, const StateVector& psi0,
                                                      std::span<const double> times, double tol,
                                                      double t0 = 0.0) {
  namespace odeint = boost::numeric::odeint;
  if (!(tol > 0.0 && tol <= 1e-3)) throw std::invalid_argument("integrate_ode: tol must lie in (0, 1e-3]");
  if (!(psi0.basis() == h.basis)) throw std::invalid_argument("integrate_ode: state and Hamiltonian bases differ");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] >= t0)) throw std::invalid_argument("integrate_ode: times must be >= the start time");
    if (i > 0 && times[i] < times[i - 1]) throw std::invalid_argument("integrate_ode: times must be nondecreasing");
  }

  std::vector<StateVector> out;
  out.reserve(times.size());
  if (times.empty()) return out;

  const Matrix& hm = h.entries;
  const double scale = std::max(h.max_abs(), 1.0);
  double last_t = t0;
  auto rhs = [&](const detail::OdeState& c, detail::OdeState& dcdt, double t) {
    last_t = t;
    Eigen::Map<const Vector> cv(c.data(), static_cast<Eigen::Index>(c.size()));
    Eigen::Map<Vector> dv(dcdt.data(), static_cast<Eigen::Index>(dcdt.size()));
    dv.noalias() = Complex(0.0, -1.0) * (hm * cv);
  };

  // odeint's integrate_times needs the start time in the sequence.
  std::vector<double> grid;
  grid.reserve(times.size() + 1);
  grid.push_back(t0);
  grid.insert(grid.end(), times.begin(), times.end());

  std::vector<Vector> states;
  states.reserve(grid.size());
  auto observer = [&](const detail::OdeState& c, double) { states.push_back(detail::from_ode_state(c)); };

  detail::OdeState c = detail::to_ode_state(psi0.amplitudes());
  const double step_tol = 0.1 * tol;
  auto stepper = odeint::make_controlled(step_tol, step_tol, odeint::runge_kutta_dopri5<detail::OdeState>());
  const double dt0 = 1e-2 / scale;
  try {
    odeint::integrate_times(stepper, rhs, c, grid.begin(), grid.end(), dt0, observer,
                            odeint::max_step_checker(1000000));
  } catch (const odeint::odeint_error& e) {
    throw IntegrationError(std::string("integrate_ode: step size control failed: ") + e.what(), last_t);
  }
  if (states.size() != grid.size()) throw IntegrationError("integrate_ode: integration stopped early", last_t);

  // Norm is not conserved exactly by an explicit RK step; allow drift that
  // scales with the requested tolerance.
  const double norm_tol = std::max(StateVector::kNormTolerance, 1e3 * tol);
  for (std::size_t i = 1; i < states.size(); ++i) {
    const double n = states[i].norm();
    if (!std::isfinite(n) || std::abs(n - 1.0) > norm_tol)
      throw IntegrationError("integrate_ode: norm drifted to " + std::to_string(n), grid[i]);
    out.emplace_back(h.basis, std::move(states[i]), norm_tol);
  }
  return out;
}

/// Builds H from `spec` on `basis` and integrates the coupled amplitude
/// equations. Handles asymmetric couplings and pumps alike.
inline std::vector<StateVector> integrate_ode(const SystemSpec& spec, const FockBasis& basis, const StateVector& psi0,
                                              std::span<const double> times, double tol) {
  return integrate_schrodinger(build_hamiltonian(spec, basis), psi0, times, tol);
}

}  // namespace qscissors

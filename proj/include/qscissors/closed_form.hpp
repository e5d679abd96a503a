// Closed-form truncated-state amplitudes for the pumped Kerr couplers.
//
// All four models live on the qubit subspace (occupations <= 1 per mode) and
// are written in the cutoff-1 basis ordering: |00>, |01>, |10>, |11> for two
// modes and |000> ... |111> for three. Rates are in 1/s, times in s.

#pragma once

#include "qscissors/fock.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <variant>

namespace qscissors {

using TwoModeAmplitudes = std::array<Complex, 4>;
using ThreeModeAmplitudes = std::array<Complex, 8>;

/// How to read the single-pump amplitudes.
///  - Corrected: x1 = alpha1/2 and c11 = i(cos x sin y/sqrt5 - sin x cos y).
///    This is the exact solution of the four-level chain |00>-|10>-|01>-|11>
///    with all couplings equal to alpha1.
///  - AsPrinted: x1 = alpha1 and c11 = i(cos x sin y/sqrt5 + sin x cos y).
///    Not normalized; kept for comparison only.
enum class SinglePumpReading { Corrected, AsPrinted };

namespace detail {

inline void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be positive and finite");
}

}  // namespace detail

/// Single pump on mode 1 with epsilon = alpha1, starting from |00>.
inline TwoModeAmplitudes analytic_two_mode_single_pump(double alpha1, double t,
                                                       SinglePumpReading reading = SinglePumpReading::Corrected) {
  detail::require_positive(alpha1, "alpha1");
  const double inv_sqrt5 = 1.0 / std::sqrt(5.0);
  const double x = (reading == SinglePumpReading::Corrected ? 0.5 : 1.0) * alpha1 * t;
  const double y = std::sqrt(5.0) * x;
  const double cx = std::cos(x), sx = std::sin(x), cy = std::cos(y), sy = std::sin(y);
  const Complex i{0.0, 1.0};
  const double c11_sign = reading == SinglePumpReading::Corrected ? -1.0 : 1.0;
  return {
      cx * cy + inv_sqrt5 * sx * sy,
      -2.0 * inv_sqrt5 * sx * sy,
      -i * (2.0 * inv_sqrt5) * cx * sy,
      i * (inv_sqrt5 * cx * sy + c11_sign * sx * cy),
  };
}

/// Equal pumps alpha on both modes, coupling epsilon, starting from |00>.
/// lambda = sqrt(16 alpha^2 + epsilon^2).
inline TwoModeAmplitudes analytic_two_mode_two_pump(double alpha, double epsilon, double t) {
  detail::require_positive(alpha, "alpha");
  detail::require_positive(epsilon, "epsilon");
  const double lambda = std::sqrt(16.0 * alpha * alpha + epsilon * epsilon);
  const Complex i{0.0, 1.0};
  const Complex drift = std::polar(1.0, -0.5 * epsilon * t);
  const double half = 0.5 * lambda * t;
  const Complex c00 = 0.5 * (1.0 + (std::cos(half) + i * (epsilon / lambda) * std::sin(half)) * drift);
  const Complex c01 = -i * (2.0 * alpha / lambda) * std::sin(half) * drift;
  return {c00, c01, c01, c00 - 1.0};
}

/// Unpumped coupler started in |10>: -i sin(eps t)|01> + cos(eps t)|10>.
inline TwoModeAmplitudes analytic_two_mode_no_pump(double epsilon, double t) {
  detail::require_positive(epsilon, "epsilon");
  const double phase = epsilon * t;
  return {Complex{}, Complex(0.0, -std::sin(phase)), Complex(std::cos(phase), 0.0), Complex{}};
}

/// Three modes with alpha1 = alpha2 = alpha3 = epsilon, starting from |000>.
inline ThreeModeAmplitudes analytic_three_mode_symmetric(double epsilon, double t) {
  detail::require_positive(epsilon, "epsilon");
  const double s7 = std::sqrt(7.0);
  const double s3 = std::sqrt(3.0);
  const double et = epsilon * t;
  const Complex i{0.0, 1.0};
  const double sin7 = std::sin(s7 * et), cos7 = std::cos(s7 * et);
  const double sin3 = std::sin(s3 * et), cos3 = std::cos(s3 * et);
  const Complex c000 = std::polar(1.0, -2.0 * et) * (i * (sin7 / s7) + 0.5 * cos7) + 0.5 * cos3;
  const Complex c001 = -(s7 / 14.0) * (i * std::cos(2.0 * et) * sin7 + std::sin(2.0 * et) * sin7) - i * (s3 / 6.0) * sin3;
  const Complex c011 = c001 + i * (s3 / 3.0) * sin3;
  const Complex c111 = c000 - cos3;
  return {c000, c001, c001, c011, c001, c011, c011, c111};
}

struct TwoModeSinglePump {
  double alpha1;
  SinglePumpReading reading = SinglePumpReading::Corrected;
};
struct TwoModeTwoPump {
  double alpha;
  double epsilon;
};
struct TwoModeNoPump {
  double epsilon;
};
struct ThreeModeSymmetric {
  double epsilon;
};

using AnalyticModel = std::variant<TwoModeSinglePump, TwoModeTwoPump, TwoModeNoPump, ThreeModeSymmetric>;

inline std::size_t model_modes(const AnalyticModel& model) {
  return std::holds_alternative<ThreeModeSymmetric>(model) ? 3 : 2;
}

inline std::string model_name(const AnalyticModel& model) {
  struct Visitor {
    std::string operator()(const TwoModeSinglePump& m) const {
      return m.reading == SinglePumpReading::Corrected ? "two-mode-single-pump" : "two-mode-single-pump-as-printed";
    }
    std::string operator()(const TwoModeTwoPump&) const { return "two-mode-two-pump"; }
    std::string operator()(const TwoModeNoPump&) const { return "two-mode-no-pump"; }
    std::string operator()(const ThreeModeSymmetric&) const { return "three-mode-symmetric"; }
  };
  return std::visit(Visitor{}, model);
}

/// The coupler a model describes (Kerr terms zero; they vanish on the qubit
/// subspace anyway).
inline SystemSpec model_spec(const AnalyticModel& model) {
  struct Visitor {
    SystemSpec operator()(const TwoModeSinglePump& m) const { return {{0.0, 0.0}, m.alpha1, {m.alpha1, 0.0}}; }
    SystemSpec operator()(const TwoModeTwoPump& m) const { return {{0.0, 0.0}, m.epsilon, {m.alpha, m.alpha}}; }
    SystemSpec operator()(const TwoModeNoPump& m) const { return {{0.0, 0.0}, m.epsilon, {0.0, 0.0}}; }
    SystemSpec operator()(const ThreeModeSymmetric& m) const {
      return {{0.0, 0.0, 0.0}, m.epsilon, {m.epsilon, m.epsilon, m.epsilon}};
    }
  };
  return std::visit(Visitor{}, model);
}

/// Closed-form state at time t on the cutoff-1 basis.
inline StateVector model_state(const AnalyticModel& model, double t) {
  struct Visitor {
    double t;
    Vector operator()(const TwoModeSinglePump& m) const {
      const auto c = analytic_two_mode_single_pump(m.alpha1, t, m.reading);
      return Eigen::Map<const Vector>(c.data(), 4);
    }
    Vector operator()(const TwoModeTwoPump& m) const {
      const auto c = analytic_two_mode_two_pump(m.alpha, m.epsilon, t);
      return Eigen::Map<const Vector>(c.data(), 4);
    }
    Vector operator()(const TwoModeNoPump& m) const {
      const auto c = analytic_two_mode_no_pump(m.epsilon, t);
      return Eigen::Map<const Vector>(c.data(), 4);
    }
    Vector operator()(const ThreeModeSymmetric& m) const {
      const auto c = analytic_three_mode_symmetric(m.epsilon, t);
      return Eigen::Map<const Vector>(c.data(), 8);
    }
  };
  const FockBasis basis(model_modes(model), 1);
  Vector v = std::visit(Visitor{t}, model);
  // The as-printed single-pump reading is not normalized; rescale it so
  // observables can still be evaluated on it.
  const bool as_printed = std::holds_alternative<TwoModeSinglePump>(model) &&
                          std::get<TwoModeSinglePump>(model).reading == SinglePumpReading::AsPrinted;
  return as_printed ? StateVector::normalized(basis, std::move(v)) : StateVector(basis, std::move(v));
}

/// Initial state of a model: |10> for the unpumped coupler, vacuum otherwise.
inline StateVector model_initial_state(const AnalyticModel& model) { return model_state(model, 0.0); }

}  // namespace qscissors

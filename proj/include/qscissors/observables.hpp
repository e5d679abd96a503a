// Quadrature operators X_p = (a_p + a_p^dagger)/2, Y_p = (a_p - a_p^dagger)/(2i)
// and their variances on a state.

#pragma once

#include "qscissors/fock.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace qscissors {

/// Variance of either quadrature in the vacuum. Squeezing means strictly below.
inline constexpr double kVacuumVariance = 0.25;

enum class Quadrature { X, Y };

inline const char* quadrature_name(Quadrature q) { return q == Quadrature::X ? "X" : "Y"; }

struct QuadratureVariances {
  std::vector<double> dX2;
  std::vector<double> dY2;

  std::size_t modes() const noexcept { return dX2.size(); }
  double get(std::size_t mode, Quadrature q) const { return q == Quadrature::X ? dX2.at(mode) : dY2.at(mode); }
};

inline bool is_squeezed(double variance) noexcept { return variance < kVacuumVariance; }

struct QuadratureOperators {
  Matrix X;
  Matrix Y;
};

inline QuadratureOperators quadrature_operators(const FockBasis& basis, std::size_t mode) {
  const Matrix a = annihilation_matrix(basis, mode);
  const Matrix ad = a.adjoint();
  const Complex i{0.0, 1.0};
  return {0.5 * (a + ad), (a - ad) / (2.0 * i)};
}

/// <psi|op|psi> for a Hermitian operator. An imaginary residue above 1e-12
/// signals a non-Hermitian operator or a corrupted state and is rejected.
inline double expectation(const Matrix& op, const StateVector& state) {
  const Complex v = state.amplitudes().dot(op * state.amplitudes());
  if (std::abs(v.imag()) > 1e-12)
    throw std::domain_error("expectation: imaginary residue " + std::to_string(v.imag()));
  return v.real();
}

namespace detail {

inline void require_normalized(const StateVector& state) {
  const double n = state.norm();
  if (!(std::abs(n - 1.0) <= 1e-9))
    throw std::invalid_argument("quadrature_variances: state norm " + std::to_string(n) + " is not 1");
}

}  // namespace detail

/// Variances from the normal-ordered moments <a>, <a^2>, <a^dagger a>:
///   dX^2 = 1/4 + (<n> + Re<a^2>)/2 - (Re<a>)^2
///   dY^2 = 1/4 + (<n> - Re<a^2>)/2 - (Im<a>)^2
/// The 1/4 is the bosonic commutator, so no cutoff-edge truncation of a a^dagger
/// enters, and a mode in vacuum gives exactly 1/4.
inline QuadratureVariances quadrature_variances(const StateVector& state) {
  detail::require_normalized(state);
  const FockBasis& basis = state.basis();
  const std::size_t M = basis.modes();
  QuadratureVariances out{std::vector<double>(M), std::vector<double>(M)};
  for (std::size_t p = 0; p < M; ++p) {
    const std::size_t s = basis.stride(p);
    Complex a1{}, a2{};
    double n = 0.0;
    for (std::size_t j = 0; j < basis.dimension(); ++j) {
      const std::size_t k = basis.level(j, p);
      if (k == 0) continue;
      const Complex cj = state[j];
      n += double(k) * std::norm(cj);
      // <psi|a|psi> = sum_j conj(c_{j-s}) sqrt(k) c_j
      a1 += std::conj(state[j - s]) * std::sqrt(double(k)) * cj;
      if (k >= 2) a2 += std::conj(state[j - 2 * s]) * std::sqrt(double(k) * double(k - 1)) * cj;
    }
    out.dX2[p] = kVacuumVariance + 0.5 * (n + a2.real()) - a1.real() * a1.real();
    out.dY2[p] = kVacuumVariance + 0.5 * (n - a2.real()) - a1.imag() * a1.imag();
  }
  return out;
}

/// Same quantities through explicit X/Y matrices: <X^2> - <X>^2. Matches
/// quadrature_variances whenever the top occupation level is empty, e.g.
/// for a qubit-subspace state embedded at cutoff 2.
inline QuadratureVariances quadrature_variances_from_operators(const StateVector& state) {
  detail::require_normalized(state);
  const std::size_t M = state.basis().modes();
  QuadratureVariances out{std::vector<double>(M), std::vector<double>(M)};
  for (std::size_t p = 0; p < M; ++p) {
    const QuadratureOperators ops = quadrature_operators(state.basis(), p);
    const double x = expectation(ops.X, state);
    const double y = expectation(ops.Y, state);
    out.dX2[p] = expectation(ops.X * ops.X, state) - x * x;
    out.dY2[p] = expectation(ops.Y * ops.Y, state) - y * y;
  }
  return out;
}

}  // namespace qscissors

// Exact unitary propagation for a time-independent Hamiltonian via its
// eigendecomposition: |psi(t)> = V exp(-i Lambda t) V^dagger |psi(0)>.

#pragma once

#include "qscissors/fock.hpp"

#include <Eigen/Eigenvalues>

#include <span>
#include <stdexcept>
#include <vector>

namespace qscissors {

class SpectralPropagator {
 public:
  explicit SpectralPropagator(const HamiltonianMatrix& h) : basis_(h.basis) {
    if (!h.is_hermitian())
      throw std::domain_error("SpectralPropagator: Hamiltonian is not Hermitian (defect " +
                              std::to_string(h.hermiticity_defect()) + ")");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h.entries);
    if (solver.info() != Eigen::Success) throw std::runtime_error("SpectralPropagator: eigendecomposition failed");
    eigenvalues_ = solver.eigenvalues();
    eigenvectors_ = solver.eigenvectors();
  }

  const FockBasis& basis() const noexcept { return basis_; }
  const Eigen::VectorXd& eigenvalues() const noexcept { return eigenvalues_; }
  const Matrix& eigenvectors() const noexcept { return eigenvectors_; }

  /// max |V Lambda V^dagger - H|.
  double reconstruction_error(const HamiltonianMatrix& h) const {
    const Matrix r = eigenvectors_ * eigenvalues_.cast<Complex>().asDiagonal() * eigenvectors_.adjoint();
    return (r - h.entries).cwiseAbs().maxCoeff();
  }

  /// max |V^dagger V - I|.
  double unitarity_defect() const {
    const Matrix g = eigenvectors_.adjoint() * eigenvectors_;
    return (g - Matrix::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
  }

  /// Coefficients of psi0 in the eigenbasis.
  Vector to_eigenbasis(const StateVector& psi0) const {
    if (!(psi0.basis() == basis_)) throw std::invalid_argument("SpectralPropagator: state lives on a different basis");
    return eigenvectors_.adjoint() * psi0.amplitudes();
  }

  /// Evolves eigenbasis coefficients to time t (seconds). t == 0 returns
  /// the reconstructed initial state.
  Vector evolve_coefficients(const Vector& coeffs, double t) const {
    Vector phased(coeffs.size());
    for (Eigen::Index k = 0; k < coeffs.size(); ++k)
      phased(k) = coeffs(k) * std::polar(1.0, -eigenvalues_(k) * t);
    return eigenvectors_ * phased;
  }

  StateVector evolve(const StateVector& psi0, double t) const {
    if (t == 0.0) return psi0;
    return StateVector(basis_, evolve_coefficients(to_eigenbasis(psi0), t));
  }

 private:
  FockBasis basis_;
  Eigen::VectorXd eigenvalues_;
  Matrix eigenvectors_;
};

/// A decomposed Hamiltonian bound to an initial state, for repeated
/// evaluation at arbitrary times.
class SpectralTrajectory {
 public:
  SpectralTrajectory(const HamiltonianMatrix& h, StateVector psi0)
      : propagator_(h), psi0_(std::move(psi0)), coeffs_(propagator_.to_eigenbasis(psi0_)) {}

  StateVector at(double t) const {
    if (t == 0.0) return psi0_;
    return StateVector(propagator_.basis(), propagator_.evolve_coefficients(coeffs_, t));
  }

  const SpectralPropagator& propagator() const noexcept { return propagator_; }
  const StateVector& initial() const noexcept { return psi0_; }

 private:
  SpectralPropagator propagator_;
  StateVector psi0_;
  Vector coeffs_;
};

inline std::vector<StateVector> propagate(const HamiltonianMatrix& h, const StateVector& psi0,
                                          std::span<const double> times) {
  for (double t : times)
    if (!(t >= 0.0)) throw std::invalid_argument("propagate: times must be nonnegative");
  const SpectralTrajectory trajectory(h, psi0);
  std::vector<StateVector> out;
  out.reserve(times.size());
  for (double t : times) out.push_back(trajectory.at(t));
  return out;
}

}  // namespace qscissors

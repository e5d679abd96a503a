// Multi-mode Fock basis, ladder operators and the coupled Kerr oscillator
// Hamiltonian assembled as a dense Hermitian matrix.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qscissors {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Occupation = std::vector<std::size_t>;

/// Enumerated occupation basis for `modes` bosonic modes, each truncated at
/// `cutoff` photons. Ordering is lexicographic with mode 0 most significant,
/// so for two modes at cutoff 1 the states are |00>, |01>, |10>, |11>.
class FockBasis {
 public:
  FockBasis(std::size_t modes, std::size_t cutoff) : modes_(modes), cutoff_(cutoff) {
    if (modes == 0) throw std::invalid_argument("FockBasis: modes must be >= 1");
    if (cutoff == 0) throw std::invalid_argument("FockBasis: cutoff must be >= 1");
    const std::size_t levels = cutoff + 1;
    const auto limit = static_cast<std::size_t>(std::numeric_limits<Eigen::Index>::max());
    std::size_t dim = 1;
    strides_.assign(modes, 0);
    for (std::size_t p = modes; p-- > 0;) {
      strides_[p] = dim;
      if (dim > limit / levels) {
        throw std::overflow_error("FockBasis: dimension (" + std::to_string(levels) + ")^" +
                                  std::to_string(modes) + " overflows the index type");
      }
      dim *= levels;
    }
    dimension_ = dim;
  }

  std::size_t modes() const noexcept { return modes_; }
  std::size_t cutoff() const noexcept { return cutoff_; }
  std::size_t dimension() const noexcept { return dimension_; }
  Eigen::Index size() const noexcept { return static_cast<Eigen::Index>(dimension_); }

  /// Photon number of `mode` in basis state `index`.
  std::size_t level(std::size_t index, std::size_t mode) const noexcept {
    return (index / strides_[mode]) % (cutoff_ + 1);
  }

  std::size_t stride(std::size_t mode) const noexcept { return strides_[mode]; }

  Occupation occupation(std::size_t index) const {
    if (index >= dimension_) throw std::out_of_range("FockBasis: index out of range");
    Occupation occ(modes_);
    for (std::size_t p = 0; p < modes_; ++p) occ[p] = level(index, p);
    return occ;
  }

  std::size_t index(std::span<const std::size_t> occ) const {
    if (occ.size() != modes_) throw std::invalid_argument("FockBasis: occupation has wrong mode count");
    std::size_t i = 0;
    for (std::size_t p = 0; p < modes_; ++p) {
      if (occ[p] > cutoff_) throw std::out_of_range("FockBasis: occupation above cutoff");
      i += occ[p] * strides_[p];
    }
    return i;
  }

  std::size_t index(std::initializer_list<std::size_t> occ) const {
    return index(std::span<const std::size_t>(occ.begin(), occ.size()));
  }

  /// True when every mode of state `index` holds at most one photon.
  bool is_qubit_state(std::size_t index) const noexcept {
    for (std::size_t p = 0; p < modes_; ++p)
      if (level(index, p) > 1) return false;
    return true;
  }

  friend bool operator==(const FockBasis& a, const FockBasis& b) noexcept {
    return a.modes_ == b.modes_ && a.cutoff_ == b.cutoff_;
  }

 private:
  std::size_t modes_;
  std::size_t cutoff_;
  std::size_t dimension_ = 0;
  std::vector<std::size_t> strides_;
};

inline FockBasis build_basis(std::size_t modes, std::size_t cutoff) { return FockBasis(modes, cutoff); }

/// Coupled Kerr oscillators: per-mode Kerr constants, one shared inter-mode
/// coupling applied to every pair, and per-mode classical pumps (0 = unpumped).
/// Rates are angular frequencies in 1/s with hbar = 1.
struct SystemSpec {
  std::vector<double> chi;
  Complex epsilon{0.0, 0.0};
  std::vector<Complex> pumps;

  std::size_t modes() const noexcept { return chi.size(); }

  void validate() const {
    if (chi.size() != 2 && chi.size() != 3)
      throw std::invalid_argument("SystemSpec: mode count must be 2 or 3, got " + std::to_string(chi.size()));
    if (pumps.size() != chi.size())
      throw std::invalid_argument("SystemSpec: pumps has " + std::to_string(pumps.size()) +
                                  " entries but chi has " + std::to_string(chi.size()));
    for (double c : chi) {
      if (!std::isfinite(c) || c < 0.0) throw std::invalid_argument("SystemSpec: chi must be finite and >= 0");
    }
    auto finite = [](Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); };
    if (!finite(epsilon)) throw std::invalid_argument("SystemSpec: epsilon must be finite");
    for (Complex a : pumps)
      if (!finite(a)) throw std::invalid_argument("SystemSpec: pumps must be finite");
  }

  bool has_pumps() const noexcept {
    for (Complex a : pumps)
      if (a != Complex{}) return true;
    return false;
  }

  /// chi_min / max(|epsilon|, |alpha_p|). Advisory only; the truncation is
  /// expected to hold when this is large. Infinite when all couplings vanish.
  double weak_coupling_ratio() const noexcept {
    double coupling = std::abs(epsilon);
    for (Complex a : pumps) coupling = std::max(coupling, std::abs(a));
    double chi_min = std::numeric_limits<double>::infinity();
    for (double c : chi) chi_min = std::min(chi_min, c);
    if (coupling == 0.0) return std::numeric_limits<double>::infinity();
    return chi_min / coupling;
  }
};

/// Normalized amplitude vector over a FockBasis.
class StateVector {
 public:
  /// Default norm tolerance accepted on construction. Integrator output
  /// passes its own, looser bound.
  static constexpr double kNormTolerance = 1e-9;

  StateVector(FockBasis basis, Vector amplitudes, double norm_tolerance = kNormTolerance)
      : basis_(std::move(basis)), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != basis_.size())
      throw std::invalid_argument("StateVector: amplitude count does not match basis dimension");
    const double n = amplitudes_.norm();
    if (!(std::abs(n - 1.0) <= norm_tolerance))
      throw std::invalid_argument("StateVector: state is not normalized (norm " + std::to_string(n) + ")");
  }

  static StateVector normalized(FockBasis basis, Vector amplitudes) {
    const double n = amplitudes.norm();
    if (!(n > 0.0) || !std::isfinite(n)) throw std::invalid_argument("StateVector: cannot normalize a zero vector");
    amplitudes /= n;
    return StateVector(std::move(basis), std::move(amplitudes));
  }

  static StateVector basis_state(const FockBasis& basis, std::span<const std::size_t> occ) {
    Vector v = Vector::Zero(basis.size());
    v(static_cast<Eigen::Index>(basis.index(occ))) = 1.0;
    return StateVector(basis, std::move(v));
  }

  static StateVector basis_state(const FockBasis& basis, std::initializer_list<std::size_t> occ) {
    return basis_state(basis, std::span<const std::size_t>(occ.begin(), occ.size()));
  }

  static StateVector vacuum(const FockBasis& basis) {
    Vector v = Vector::Zero(basis.size());
    v(0) = 1.0;
    return StateVector(basis, std::move(v));
  }

  const FockBasis& basis() const noexcept { return basis_; }
  const Vector& amplitudes() const noexcept { return amplitudes_; }
  Complex operator[](std::size_t i) const { return amplitudes_(static_cast<Eigen::Index>(i)); }
  Complex amplitude(std::initializer_list<std::size_t> occ) const { return (*this)[basis_.index(occ)]; }
  double norm() const { return amplitudes_.norm(); }

 private:
  FockBasis basis_;
  Vector amplitudes_;
};

struct HamiltonianMatrix {
  FockBasis basis;
  Matrix entries;

  double max_abs() const { return entries.size() == 0 ? 0.0 : entries.cwiseAbs().maxCoeff(); }

  /// max |H - H^dagger| entrywise.
  double hermiticity_defect() const { return (entries - entries.adjoint()).cwiseAbs().maxCoeff(); }

  bool is_hermitian(double rel_tol = 1e-12) const { return hermiticity_defect() <= rel_tol * max_abs(); }
};

/// Truncated annihilation operator on `mode` (0-based): <n-1|a|n> = sqrt(n),
/// identity on the other modes.
inline Matrix annihilation_matrix(const FockBasis& basis, std::size_t mode) {
  if (mode >= basis.modes())
    throw std::out_of_range("annihilation_matrix: mode " + std::to_string(mode) + " out of range");
  Matrix a = Matrix::Zero(basis.size(), basis.size());
  const std::size_t stride = basis.stride(mode);
  for (std::size_t j = 0; j < basis.dimension(); ++j) {
    const std::size_t n = basis.level(j, mode);
    if (n > 0) a(static_cast<Eigen::Index>(j - stride), static_cast<Eigen::Index>(j)) = std::sqrt(double(n));
  }
  return a;
}

inline Matrix creation_matrix(const FockBasis& basis, std::size_t mode) {
  return annihilation_matrix(basis, mode).adjoint();
}

/// H = sum_p (chi_p/2) a+_p a+_p a_p a_p
///   + sum_{p<q} (eps a+_p a_q + eps* a_p a+_q)
///   + sum_p (alpha_p a+_p + alpha_p* a_p)
/// Matrix elements are written straight from the occupation numbers.
inline HamiltonianMatrix build_hamiltonian(const SystemSpec& spec, const FockBasis& basis) {
  spec.validate();
  if (basis.modes() != spec.modes())
    throw std::invalid_argument("build_hamiltonian: basis has " + std::to_string(basis.modes()) +
                                " modes, spec has " + std::to_string(spec.modes()));
  const std::size_t M = spec.modes();
  const std::size_t d = basis.cutoff();
  Matrix h = Matrix::Zero(basis.size(), basis.size());
  auto at = [&](std::size_t row, std::size_t col) -> Complex& {
    return h(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
  };

  for (std::size_t j = 0; j < basis.dimension(); ++j) {
    Complex diag = 0.0;
    for (std::size_t p = 0; p < M; ++p) {
      const double n = double(basis.level(j, p));
      diag += 0.5 * spec.chi[p] * n * (n - 1.0);
    }
    at(j, j) += diag;

    for (std::size_t p = 0; p < M; ++p) {
      const std::size_t n = basis.level(j, p);
      const std::size_t s = basis.stride(p);
      if (n < d) at(j + s, j) += spec.pumps[p] * std::sqrt(double(n + 1));
      if (n > 0) at(j - s, j) += std::conj(spec.pumps[p]) * std::sqrt(double(n));
    }

    for (std::size_t p = 0; p < M; ++p) {
      for (std::size_t q = p + 1; q < M; ++q) {
        const std::size_t np = basis.level(j, p);
        const std::size_t nq = basis.level(j, q);
        const std::size_t sp = basis.stride(p);
        const std::size_t sq = basis.stride(q);
        // eps a+_p a_q
        if (nq > 0 && np < d) at(j + sp - sq, j) += spec.epsilon * std::sqrt(double(nq) * double(np + 1));
        // eps* a_p a+_q
        if (np > 0 && nq < d) at(j - sp + sq, j) += std::conj(spec.epsilon) * std::sqrt(double(np) * double(nq + 1));
      }
    }
  }
  return HamiltonianMatrix{basis, std::move(h)};
}

struct QubitProjection {
  /// Amplitudes over {0,1}^M in the cutoff-1 basis ordering, unrenormalized.
  Vector amplitudes;
  /// 1 - sum |retained|^2, clamped to [0, 1].
  double leakage = 0.0;
};

/// Keeps the basis states with every occupation <= 1.
inline QubitProjection project_qubit(const StateVector& state) {
  const FockBasis& basis = state.basis();
  const FockBasis qubits(basis.modes(), 1);
  QubitProjection out{Vector::Zero(qubits.size()), 0.0};
  double kept = 0.0;
  for (std::size_t i = 0; i < qubits.dimension(); ++i) {
    const Complex c = state[basis.index(qubits.occupation(i))];
    out.amplitudes(static_cast<Eigen::Index>(i)) = c;
    kept += std::norm(c);
  }
  out.leakage = std::clamp(1.0 - kept, 0.0, 1.0);
  return out;
}

/// Re-expresses `state` on a basis with a different cutoff. Fails if the
/// state has weight above the new cutoff.
inline StateVector embed(const StateVector& state, std::size_t cutoff) {
  const FockBasis& from = state.basis();
  const FockBasis to(from.modes(), cutoff);
  Vector v = Vector::Zero(to.size());
  for (std::size_t i = 0; i < from.dimension(); ++i) {
    const Complex c = state[i];
    const Occupation occ = from.occupation(i);
    bool fits = true;
    for (std::size_t n : occ) fits = fits && n <= cutoff;
    if (fits) {
      v(static_cast<Eigen::Index>(to.index(occ))) = c;
    } else if (c != Complex{}) {
      throw std::invalid_argument("embed: state has weight above the target cutoff");
    }
  }
  return StateVector(to, std::move(v));
}

}  // namespace qscissors

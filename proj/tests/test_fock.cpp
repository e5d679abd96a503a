#include "oracles.hpp"
#include "qscissors/fock.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qscissors;

TEST(FockBasis, SmallestQubitBasis) {
  const FockBasis b = build_basis(2, 1);
  ASSERT_EQ(b.dimension(), 4u);
  const std::vector<Occupation> expected = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(b.occupation(i), expected[i]);
}

TEST(FockBasis, ThreeQubitDimension) { EXPECT_EQ(build_basis(3, 1).dimension(), 8u); }

TEST(FockBasis, LexicographicIndex) {
  const FockBasis b = build_basis(2, 5);
  EXPECT_EQ(b.dimension(), 36u);
  EXPECT_EQ(b.index({2, 3}), 15u);
}

TEST(FockBasis, IndexIsBijection) {
  for (std::size_t modes : {1u, 2u, 3u}) {
    for (std::size_t d : {1u, 2u, 4u}) {
      const FockBasis b(modes, d);
      for (std::size_t i = 0; i < b.dimension(); ++i) EXPECT_EQ(b.index(b.occupation(i)), i);
    }
  }
}

TEST(FockBasis, RejectsBadShapes) {
  EXPECT_THROW(FockBasis(0, 2), std::invalid_argument);
  EXPECT_THROW(FockBasis(2, 0), std::invalid_argument);
  EXPECT_ANY_THROW(FockBasis(200, 9));
}

TEST(FockBasis, QubitStatePredicate) {
  const FockBasis b(2, 2);
  EXPECT_TRUE(b.is_qubit_state(b.index({1, 1})));
  EXPECT_FALSE(b.is_qubit_state(b.index({2, 0})));
}

TEST(Ladder, QubitAction) {
  const FockBasis b(1, 1);
  const Matrix a = annihilation_matrix(b, 0);
  EXPECT_EQ(a(0, 1), Complex(1.0));
  EXPECT_EQ(a(1, 0), Complex(0.0));
  EXPECT_EQ(a(0, 0), Complex(0.0));
}

TEST(Ladder, SqrtTwoElement) {
  const FockBasis b(1, 2);
  EXPECT_DOUBLE_EQ(annihilation_matrix(b, 0)(1, 2).real(), std::sqrt(2.0));
}

TEST(Ladder, NumberOperatorMatchesEnumeration) {
  const FockBasis b(3, 3);
  for (std::size_t p = 0; p < 3; ++p) {
    const Matrix n = creation_matrix(b, p) * annihilation_matrix(b, p);
    for (std::size_t j = 0; j < b.dimension(); ++j)
      EXPECT_NEAR(n(Eigen::Index(j), Eigen::Index(j)).real(), double(b.level(j, p)), 1e-14);
    EXPECT_NEAR((n - Matrix(n.diagonal().asDiagonal())).cwiseAbs().maxCoeff(), 0.0, 1e-14);
  }
}

TEST(Ladder, MatchesKroneckerConstruction) {
  for (std::size_t modes : {2u, 3u}) {
    for (std::size_t d : {1u, 2u, 3u}) {
      const FockBasis b(modes, d);
      for (std::size_t p = 0; p < modes; ++p)
        EXPECT_EQ((annihilation_matrix(b, p) - oracle::kron_a(modes, d, p)).cwiseAbs().maxCoeff(), 0.0);
    }
  }
}

TEST(Ladder, CanonicalCommutatorBelowCutoff) {
  const std::size_t d = 4;
  const FockBasis b(2, d);
  for (std::size_t p = 0; p < 2; ++p) {
    const Matrix a = annihilation_matrix(b, p);
    const Matrix c = a * a.adjoint() - a.adjoint() * a;
    for (std::size_t i = 0; i < b.dimension(); ++i) {
      for (std::size_t j = 0; j < b.dimension(); ++j) {
        if (b.level(i, p) >= d || b.level(j, p) >= d) continue;
        EXPECT_NEAR(std::abs(c(Eigen::Index(i), Eigen::Index(j)) - (i == j ? 1.0 : 0.0)), 0.0, 1e-13);
      }
    }
  }
}

TEST(Ladder, DistinctModesCommute) {
  const FockBasis b(3, 3);
  for (std::size_t p = 0; p < 3; ++p) {
    for (std::size_t q = 0; q < 3; ++q) {
      if (p == q) continue;
      const Matrix ap = annihilation_matrix(b, p), aq = annihilation_matrix(b, q);
      EXPECT_EQ((ap * aq - aq * ap).cwiseAbs().maxCoeff(), 0.0);
      EXPECT_EQ((ap * aq.adjoint() - aq.adjoint() * ap).cwiseAbs().maxCoeff(), 0.0);
    }
  }
}

TEST(Ladder, ModeOutOfRange) {
  EXPECT_THROW(annihilation_matrix(FockBasis(2, 1), 2), std::out_of_range);
}

TEST(Hamiltonian, ZeroCouplingsGiveZeroMatrix) {
  const SystemSpec spec{{0.0, 0.0, 0.0}, 0.0, {0.0, 0.0, 0.0}};
  EXPECT_EQ(build_hamiltonian(spec, FockBasis(3, 2)).max_abs(), 0.0);
}

TEST(Hamiltonian, HandComputedElements) {
  const double chi1 = 3.0, eps = 0.7;
  const SystemSpec spec{{chi1, 5.0}, eps, {0.0, 0.0}};
  const FockBasis b(2, 2);
  const Matrix& h = build_hamiltonian(spec, b).entries;
  EXPECT_DOUBLE_EQ(h(Eigen::Index(b.index({2, 0})), Eigen::Index(b.index({2, 0}))).real(), chi1);
  EXPECT_NEAR(std::abs(h(Eigen::Index(b.index({1, 1})), Eigen::Index(b.index({0, 2}))) - eps * std::sqrt(2.0)), 0.0,
              1e-15);
}

TEST(Hamiltonian, PumpElement) {
  const double a1 = 2.5;
  const SystemSpec spec{{1.0, 1.0}, 0.3, {a1, 0.0}};
  const FockBasis b(2, 1);
  const Matrix& h = build_hamiltonian(spec, b).entries;
  EXPECT_DOUBLE_EQ(h(Eigen::Index(b.index({1, 0})), Eigen::Index(b.index({0, 0}))).real(), a1);
}

TEST(Hamiltonian, MatchesKroneckerOracleAndIsHermitian) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::uniform_real_distribution<double> pos(0.0, 5.0);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t M = 2 + trial % 2;
    SystemSpec spec;
    for (std::size_t p = 0; p < M; ++p) {
      spec.chi.push_back(pos(rng));
      spec.pumps.emplace_back(u(rng), u(rng));
    }
    spec.epsilon = Complex(u(rng), u(rng));
    const std::size_t d = 1 + trial % 4;
    const HamiltonianMatrix h = build_hamiltonian(spec, FockBasis(M, d));
    EXPECT_TRUE(h.is_hermitian());
    EXPECT_LE(h.hermiticity_defect(), 1e-12 * h.max_abs());
    EXPECT_LE((h.entries - oracle::kron_hamiltonian(spec, d)).cwiseAbs().maxCoeff(), 1e-12 * h.max_abs());
  }
}

TEST(Hamiltonian, SinglePumpIsTwoPumpWithZeroSecondPump) {
  const SystemSpec single{{1e8, 1e8}, 5e5, {5e5, 0.0}};
  SystemSpec two = single;
  two.pumps = {5e5, 5e5};
  two.pumps[1] = 0.0;
  const FockBasis b(2, 3);
  EXPECT_EQ((build_hamiltonian(single, b).entries - build_hamiltonian(two, b).entries).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Hamiltonian, RejectsMismatchedBasis) {
  const SystemSpec spec{{1.0, 1.0}, 1.0, {0.0, 0.0}};
  EXPECT_THROW(build_hamiltonian(spec, FockBasis(3, 1)), std::invalid_argument);
}

TEST(SystemSpec, Validation) {
  EXPECT_THROW((SystemSpec{{1.0}, 1.0, {0.0}}.validate()), std::invalid_argument);
  EXPECT_THROW((SystemSpec{{1.0, -1.0}, 1.0, {0.0, 0.0}}.validate()), std::invalid_argument);
  EXPECT_THROW((SystemSpec{{1.0, 1.0}, 1.0, {0.0}}.validate()), std::invalid_argument);
  EXPECT_NO_THROW((SystemSpec{{1.0, 1.0}, 1.0, {0.0, 0.0}}.validate()));
}

TEST(SystemSpec, WeakCouplingRatio) {
  const SystemSpec spec{{1e8, 2e8}, 5e5, {5e5, 0.0}};
  EXPECT_DOUBLE_EQ(spec.weak_coupling_ratio(), 200.0);
}

TEST(StateVector, RejectsUnnormalized) {
  const FockBasis b(2, 1);
  EXPECT_THROW(StateVector(b, Vector::Ones(4)), std::invalid_argument);
  EXPECT_THROW(StateVector(b, Vector::Zero(3)), std::invalid_argument);
  EXPECT_NEAR(StateVector::normalized(b, Vector::Ones(4)).norm(), 1.0, 1e-15);
}

TEST(ProjectQubit, QubitStateIsVerbatim) {
  std::mt19937_64 rng(3);
  const FockBasis b(2, 1);
  const StateVector s(b, oracle::random_state(4, rng));
  const QubitProjection p = project_qubit(s);
  EXPECT_EQ(p.leakage, 0.0);
  EXPECT_EQ(p.amplitudes, s.amplitudes());

  const QubitProjection pe = project_qubit(embed(s, 3));
  EXPECT_NEAR(pe.leakage, 0.0, 1e-15);
  EXPECT_EQ(pe.amplitudes, s.amplitudes());
}

TEST(ProjectQubit, DoublyOccupiedStateLeaksFully) {
  const FockBasis b(2, 2);
  const QubitProjection p = project_qubit(StateVector::basis_state(b, {2, 0}));
  EXPECT_EQ(p.leakage, 1.0);
  EXPECT_EQ(p.amplitudes.cwiseAbs().maxCoeff(), 0.0);
}

TEST(Embed, RejectsWeightAboveCutoff) {
  const FockBasis b(2, 2);
  EXPECT_THROW(embed(StateVector::basis_state(b, {2, 0}), 1), std::invalid_argument);
}

#include <cmath>

#include <gtest/gtest.h>

#include "helpers.hpp"
#include "mixest/operator_basis.hpp"
#include "mixest/random_instances.hpp"
#include "oracles.hpp"

using namespace mixest;
using namespace testing_util;

TEST(ValidateState, AcceptsMaximallyMixedQubit) {
  const auto rho = validate_state(identity(2) / 2.0);
  EXPECT_NEAR(rho.purity(), 0.5, 1e-15);
}

TEST(ValidateState, AcceptsPureState) {
  const auto rho = validate_state(diag({1, 0}));
  EXPECT_NEAR(rho.purity(), 1.0, 1e-15);
}

TEST(ValidateState, RejectsNegativeEigenvalueAndReportsIt) {
  const auto [lo, hi] = oracle::eig2(0.6, 0.5, 0.4);
  EXPECT_NEAR(lo, -0.0099019514, 1e-9);
  try {
    validate_state(real2(0.6, 0.5, 0.5, 0.4));
    FAIL() << "accepted a non-positive matrix";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotPSD);
    EXPECT_NEAR(e.magnitude(), lo, 1e-12);
  }
}

TEST(ValidateState, RejectsNonHermitianNonUnitTraceAndNonSquare) {
  EXPECT_MIXEST_ERROR(validate_state(real2(0.5, 0.1, 0.0, 0.5)), ErrorCode::NotHermitian);
  EXPECT_MIXEST_ERROR(validate_state(diag({0.7, 0.5})), ErrorCode::NotUnitTrace);
  EXPECT_MIXEST_ERROR(validate_state(ComplexMatrix::Zero(2, 3)), ErrorCode::NotSquare);
}

TEST(ValidateState, ToleratesRoundOffWithinPolicy) {
  ComplexMatrix m = diag({1, 0});
  m(1, 1) = -5e-11;
  m(0, 0) = 1.0 + 5e-11;
  EXPECT_NO_THROW(validate_state(m));
}

TEST(ValidatePovm, RejectsEffectsNotSummingToIdentity) {
  std::vector<ComplexMatrix> e{diag({1, 0}), diag({0, 0.9})};
  EXPECT_MIXEST_ERROR(validate_povm(e), ErrorCode::InvalidPovm);
}

TEST(ValidatePovm, RejectsEffectAboveOne) {
  EXPECT_MIXEST_ERROR(validate_effect(diag({1.1, 0})), ErrorCode::EffectTooLarge);
  std::vector<ComplexMatrix> e{diag({1.5, 0}), diag({-0.5, 1})};
  EXPECT_MIXEST_ERROR(validate_povm(e), ErrorCode::InvalidPovm);
}

TEST(BlochDecompose, BasisStates) {
  const auto up = bloch_decompose(state(diag({1, 0})));
  EXPECT_NEAR(up.x, 0.0, 1e-15);
  EXPECT_NEAR(up.y, 0.0, 1e-15);
  EXPECT_NEAR(up.z, 1.0, 1e-15);
  EXPECT_NEAR(bloch_decompose(state(identity(2) / 2.0)).norm(), 0.0, 1e-15);
}

TEST(BlochDecompose, MixedStateInXZPlane) {
  // 1/2 (1 + 0.6 sx + 0.8 sz) = [[0.9, 0.3], [0.3, 0.1]]
  const auto r = bloch_decompose(state(real2(0.9, 0.3, 0.3, 0.1)));
  EXPECT_NEAR(r.x, 0.6, 1e-15);
  EXPECT_NEAR(r.y, 0.0, 1e-15);
  EXPECT_NEAR(r.z, 0.8, 1e-15);
}

TEST(BlochDecompose, RejectsWrongDimension) {
  EXPECT_MIXEST_ERROR(bloch_decompose(maximally_mixed(3)), ErrorCode::WrongDimension);
}

TEST(BlochCompose, Examples) {
  EXPECT_LT(max_abs_entry(bloch_compose({0, 0, 1}, 0.5).matrix() - diag({1, 0})), 1e-15);
  EXPECT_LT(max_abs_entry(bloch_compose({0, 0, 0}, 1.0).matrix() - identity(2)), 1e-15);
  EXPECT_LT(max_abs_entry(bloch_compose({1, 0, 0}, 0.5).matrix() - real2(0.5, 0.5, 0.5, 0.5)), 1e-15);
}

TEST(BlochCompose, PureExactlyOnTheSphere) {
  EXPECT_NEAR(min_eigenvalue(bloch_compose({0.6, 0, 0.8}, 0.3).matrix()), 0.0, 1e-15);
  EXPECT_GT(min_eigenvalue(bloch_compose({0.3, 0, 0.4}, 0.3).matrix()), 0.1);
}

TEST(BlochCompose, RejectsLongVector) {
  EXPECT_MIXEST_ERROR(bloch_compose({1, 0.1, 0}, 0.5), ErrorCode::VectorTooLong);
}

TEST(BlochMaps, RoundTripOnRandomStates) {
  for (int i = 0; i < 1000; ++i) {
    CounterRng rng(11, i);
    const auto rho = random_density_matrix(rng, 2, 1 + i % 2);
    const auto back = qubit_state(bloch_decompose(rho));
    ASSERT_LT(max_abs_entry(back.matrix() - rho.matrix()), 1e-12);
  }
}

TEST(OperatorBasis, GellMannIsOrthonormalAndTraceless) {
  for (int d = 2; d <= 5; ++d) {
    const auto b = OperatorBasis::gell_mann(d);
    ASSERT_EQ(b.size(), static_cast<std::size_t>(d * d - 1));
    for (std::size_t i = 0; i < b.size(); ++i) {
      EXPECT_NEAR(std::abs(b[i].trace()), 0.0, 1e-14);
      for (std::size_t j = 0; j < b.size(); ++j) EXPECT_NEAR((b[i] * b[j]).trace().real(), i == j ? 1.0 : 0.0, 1e-14);
    }
  }
}

TEST(OperatorBasis, RejectsNonOrthonormalGenerators) {
  EXPECT_THROW(OperatorBasis(2, {pauli(0), pauli(1), pauli(2)}), Error);
}

TEST(BasisDecompose, MaximallyMixedIsOrigin) {
  for (int d = 2; d <= 4; ++d) EXPECT_LT(basis_decompose(maximally_mixed(d), OperatorBasis::gell_mann(d)).norm(), 1e-14);
}

TEST(BasisDecompose, QubitMatchesBlochVector) {
  const auto r = basis_decompose(state(diag({1, 0})), OperatorBasis::gell_mann(2));
  ASSERT_EQ(r.size(), 3);
  EXPECT_NEAR(r(0), 0.0, 1e-15);
  EXPECT_NEAR(r(1), 0.0, 1e-15);
  EXPECT_NEAR(r(2), 1.0, 1e-15);
}

TEST(BasisDecompose, PureQutritHasUnitCoordinates) {
  EXPECT_NEAR(basis_decompose(state(diag({1, 0, 0})), OperatorBasis::gell_mann(3)).squaredNorm(), 1.0, 1e-12);
}

TEST(BasisDecompose, RejectsDimensionMismatch) {
  EXPECT_MIXEST_ERROR(basis_decompose(maximally_mixed(3), OperatorBasis::gell_mann(2)), ErrorCode::DimensionMismatch);
}

TEST(BasisDecompose, RoundTripAndPurityIdentity) {
  for (int d = 2; d <= 4; ++d) {
    const auto basis = OperatorBasis::gell_mann(d);
    for (int i = 0; i < 200; ++i) {
      CounterRng rng(12 + d, i);
      const auto pure = pure_state(random_unit_vector(rng, d));
      const auto r = basis_decompose(pure, basis);
      ASSERT_NEAR(r.squaredNorm(), 1.0, 1e-9);
      ASSERT_LT(max_abs_entry(basis_compose(r, basis) - pure.matrix()), 1e-10);
      const auto mixed = random_density_matrix(rng, d);
      const auto rm = basis_decompose(mixed, basis);
      ASSERT_LT(rm.squaredNorm(), 1.0 - 1e-9);
      ASSERT_LT(max_abs_entry(basis_compose(rm, basis) - mixed.matrix()), 1e-10);
    }
  }
}

TEST(Povm, OutcomeProbabilitiesSumToOne) {
  for (int i = 0; i < 300; ++i) {
    CounterRng rng(13, i);
    const int d = 2 + i % 3;
    const auto p = i % 2 ? random_povm(rng, d, d + 1) : random_povm_normalized(rng, d, d + 2);
    const auto rho = random_density_matrix(rng, d);
    double total = 0.0;
    for (const auto& e : p.effects()) total += e.probability(rho);
    ASSERT_NEAR(total, 1.0, 1e-9);
  }
}

TEST(CommonEigenbasis, DiagonalStatesGiveStandardBasis) {
  const ComplexMatrix u = common_eigenbasis(state(diag({0.7, 0.3})), state(diag({0.2, 0.8})));
  for (int k = 0; k < 2; ++k) EXPECT_NEAR(u.col(k).cwiseAbs().maxCoeff(), 1.0, 1e-12);
}

TEST(CommonEigenbasis, EqualStatesAreDiagonalized) {
  CounterRng rng(14, 0);
  const auto rho = random_density_matrix(rng, 3);
  const ComplexMatrix u = common_eigenbasis(rho, rho);
  const ComplexMatrix d = u.adjoint() * rho.matrix() * u;
  EXPECT_LT(max_abs_entry(d - ComplexMatrix(d.diagonal().asDiagonal())), 1e-8);
}

TEST(CommonEigenbasis, XEigenbasis) {
  // 1/2 (1 + 0.5 sx) and 1/2 (1 - 0.2 sx)
  const auto r1 = state(real2(0.5, 0.25, 0.25, 0.5));
  const auto r2 = state(real2(0.5, -0.1, -0.1, 0.5));
  const ComplexMatrix u = common_eigenbasis(r1, r2);
  const double s = 1.0 / std::sqrt(2.0);
  for (int k = 0; k < 2; ++k) {
    const ComplexVector v = u.col(k);
    const double overlap_plus = std::abs(v(0) * s + v(1) * s);
    const double overlap_minus = std::abs(v(0) * s - v(1) * s);
    EXPECT_NEAR(std::max(overlap_plus, overlap_minus), 1.0, 1e-12);
  }
}

TEST(CommonEigenbasis, NotCommutingCarriesNorm) {
  try {
    common_eigenbasis(state(diag({1, 0})), state(real2(0.5, 0.5, 0.5, 0.5)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotCommuting);
    EXPECT_NEAR(e.magnitude(), 0.5, 1e-12);
  }
}

TEST(CommonEigenbasis, DiagonalizesRandomCommutingPairsIncludingDegenerate) {
  for (int i = 0; i < 200; ++i) {
    CounterRng rng(15, i);
    const int d = 2 + i % 3;
    auto [r1, r2] = random_commuting_pair(rng, d);
    if (i % 4 == 0) r1 = maximally_mixed(d);  // fully degenerate first state
    const ComplexMatrix u = common_eigenbasis(r1, r2);
    ASSERT_LT(max_abs_entry(u.adjoint() * u - identity(d)), 1e-10);
    for (const auto* rho : {&r1, &r2}) {
      const ComplexMatrix m = u.adjoint() * rho->matrix() * u;
      ASSERT_LT(max_abs_entry(m - ComplexMatrix(m.diagonal().asDiagonal())), 1e-8);
    }
  }
}

TEST(PartialTranspose, MatchesBlockwiseTransposeOracle) {
  for (int i = 0; i < 50; ++i) {
    CounterRng rng(16, i);
    const auto rho = random_density_matrix(rng, 4);
    EXPECT_NEAR(min_eigenvalue(partial_transpose_b(rho.matrix(), 2, 2)), oracle::pt_min_eigenvalue(rho.matrix()), 1e-12);
    EXPECT_LT(max_abs_entry(partial_transpose_b(partial_transpose_b(rho.matrix(), 2, 2), 2, 2) - rho.matrix()), 1e-15);
  }
}

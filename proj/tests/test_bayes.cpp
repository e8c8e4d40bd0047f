#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "helpers.hpp"
#include "mixest/bayes.hpp"
#include "mixest/random_instances.hpp"
#include "oracles.hpp"

using namespace mixest;
using namespace testing_util;

namespace {

const double kLn2 = std::numbers::ln2;

std::function<double(double)> reciprocal_density(double t) {
  return [t](double l) { return 1.0 / (l * t); };
}

Prior sample_table() { return Prior::table({0.0, 0.3, 0.7, 1.0}, {0.5, 2.0, 1.0, 0.2}); }

std::function<double(double)> table_density_oracle() {
  // Normalized piecewise-linear density through the sample_table nodes.
  const std::vector<double> x{0.0, 0.3, 0.7, 1.0};
  const std::vector<double> y{0.5, 2.0, 1.0, 0.2};
  double mass = 0.0;
  for (int i = 1; i < 4; ++i) mass += 0.5 * (y[i] + y[i - 1]) * (x[i] - x[i - 1]);
  return [x, y, mass](double l) {
    for (int i = 1; i < 4; ++i)
      if (l <= x[i]) return (y[i - 1] + (y[i] - y[i - 1]) * (l - x[i - 1]) / (x[i] - x[i - 1])) / mass;
    return y.back() / mass;
  };
}

struct Pair {
  DensityMatrix r1, r2;
};

Pair orthogonal_pure() { return {state(diag({1, 0})), state(diag({0, 1}))}; }

Povm z_pvm() {
  std::vector<ComplexMatrix> e{diag({1, 0}), diag({0, 1})};
  return validate_povm(e);
}

Povm trivial(int d) {
  std::vector<ComplexMatrix> e{identity(d)};
  return validate_povm(e);
}

}  // namespace

TEST(EffectiveStates, UniformWeights) {
  const auto [r1, r2] = orthogonal_pure();
  const auto eff = effective_states(Prior::uniform(), r1, r2);
  EXPECT_NEAR(eff.weight_a, 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(eff.weight_b, 0.5, 1e-15);
  EXPECT_LT(max_abs_entry(eff.rho_a.matrix() - diag({2.0 / 3.0, 1.0 / 3.0})), 1e-15);
}

TEST(EffectiveStates, PointMassCollapsesBoth) {
  const auto [r1, r2] = orthogonal_pure();
  const auto eff = effective_states(Prior::point_mass(0.3), r1, r2);
  EXPECT_LT(max_abs_entry(eff.rho_a.matrix() - diag({0.3, 0.7})), 1e-15);
  EXPECT_LT(max_abs_entry(eff.rho_b.matrix() - diag({0.3, 0.7})), 1e-15);
}

TEST(EffectiveStates, TruncatedReciprocalAtLn2) {
  const double lo = 0.5;
  const double mean = oracle::prior_moment(reciprocal_density(kLn2), lo, 1.0, 1);
  const double second = oracle::prior_moment(reciprocal_density(kLn2), lo, 1.0, 2);
  EXPECT_NEAR(mean, 1.0 / (2.0 * kLn2), 1e-12);
  const auto [r1, r2] = orthogonal_pure();
  const auto eff = effective_states(prior_from_decoherence(kLn2), r1, r2);
  EXPECT_NEAR(eff.weight_b, mean, 1e-12);
  EXPECT_NEAR(eff.weight_a, second / mean, 1e-12);
  EXPECT_NEAR(eff.weight_a, 0.75, 1e-12);
}

TEST(EffectiveStates, ZeroMeanPriorRejected) {
  const auto [r1, r2] = orthogonal_pure();
  EXPECT_MIXEST_ERROR(effective_states(Prior::point_mass(0.0), r1, r2), ErrorCode::ZeroMeanPrior);
}

TEST(PosteriorMoments, IdentityEffectReturnsPrior) {
  const auto [r1, r2] = orthogonal_pure();
  const auto pm = posterior_moments(identity(2), Prior::uniform(), r1, r2);
  EXPECT_NEAR(pm.prob, 1.0, 1e-15);
  EXPECT_NEAR(pm.estimate, 0.5, 1e-15);
  EXPECT_NEAR(pm.variance, 1.0 / 12.0, 1e-15);
}

TEST(PosteriorMoments, OrthogonalPureStatesAgainstIntegration) {
  const auto [r1, r2] = orthogonal_pure();
  const auto up = posterior_moments(diag({1, 0}), Prior::uniform(), r1, r2);
  const auto o = oracle::posterior(oracle::uniform_density, 0.0, 1.0, 1.0, 0.0);
  EXPECT_NEAR(o.mean, 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(o.variance(), 1.0 / 18.0, 1e-12);
  EXPECT_NEAR(up.prob, 0.5, 1e-15);
  EXPECT_NEAR(up.estimate, o.mean, 1e-12);
  EXPECT_NEAR(up.variance, o.variance(), 1e-12);
  const auto down = posterior_moments(diag({0, 1}), Prior::uniform(), r1, r2);
  EXPECT_NEAR(down.estimate, 1.0 / 3.0, 1e-12);
}

TEST(PosteriorMoments, DimensionMismatch) {
  const auto [r1, r2] = orthogonal_pure();
  EXPECT_MIXEST_ERROR(posterior_moments(identity(3), Prior::uniform(), r1, r2), ErrorCode::DimensionMismatch);
}

TEST(PosteriorMoments, NeverOccurringOutcomeFallsBackToPrior) {
  const auto r = state(diag({1, 0}));
  const auto pm = posterior_moments(diag({0, 1}), Prior::uniform(), r, r);
  EXPECT_FALSE(pm.occurs);
  EXPECT_NEAR(pm.estimate, 0.5, 1e-15);
}

TEST(PosteriorMoments, AgreeWithQuadratureForGeneralPriors) {
  const Prior trunc = prior_from_decoherence(1.3);
  const Prior table = sample_table();
  for (int i = 0; i < 50; ++i) {
    CounterRng rng(21, i);
    const auto r1 = random_density_matrix(rng, 3);
    const auto r2 = random_density_matrix(rng, 3);
    const auto p = random_povm(rng, 3, 3);
    for (const auto& e : p.effects()) {
      const double t1 = e.probability(r1);
      const double t2 = e.probability(r2);
      const auto a = posterior_moments(e, trunc, r1, r2);
      const auto oa = oracle::posterior(reciprocal_density(1.3), std::exp(-1.3), 1.0, t1, t2);
      ASSERT_NEAR(a.prob, oa.prob, 1e-6);
      ASSERT_NEAR(a.estimate, oa.mean, 1e-6);
      ASSERT_NEAR(a.second, oa.second, 1e-6);
      const auto b = posterior_moments(e, table, r1, r2);
      const auto ob = oracle::posterior(table_density_oracle(), 0.0, 1.0, t1, t2);
      ASSERT_NEAR(b.prob, ob.prob, 1e-6);
      ASSERT_NEAR(b.estimate, ob.mean, 1e-6);
      ASSERT_NEAR(b.second, ob.second, 1e-6);
    }
  }
}

TEST(QFunctional, EqualStatesGivePriorVariance) {
  const auto r = state(diag({0.8, 0.2}));
  const auto s = q_functional(z_pvm(), Prior::uniform(), r, r);
  EXPECT_NEAR(s.q_value, 0.25, 1e-15);
  EXPECT_NEAR(s.mean_variance, 1.0 / 12.0, 1e-15);
}

TEST(QFunctional, TrivialMeasurement) {
  const auto [r1, r2] = orthogonal_pure();
  EXPECT_NEAR(q_functional(trivial(2), Prior::uniform(), r1, r2).q_value, 0.25, 1e-15);
}

TEST(QFunctional, OrthogonalPureStatesWithZMeasurement) {
  const auto [r1, r2] = orthogonal_pure();
  const auto s = q_functional(z_pvm(), Prior::uniform(), r1, r2);
  const double mv = oracle::mean_variance(oracle::uniform_density, 0, 1, {1, 0}, {0, 1});
  EXPECT_NEAR(s.q_value, 5.0 / 18.0, 1e-14);
  EXPECT_NEAR(s.mean_variance, mv, 1e-12);
  EXPECT_NEAR(s.mean_variance, 1.0 / 18.0, 1e-14);
}

TEST(QFunctional, MeanVarianceMatchesQuadratureForGeneralPriors) {
  for (int i = 0; i < 30; ++i) {
    CounterRng rng(22, i);
    const auto r1 = random_qubit_state(rng);
    const auto r2 = random_qubit_state(rng);
    const auto p = random_povm(rng, 2, 2);
    std::vector<double> t1, t2;
    for (const auto& e : p.effects()) t1.push_back(e.probability(r1)), t2.push_back(e.probability(r2));
    const double t = 0.4 + 0.1 * i;
    EXPECT_NEAR(q_functional(p, prior_from_decoherence(t), r1, r2).mean_variance,
                oracle::mean_variance(reciprocal_density(t), std::exp(-t), 1.0, t1, t2), 1e-8);
    EXPECT_NEAR(q_functional(p, sample_table(), r1, r2).mean_variance,
                oracle::mean_variance(table_density_oracle(), 0.0, 1.0, t1, t2), 1e-8);
  }
}

TEST(PermutationForm, Examples) {
  const auto [r1, r2] = orthogonal_pure();
  EXPECT_NEAR(q_permutation_form(z_pvm(), Prior::uniform(), r1, r1), 0.25, 1e-15);
  EXPECT_NEAR(q_permutation_form(z_pvm(), Prior::uniform(), r1, r2), 5.0 / 18.0, 1e-15);
  EXPECT_NEAR(q_permutation_form(z_pvm(), Prior::uniform(), r2, r1), 5.0 / 18.0, 1e-15);
  EXPECT_MIXEST_ERROR(q_permutation_form(z_pvm(), prior_from_decoherence(1.0), r1, r2), ErrorCode::NonUniformPrior);
}

TEST(PermutationForm, AgreesWithQFunctional) {
  for (int i = 0; i < 300; ++i) {
    CounterRng rng(23, i);
    const int d = 2 + i % 3;
    const auto r1 = random_density_matrix(rng, d);
    const auto r2 = random_density_matrix(rng, d);
    const auto p = random_povm(rng, d, d);
    const double q = q_functional(p, Prior::uniform(), r1, r2).q_value;
    ASSERT_NEAR(q_permutation_form(p, Prior::uniform(), r1, r2), q, 1e-12);
    ASSERT_NEAR(q_functional(p, Prior::uniform(), r2, r1).q_value, q, 1e-12);
  }
}

TEST(PriorFromDecoherence, ClosedFormsAtLn2) {
  const auto p = prior_from_decoherence(kLn2);
  EXPECT_NEAR(p.mean(), 1.0 / (2.0 * kLn2), 1e-14);
  EXPECT_NEAR(p.second_moment(), 3.0 / (8.0 * kLn2), 1e-14);
  EXPECT_NEAR(p.second_moment(), oracle::prior_moment(reciprocal_density(kLn2), 0.5, 1.0, 2), 1e-12);
  EXPECT_NEAR(p.third_moment(), oracle::prior_moment(reciprocal_density(kLn2), 0.5, 1.0, 3), 1e-12);
  EXPECT_NEAR(p.lo(), 0.5, 1e-15);
  EXPECT_NEAR(p.sample(0.5), 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(PriorFromDecoherence, ShortTimeLimitConcentratesAtOne) {
  const auto p = prior_from_decoherence(1e-9);
  EXPECT_NEAR(p.mean(), 1.0, 1e-9);
  EXPECT_NEAR(p.second_moment(), 1.0, 1e-9);
}

TEST(PriorFromDecoherence, RejectsNonPositive) {
  EXPECT_MIXEST_ERROR(prior_from_decoherence(0.0), ErrorCode::NonPositiveParameter);
  EXPECT_MIXEST_ERROR(prior_from_decoherence(-1.0), ErrorCode::NonPositiveParameter);
}

TEST(Prior, MomentsRespectJensenAndSupport) {
  for (const auto& p : {Prior::uniform(), prior_from_decoherence(0.2), prior_from_decoherence(5.0), sample_table(),
                        Prior::point_mass(0.4)}) {
    EXPECT_LE(p.mean() * p.mean(), p.second_moment() + 1e-15);
    EXPECT_LE(p.second_moment(), p.mean() + 1e-15);
  }
}

TEST(Prior, TableMomentsMatchQuadrature) {
  const auto p = sample_table();
  for (int n = 1; n <= 3; ++n) EXPECT_NEAR(p.moment(n), oracle::prior_moment(table_density_oracle(), 0, 1, n), 1e-10);
}

TEST(Prior, TableSamplerInvertsItsCdf) {
  const auto p = sample_table();
  const auto dens = table_density_oracle();
  for (double u : {0.05, 0.2, 0.5, 0.8, 0.99}) {
    const double l = p.sample(u);
    EXPECT_NEAR(oracle::integrate(dens, 0.0, l), u, 1e-10);
  }
}

TEST(Prior, TableRejectsBadInput) {
  EXPECT_MIXEST_ERROR(Prior::table({0.0}, {1.0}), ErrorCode::InvalidPrior);
  EXPECT_MIXEST_ERROR(Prior::table({0.0, 1.2}, {1.0, 1.0}), ErrorCode::InvalidPrior);
  EXPECT_MIXEST_ERROR(Prior::table({0.0, 1.0}, {1.0, -1.0}), ErrorCode::InvalidPrior);
}

TEST(ScoreProperties, UniformScorePlusPosteriorVarianceIsOneThird) {
  for (int i = 0; i < 100; ++i) {
    CounterRng rng(24, i);
    const auto r1 = random_qubit_state(rng);
    const auto r2 = random_qubit_state(rng);
    const auto s = q_functional(random_povm(rng, 2, 1 + i % 4), Prior::uniform(), r1, r2);
    double posterior = 0.0;
    for (const auto& m : s.per_outcome) posterior += m.prob * m.variance;
    ASSERT_NEAR(s.q_value + posterior, 1.0 / 3.0, 1e-10);
    ASSERT_NEAR(s.q_value + s.mean_variance, 1.0 / 3.0, 1e-10);
  }
}

TEST(ScoreProperties, ProbabilitiesSumToOneAndEstimatesAverageToPriorMean) {
  const std::vector<Prior> priors{Prior::uniform(), prior_from_decoherence(0.9), sample_table()};
  for (int i = 0; i < 150; ++i) {
    CounterRng rng(25, i);
    const int d = 2 + i % 3;
    const auto r1 = random_density_matrix(rng, d);
    const auto r2 = random_density_matrix(rng, d);
    const auto& prior = priors[i % 3];
    const auto s = q_functional(random_povm(rng, d, d + 1), prior, r1, r2);
    double total = 0.0;
    double mean = 0.0;
    for (const auto& m : s.per_outcome) {
      total += m.prob;
      mean += m.prob * m.estimate;
      ASSERT_GE(m.variance, -1e-12);
      ASSERT_GE(m.estimate, prior.lo() - 1e-12);
      ASSERT_LE(m.estimate, prior.hi() + 1e-12);
    }
    ASSERT_NEAR(total, 1.0, 1e-9);
    ASSERT_NEAR(mean, prior.mean(), 1e-9);
  }
}

TEST(ScoreProperties, SplittingAnEffectNeverLowersTheScore) {
  for (int i = 0; i < 300; ++i) {
    CounterRng rng(26, i);
    const int d = 2 + i % 3;
    const auto r1 = random_density_matrix(rng, d);
    const auto r2 = random_density_matrix(rng, d);
    const auto p = random_povm(rng, d, d);
    const ComplexMatrix e = p[0].matrix();
    // Random PSD split e = e^{1/2} C e^{1/2} + e^{1/2} (1 - C) e^{1/2} with 0 <= C <= 1.
    const auto eig = hermitian_eigen(e);
    const ComplexMatrix root = eig.vectors * eig.values.cwiseMax(0.0).cwiseSqrt().cast<Complex>().asDiagonal() * eig.vectors.adjoint();
    const auto c = random_povm(rng, d, 1);
    const ComplexMatrix ea = root * c[0].matrix() * root;
    const ComplexMatrix eb = e - ea;
    std::vector<ComplexMatrix> whole{e}, parts{ea, eb};
    const Prior prior = i % 2 ? Prior::uniform() : prior_from_decoherence(1.1);
    ASSERT_GE(score_effects(parts, prior, r1, r2).q_value - score_effects(whole, prior, r1, r2).q_value, -1e-12);
  }
}

TEST(ScoreProperties, ConvexInTheMeasurement) {
  for (int i = 0; i < 300; ++i) {
    CounterRng rng(27, i);
    const int d = 2 + i % 3;
    const auto r1 = random_density_matrix(rng, d);
    const auto r2 = random_density_matrix(rng, d);
    const auto p1 = random_povm(rng, d, d);
    const auto p2 = random_povm(rng, d, d);
    ASSERT_EQ(p1.size(), p2.size());
    const double w = rng.uniform();
    std::vector<ComplexMatrix> mix;
    for (std::size_t m = 0; m < p1.size(); ++m) mix.push_back(w * p1[m].matrix() + (1 - w) * p2[m].matrix());
    const auto u = Prior::uniform();
    const double lhs = q_functional(validate_povm(mix), u, r1, r2).q_value;
    const double rhs = w * q_functional(p1, u, r1, r2).q_value + (1 - w) * q_functional(p2, u, r1, r2).q_value;
    ASSERT_LE(lhs, rhs + 1e-12);
  }
}

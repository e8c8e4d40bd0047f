#pragma once

#include <span>
#include <vector>

#include "mixest/prior.hpp"
#include "mixest/state.hpp"

namespace mixest {

/// rho_b = mean * rho1 + (1 - mean) * rho2 governs outcome probabilities;
/// rho_a = w * rho1 + (1 - w) * rho2 with w = second_moment / mean governs the
/// posterior means. Uniform prior: w = 2/3, mean = 1/2.
struct EffectiveStates {
  DensityMatrix rho_a;
  DensityMatrix rho_b;
  double weight_a;
  double weight_b;
};

EffectiveStates effective_states(const Prior& prior, const DensityMatrix& rho1, const DensityMatrix& rho2);

/// Posterior summary for one outcome. When the outcome cannot occur
/// (`occurs == false`) the estimate falls back to the prior moments.
struct PosteriorMoments {
  double prob = 0.0;
  double estimate = 0.0;  // Bayes estimate g_m = E_m(lambda)
  double second = 0.0;    // E_m(lambda^2)
  double variance = 0.0;
  bool occurs = true;
};

PosteriorMoments posterior_moments(const ComplexMatrix& effect, const Prior& prior, const DensityMatrix& rho1,
                                   const DensityMatrix& rho2);
PosteriorMoments posterior_moments(const Effect& effect, const Prior& prior, const DensityMatrix& rho1,
                                   const DensityMatrix& rho2);

/// q_value is the quantity an optimal measurement maximizes;
/// mean_variance = prior second moment - q_value.
struct MeasurementScore {
  double q_value = 0.0;
  double mean_variance = 0.0;
  std::vector<PosteriorMoments> per_outcome;

  std::vector<double> estimates() const;
};

MeasurementScore q_functional(const Povm& povm, const Prior& prior, const DensityMatrix& rho1,
                              const DensityMatrix& rho2);

/// Same score for a bare list of operators; no POVM validation. Used to score
/// candidate effects that may not form a valid measurement.
MeasurementScore score_effects(std::span<const ComplexMatrix> effects, const Prior& prior, const DensityMatrix& rho1,
                               const DensityMatrix& rho2);

/// 1/4 (1 + sum_m tr[E_m (rho1 - rho2)]^2 / (18 tr[E_m (rho1 + rho2)])), symmetric
/// in the two states. Uniform prior only.
double q_permutation_form(const Povm& povm, const Prior& prior, const DensityMatrix& rho1, const DensityMatrix& rho2);

}  // namespace mixest

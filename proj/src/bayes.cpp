#include "mixest/bayes.hpp"

#include "mixest/errors.hpp"
#include "mixest/numeric_policy.hpp"

namespace mixest {
namespace {

void require_same_dim(int a, int b) {
  if (a != b) throw Error(ErrorCode::DimensionMismatch, "operator dimensions differ");
}

}  // namespace

std::vector<double> MeasurementScore::estimates() const {
  std::vector<double> out;
  out.reserve(per_outcome.size());
  for (const auto& m : per_outcome) out.push_back(m.estimate);
  return out;
}

EffectiveStates effective_states(const Prior& prior, const DensityMatrix& rho1, const DensityMatrix& rho2) {
  require_same_dim(rho1.dim(), rho2.dim());
  const double mean = prior.mean();
  if (!(mean > 0.0)) throw Error(ErrorCode::ZeroMeanPrior, "prior mean must be positive", mean);
  const double w = std::min(1.0, prior.second_moment() / mean);
  return {mixture(w, rho1, rho2), mixture(mean, rho1, rho2), w, mean};
}

PosteriorMoments posterior_moments(const ComplexMatrix& effect, const Prior& prior, const DensityMatrix& rho1,
                                   const DensityMatrix& rho2) {
  require_same_dim(static_cast<int>(effect.rows()), rho1.dim());
  require_same_dim(rho1.dim(), rho2.dim());
  const double t1 = trace_product(effect, rho1.matrix());
  const double t2 = trace_product(effect, rho2.matrix());
  const double m1 = prior.mean();
  const double m2 = prior.second_moment();
  const double m3 = prior.third_moment();

  // p(m) and the unnormalized posterior moments: int lambda^k tr[E rho_lambda] p(lambda) dlambda.
  PosteriorMoments out;
  out.prob = m1 * t1 + (1.0 - m1) * t2;
  if (out.prob < numeric_policy().never_occurs) {
    out.occurs = false;
    out.prob = std::max(out.prob, 0.0);
    out.estimate = m1;
    out.second = m2;
    out.variance = m2 - m1 * m1;
    return out;
  }
  const double first = m2 * t1 + (m1 - m2) * t2;
  const double second = m3 * t1 + (m2 - m3) * t2;
  out.estimate = first / out.prob;
  out.second = second / out.prob;
  out.variance = out.second - out.estimate * out.estimate;
  return out;
}

PosteriorMoments posterior_moments(const Effect& effect, const Prior& prior, const DensityMatrix& rho1,
                                   const DensityMatrix& rho2) {
  return posterior_moments(effect.matrix(), prior, rho1, rho2);
}

MeasurementScore score_effects(std::span<const ComplexMatrix> effects, const Prior& prior, const DensityMatrix& rho1,
                               const DensityMatrix& rho2) {
  MeasurementScore score;
  for (const auto& e : effects) {
    auto moments = posterior_moments(e, prior, rho1, rho2);
    if (moments.occurs) {
      const double first = moments.estimate * moments.prob;  // mean * tr[E rho_a]
      score.q_value += first * first / moments.prob;
    }
    score.per_outcome.push_back(moments);
  }
  score.mean_variance = prior.second_moment() - score.q_value;
  return score;
}

MeasurementScore q_functional(const Povm& povm, const Prior& prior, const DensityMatrix& rho1,
                              const DensityMatrix& rho2) {
  require_same_dim(povm.dim(), rho1.dim());
  const auto mats = povm.matrices();
  return score_effects(mats, prior, rho1, rho2);
}

double q_permutation_form(const Povm& povm, const Prior& prior, const DensityMatrix& rho1, const DensityMatrix& rho2) {
  if (prior.kind() != PriorKind::Uniform) {
    throw Error(ErrorCode::NonUniformPrior, "the symmetric form is stated for the uniform prior");
  }
  require_same_dim(povm.dim(), rho1.dim());
  require_same_dim(rho1.dim(), rho2.dim());
  const ComplexMatrix diff = rho1.matrix() - rho2.matrix();
  const ComplexMatrix sum = rho1.matrix() + rho2.matrix();
  double total = 0.0;
  for (const auto& e : povm.effects()) {
    const double denom = trace_product(e.matrix(), sum);
    if (0.5 * denom < numeric_policy().never_occurs) continue;
    const double num = trace_product(e.matrix(), diff);
    total += num * num / (18.0 * denom);
  }
  return 0.25 * (1.0 + total);
}

}  // namespace mixest

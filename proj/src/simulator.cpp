#include "mixest/simulator.hpp"

#include <cmath>
#include <limits>

#include "mixest/errors.hpp"
#include "mixest/rng.hpp"

namespace mixest {

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

SimulationSummary run_simulation(const Povm& povm, const Prior& prior, const DensityMatrix& rho1,
                                 const DensityMatrix& rho2, std::int64_t n_trials, std::uint64_t seed,
                                 bool record_trials) {
  if (n_trials < 1) throw Error(ErrorCode::BadParameter, "n_trials must be at least 1", static_cast<double>(n_trials));
  if (povm.dim() != rho1.dim() || rho1.dim() != rho2.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "measurement and states differ in dimension");
  }
  const std::size_t n_out = povm.size();
  std::vector<double> t1(n_out), t2(n_out), g(n_out);
  const auto score = q_functional(povm, prior, rho1, rho2);
  for (std::size_t m = 0; m < n_out; ++m) {
    t1[m] = povm[m].probability(rho1);
    t2[m] = povm[m].probability(rho2);
    g[m] = score.per_outcome[m].estimate;
  }

  const auto n = static_cast<std::size_t>(n_trials);
  std::vector<double> err(n), err_mid(n);
  SimulationSummary out;
  out.n_trials = n_trials;
  out.seed = seed;
  out.analytic_mean_variance = score.mean_variance;
  if (record_trials) out.trials.resize(n);

  for (std::size_t i = 0; i < n; ++i) {
    CounterRng rng(seed, i);
    const double lambda = prior.sample(rng.uniform());
    const double u = rng.uniform();
    double cumulative = 0.0;
    std::size_t m = n_out - 1;
    for (std::size_t k = 0; k < n_out; ++k) {
      cumulative += lambda * t1[k] + (1.0 - lambda) * t2[k];
      if (u < cumulative) {
        m = k;
        break;
      }
    }
    const double e = lambda - g[m];
    err[i] = e * e;
    err_mid[i] = (lambda - prior.mean()) * (lambda - prior.mean());
    if (record_trials) out.trials[i] = {lambda, static_cast<int>(m), g[m], err[i]};
  }

  out.empirical_mse = pairwise_sum(err) / static_cast<double>(n);
  out.midpoint_mse = pairwise_sum(err_mid) / static_cast<double>(n);
  if (n > 1) {
    std::vector<double> dev(n);
    for (std::size_t i = 0; i < n; ++i) dev[i] = (err[i] - out.empirical_mse) * (err[i] - out.empirical_mse);
    const double var = pairwise_sum(dev) / static_cast<double>(n - 1);
    out.std_error = std::sqrt(var / static_cast<double>(n));
  }
  out.flagged = std::abs(out.empirical_mse - out.analytic_mean_variance) > 4.0 * out.std_error;
  return out;
}

void DecoherenceModel::validate() const {
  if (!(s >= 0.0 && s <= 1.0)) throw Error(ErrorCode::BadParameter, "s must lie in [0, 1]", s);
  if (!(t > 0.0)) throw Error(ErrorCode::BadParameter, "t must be positive", t);
  if (!(b_max > 0.0)) throw Error(ErrorCode::BadParameter, "b_max must be positive", b_max);
  if (rho0.dim() != 2) throw Error(ErrorCode::WrongDimension, "initial state must be a qubit", rho0.dim());
}

DensityMatrix equilibrium_state(double s) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = s;
  m(1, 1) = 1.0 - s;
  return validate_state(m);
}

DensityMatrix decoherence_state(const DecoherenceModel& model, double b) {
  model.validate();
  if (!(b >= 0.0 && b <= model.b_max * (1.0 + 1e-12))) {
    throw Error(ErrorCode::RateOutOfRange, "rate must lie in [0, b_max]", b);
  }
  return mixture(std::exp(-b * model.t), model.rho0, equilibrium_state(model.s));
}

DecayEstimation solve_decay_estimation(const DecoherenceModel& model, const std::optional<Prior>& prior_override) {
  model.validate();
  const auto eq = equilibrium_state(model.s);
  if (same_state(model.rho0, eq)) {
    throw Error(ErrorCode::DegenerateProblem, "initial state equals the equilibrium state; no rate information");
  }
  Prior prior = prior_override ? *prior_override : prior_from_decoherence(model.t * model.b_max);
  auto solution = optimal_pvm(prior, model.rho0, eq);
  std::vector<double> rates;
  for (const auto& pm : solution.report.score.per_outcome) {
    rates.push_back(pm.estimate > 0.0 ? -std::log(pm.estimate) / model.t : std::numeric_limits<double>::infinity());
  }
  return {std::move(solution), prior, model.rho0, eq, std::move(rates)};
}

}  // namespace mixest

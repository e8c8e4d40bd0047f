#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mixest/bayes.hpp"
#include "mixest/prior.hpp"
#include "mixest/qubit_optimizer.hpp"
#include "mixest/report.hpp"
#include "mixest/state.hpp"

namespace mixest {

struct TrialRecord {
  double true_lambda = 0.0;
  int outcome_index = 0;
  double estimate = 0.0;
  double squared_error = 0.0;
};

struct SimulationSummary {
  std::int64_t n_trials = 0;
  double empirical_mse = 0.0;
  double analytic_mean_variance = 0.0;
  double std_error = 0.0;
  std::uint64_t seed = 0;
  /// |empirical - analytic| > 4 std_error.
  bool flagged = false;
  /// MSE of the constant guess "prior mean" on the same trials.
  double midpoint_mse = 0.0;
  std::vector<TrialRecord> trials;  // filled only on request
};

/// Trial i draws from its own stream (seed, i): lambda from the prior, then an
/// outcome with probability tr[E_m rho_lambda], then scores the Bayes estimate.
SimulationSummary run_simulation(const Povm& povm, const Prior& prior, const DensityMatrix& rho1,
                                 const DensityMatrix& rho2, std::int64_t n_trials, std::uint64_t seed,
                                 bool record_trials = false);

/// Pairwise (cascade) summation.
double pairwise_sum(std::span<const double> values);

/// Qubit relaxing towards diag(s, 1 - s) at a single rate (rotating frame).
struct DecoherenceModel {
  double s = 0.5;
  double t = 1.0;
  double b_max = 1.0;
  DensityMatrix rho0;
  double omega = 0.0;  // recorded only

  void validate() const;
};

DensityMatrix equilibrium_state(double s);

/// exp(-b t) rho0 + (1 - exp(-b t)) diag(s, 1 - s), for 0 <= b <= b_max.
DensityMatrix decoherence_state(const DecoherenceModel& model, double b);

struct DecayEstimation {
  QubitSolution solution;
  Prior prior;
  DensityMatrix rho1;  // initial state
  DensityMatrix rho2;  // equilibrium state
  /// -ln(g_m) / t per outcome: a plug-in transform of the lambda estimate,
  /// not the Bayes estimator of the rate.
  std::vector<double> plugin_rates;
};

/// Optimal single-shot measurement for the decay factor; `prior_override`
/// replaces the prior induced by a uniform rate on [0, b_max].
DecayEstimation solve_decay_estimation(const DecoherenceModel& model,
                                       const std::optional<Prior>& prior_override = std::nullopt);

}  // namespace mixest

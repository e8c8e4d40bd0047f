#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mixest/highdim_optimizer.hpp"
#include "mixest/prior.hpp"
#include "mixest/simulator.hpp"

namespace mixest {

/// lambda |psi><psi| + (1 - lambda) 1/4 for a two-qubit vector.
DensityMatrix noisy_two_qubit_state(const ComplexVector& psi, double lambda);

/// Smallest eigenvalue of the partial transpose on the second qubit.
double min_partial_transpose_eigenvalue(const ComplexMatrix& rho4);
/// Negative partial transpose; tol guards against round-off.
bool ppt_entangled(const ComplexMatrix& rho4, double tol = 1e-12);

/// Smallest lambda at which the noisy state has a negative partial transpose,
/// by bisection to `tol`. Empty when even lambda = 1 passes the test.
std::optional<double> ppt_threshold(const ComplexVector& psi, double tol = 1e-9);

/// |00><00| + |01><10| + |10><01| + |11><11|.
ComplexMatrix swap_witness();
double witness_expectation(const ComplexMatrix& witness, const ComplexMatrix& rho);

struct EntanglementTrial {
  double true_lambda = 0.0;
  int outcome_index = 0;
  double estimate = 0.0;
  bool entangled_at_estimate = false;
  bool entangled_at_truth = false;
  double witness_at_estimate = 0.0;
  double witness_at_truth = 0.0;
};

struct EntanglementDemo {
  ReductionOutcome solution;
  std::optional<double> threshold;
  SimulationSummary summary;
  std::vector<EntanglementTrial> trials;
};

/// Lueders measurement of psi against white noise, simulated, with the PPT
/// verdict and the witness value at the estimated and at the true lambda.
EntanglementDemo entanglement_demo(const ComplexVector& psi, const Prior& prior, std::int64_t n_trials,
                                   std::uint64_t seed);

}  // namespace mixest

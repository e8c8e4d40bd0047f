#pragma once

#include <optional>
#include <string>

#include "mixest/highdim_optimizer.hpp"
#include "mixest/qubit_optimizer.hpp"

namespace mixest {

/// Outcome of automatic method selection. `report` is empty only when the
/// embedding produced operators that are not positive.
struct Solution {
  std::string route;
  std::optional<EstimationReport> report;
  std::string certificate;
  bool positivity_ok = true;
  double min_eigenvalue = 0.0;
  std::optional<QubitSolution> qubit;
  std::optional<ReductionOutcome> reduction;
};

/// Qubits go to the planar solver; larger dimensions try, in order, pure state
/// against white noise, commuting states, a common two-dimensional support and
/// finally the two-generator embedding. Identical states raise DegenerateProblem.
Solution solve_problem(const Prior& prior, const DensityMatrix& rho1, const DensityMatrix& rho2);

}  // namespace mixest

#include "mixest/entanglement.hpp"

#include <cmath>

#include "mixest/errors.hpp"

namespace mixest {
namespace {

void require_two_qubit(const ComplexVector& psi) {
  if (psi.size() != 4) throw Error(ErrorCode::WrongShape, "expected a two-qubit vector of length 4", static_cast<double>(psi.size()));
}

}  // namespace

DensityMatrix noisy_two_qubit_state(const ComplexVector& psi, double lambda) {
  require_two_qubit(psi);
  return mixture(lambda, pure_state(psi), maximally_mixed(4));
}

double min_partial_transpose_eigenvalue(const ComplexMatrix& rho4) {
  if (rho4.rows() != 4 || rho4.cols() != 4) throw Error(ErrorCode::WrongShape, "expected a 4x4 operator");
  return min_eigenvalue(partial_transpose_b(rho4, 2, 2));
}

bool ppt_entangled(const ComplexMatrix& rho4, double tol) { return min_partial_transpose_eigenvalue(rho4) < -tol; }

std::optional<double> ppt_threshold(const ComplexVector& psi, double tol) {
  require_two_qubit(psi);
  auto f = [&](double lambda) { return min_partial_transpose_eigenvalue(noisy_two_qubit_state(psi, lambda).matrix()); };
  if (f(1.0) >= -1e-12) return std::nullopt;
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

ComplexMatrix swap_witness() {
  ComplexMatrix w = ComplexMatrix::Zero(4, 4);
  w(0, 0) = 1.0;
  w(1, 2) = 1.0;
  w(2, 1) = 1.0;
  w(3, 3) = 1.0;
  return w;
}

double witness_expectation(const ComplexMatrix& witness, const ComplexMatrix& rho) { return trace_product(witness, rho); }

EntanglementDemo entanglement_demo(const ComplexVector& psi, const Prior& prior, std::int64_t n_trials,
                                   std::uint64_t seed) {
  require_two_qubit(psi);
  auto solution = solve_pure_plus_noise(prior, psi, 4);
  const auto rho1 = pure_state(psi);
  const auto rho2 = maximally_mixed(4);
  auto summary = run_simulation(*solution.povm, prior, rho1, rho2, n_trials, seed, true);
  const ComplexMatrix w = swap_witness();

  std::vector<EntanglementTrial> trials;
  trials.reserve(summary.trials.size());
  for (const auto& t : summary.trials) {
    const auto at_truth = noisy_two_qubit_state(psi, t.true_lambda);
    const auto at_estimate = noisy_two_qubit_state(psi, t.estimate);
    trials.push_back({t.true_lambda, t.outcome_index, t.estimate, ppt_entangled(at_estimate.matrix()),
                      ppt_entangled(at_truth.matrix()), witness_expectation(w, at_estimate.matrix()),
                      witness_expectation(w, at_truth.matrix())});
  }
  return {std::move(solution), ppt_threshold(psi), std::move(summary), std::move(trials)};
}

}  // namespace mixest

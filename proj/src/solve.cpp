#include "mixest/solve.hpp"

#include "mixest/errors.hpp"
#include "mixest/numeric_policy.hpp"

namespace mixest {
namespace {

Solution from_reduction(ReductionOutcome r) {
  Solution s;
  s.route = to_string(r.kind);
  s.certificate = r.certificate;
  s.positivity_ok = r.positivity_ok;
  s.min_eigenvalue = r.min_eigenvalue;
  if (r.povm) s.report = r.report();
  s.reduction = std::move(r);
  return s;
}

}  // namespace

Solution solve_problem(const Prior& prior, const DensityMatrix& rho1, const DensityMatrix& rho2) {
  if (rho1.dim() != rho2.dim()) throw Error(ErrorCode::DimensionMismatch, "rho1 and rho2 differ in dimension");
  if (same_state(rho1, rho2)) {
    throw Error(ErrorCode::DegenerateProblem, "rho1 equals rho2; every measurement gives the prior variance");
  }
  if (rho1.dim() == 2) {
    auto q = optimal_pvm(prior, rho1, rho2);
    Solution s;
    s.route = q.report.method;
    s.report = q.report;
    s.certificate = "planar qubit solution";
    s.qubit = std::move(q);
    return s;
  }
  ComplexVector psi;
  if (is_pure_plus_noise(rho1, rho2, &psi)) return from_reduction(solve_pure_plus_noise(prior, psi, rho1.dim()));
  if (max_abs_entry(commutator(rho1.matrix(), rho2.matrix())) < numeric_policy().commute_tol) {
    return from_reduction(solve_commuting(prior, rho1, rho2));
  }
  if (joint_support_rank(rho1, rho2) <= 2) return from_reduction(solve_two_dim_support(prior, rho1, rho2));
  return from_reduction(embed_and_check(prior, rho1, rho2));
}

}  // namespace mixest

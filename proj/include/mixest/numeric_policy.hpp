#pragma once

namespace mixest {

/// Tolerances shared by every validation and reduction step.
struct NumericPolicy {
  double hermitian_tol = 1e-10;  // max |A - A^dagger| entrywise
  double trace_tol = 1e-10;
  double psd_tol = 1e-10;        // smallest admissible eigenvalue is -psd_tol
  double effect_max_tol = 1e-10; // largest admissible effect eigenvalue is 1 + tol
  double povm_sum_tol = 1e-9;    // sum of effects vs identity, entrywise
  double bloch_norm_tol = 1e-10;
  double commute_tol = 1e-9;     // max-entry norm of [rho1, rho2]
  double support_tol = 1e-9;     // eigenvalue cutoff for support rank
  double never_occurs = 1e-14;   // outcome probability treated as zero
  double same_state_tol = 1e-12; // max |rho1 - rho2| entrywise for a degenerate problem
};

/// The process-wide policy. Not synchronized: set it before spawning work.
const NumericPolicy& numeric_policy();
void set_numeric_policy(const NumericPolicy& policy);

}  // namespace mixest

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mixest/operator_basis.hpp"
#include "mixest/qubit_optimizer.hpp"

namespace mixest {

enum class ReductionKind { Commuting, TwoDimSubspace, PureWithNoise, Embedded, Unreduced };

std::string to_string(ReductionKind kind);

/// Result of one of the d-dimensional reductions. `povm` and `score` are set
/// whenever the reduction produced a valid measurement (positivity_ok).
/// `candidate_effects` always holds the operators that were constructed, valid or not.
struct ReductionOutcome {
  ReductionKind kind = ReductionKind::Unreduced;
  std::optional<Povm> povm;
  std::optional<MeasurementScore> score;
  std::vector<ComplexMatrix> candidate_effects;
  std::string certificate;
  bool positivity_ok = false;
  bool degenerate = false;     // rho1 = rho2: every measurement scores the same
  double reduced_q = 0.0;      // score computed inside the reduced problem
  double min_eigenvalue = 0.0; // smallest candidate-effect eigenvalue

  /// The measurement as an EstimationReport; throws UnsolvedCase without one.
  EstimationReport report() const;
};

/// Rank-one projective measurement onto the common eigenbasis.
ReductionOutcome solve_commuting(const Prior& prior, const DensityMatrix& rho1, const DensityMatrix& rho2);

/// States supported on a common two-dimensional subspace: solve the qubit
/// problem there and add the projector onto the complement as a further outcome.
ReductionOutcome solve_two_dim_support(const Prior& prior, const DensityMatrix& rho1, const DensityMatrix& rho2);

/// rho1 = |psi><psi|, rho2 = 1/d: the measurement {|psi><psi|, 1 - |psi><psi|}.
ReductionOutcome solve_pure_plus_noise(const Prior& prior, const ComplexVector& psi, int dim);

/// Basis whose first generator is along rho1 - rho2 and whose second spans the
/// rest of the traceless parts of rho1 and rho2 (when independent).
OperatorBasis aligned_basis(const DensityMatrix& rho1, const DensityMatrix& rho2);

/// Solves the problem in generalized Bloch coordinates over G_1, G_2 and
/// rebuilds the effects; reports positivity_ok = false (kind Unreduced) when the
/// rebuilt operators are not positive. When both traceless parts lie on one
/// axis the result is the spectral measurement of that axis.
ReductionOutcome embed_and_check(const Prior& prior, const DensityMatrix& rho1, const DensityMatrix& rho2,
                                 const OperatorBasis& basis);
ReductionOutcome embed_and_check(const Prior& prior, const DensityMatrix& rho1, const DensityMatrix& rho2);

/// True when rho1 is pure and rho2 is maximally mixed; fills psi.
bool is_pure_plus_noise(const DensityMatrix& rho1, const DensityMatrix& rho2, ComplexVector* psi = nullptr);

/// Number of eigenvalues of rho1 + rho2 above the support tolerance.
int joint_support_rank(const DensityMatrix& rho1, const DensityMatrix& rho2);

}  // namespace mixest

#include "mixest/highdim_optimizer.hpp"

#include <cmath>
#include <sstream>

#include "mixest/errors.hpp"
#include "mixest/numeric_policy.hpp"

namespace mixest {
namespace {

void require_estimable(const Prior& prior) {
  if (prior.is_degenerate()) throw Error(ErrorCode::InvalidPrior, "a prior without spread gives a constant objective");
}

/// Score of the reduced problem given per-outcome traces against rho1 and rho2.
double reduced_score(const Prior& prior, const std::vector<double>& t1, const std::vector<double>& t2) {
  const double m1 = prior.mean();
  const double m2 = prior.second_moment();
  double q = 0.0;
  for (std::size_t k = 0; k < t1.size(); ++k) {
    const double prob = m1 * t1[k] + (1.0 - m1) * t2[k];
    if (prob < numeric_policy().never_occurs) continue;
    const double first = m2 * t1[k] + (m1 - m2) * t2[k];
    q += first * first / prob;
  }
  return q;
}

ReductionOutcome finish(ReductionKind kind, std::vector<ComplexMatrix> effects, const Prior& prior,
                        const DensityMatrix& rho1, const DensityMatrix& rho2, std::string certificate) {
  ReductionOutcome out;
  out.kind = kind;
  out.certificate = std::move(certificate);
  out.min_eigenvalue = 0.0;
  for (const auto& e : effects) out.min_eigenvalue = std::min(out.min_eigenvalue, min_eigenvalue(e));
  out.positivity_ok = out.min_eigenvalue >= -numeric_policy().psd_tol;
  out.candidate_effects = std::move(effects);
  if (out.positivity_ok) {
    out.povm = validate_povm(out.candidate_effects);
    out.score = q_functional(*out.povm, prior, rho1, rho2);
  } else {
    out.kind = ReductionKind::Unreduced;
  }
  return out;
}

ReductionOutcome degenerate_outcome(ReductionKind kind, const Prior& prior, const DensityMatrix& rho1,
                                    const DensityMatrix& rho2) {
  auto out = finish(kind, {identity(rho1.dim())}, prior, rho1, rho2, "rho1 equals rho2; no measurement is informative");
  out.degenerate = true;
  out.reduced_q = prior.mean() * prior.mean();
  return out;
}

}  // namespace

std::string to_string(ReductionKind kind) {
  switch (kind) {
    case ReductionKind::Commuting: return "commuting";
    case ReductionKind::TwoDimSubspace: return "two_dim_subspace";
    case ReductionKind::PureWithNoise: return "pure_with_noise";
    case ReductionKind::Embedded: return "embedded";
    case ReductionKind::Unreduced: return "unreduced";
  }
  return "unknown";
}

EstimationReport ReductionOutcome::report() const {
  if (!povm || !score) throw Error(ErrorCode::UnsolvedCase, certificate, min_eigenvalue);
  return {to_string(kind), *povm, *score};
}

ReductionOutcome solve_commuting(const Prior& prior, const DensityMatrix& rho1, const DensityMatrix& rho2) {
  require_estimable(prior);
  const ComplexMatrix basis = common_eigenbasis(rho1, rho2);
  const int d = rho1.dim();
  std::vector<ComplexMatrix> effects;
  std::vector<double> t1, t2;
  for (int i = 0; i < d; ++i) {
    const ComplexVector v = basis.col(i);
    effects.push_back(projector(v));
    t1.push_back((v.adjoint() * rho1.matrix() * v)(0, 0).real());
    t2.push_back((v.adjoint() * rho2.matrix() * v)(0, 0).real());
  }
  std::ostringstream cert;
  cert << "common eigenbasis; max |[rho1, rho2]| = " << max_abs_entry(commutator(rho1.matrix(), rho2.matrix()));
  auto out = finish(ReductionKind::Commuting, std::move(effects), prior, rho1, rho2, cert.str());
  out.reduced_q = reduced_score(prior, t1, t2);
  out.degenerate = same_state(rho1, rho2);
  return out;
}

int joint_support_rank(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  const auto eig = hermitian_eigen(rho1.matrix() + rho2.matrix());
  int rank = 0;
  for (Eigen::Index i = 0; i < eig.values.size(); ++i)
    if (eig.values(i) > numeric_policy().support_tol) ++rank;
  return rank;
}

ReductionOutcome solve_two_dim_support(const Prior& prior, const DensityMatrix& rho1, const DensityMatrix& rho2) {
  require_estimable(prior);
  if (rho1.dim() != rho2.dim()) throw Error(ErrorCode::DimensionMismatch, "states differ in dimension");
  const int d = rho1.dim();
  const auto eig = hermitian_eigen(rho1.matrix() + rho2.matrix());
  int rank = 0;
  for (Eigen::Index i = 0; i < eig.values.size(); ++i)
    if (eig.values(i) > numeric_policy().support_tol) ++rank;
  if (rank > 2) throw Error(ErrorCode::SupportTooLarge, "joint support has rank above 2", rank);
  if (same_state(rho1, rho2)) return degenerate_outcome(ReductionKind::TwoDimSubspace, prior, rho1, rho2);

  // Top two eigenvectors of rho1 + rho2 span the joint support.
  const ComplexMatrix v = eig.vectors.rightCols(2);
  const auto q1 = validate_state(v.adjoint() * rho1.matrix() * v);
  const auto q2 = validate_state(v.adjoint() * rho2.matrix() * v);
  const auto qubit = optimal_pvm(prior, q1, q2);

  std::vector<ComplexMatrix> effects;
  for (const auto& e : qubit.report.povm.effects()) effects.push_back(v * e.matrix() * v.adjoint());
  if (d > 2) effects.push_back(identity(d) - v * v.adjoint());
  std::ostringstream cert;
  cert << "joint support rank " << rank << "; qubit angle " << qubit.angle.alpha;
  auto out = finish(ReductionKind::TwoDimSubspace, std::move(effects), prior, rho1, rho2, cert.str());
  out.reduced_q = qubit.report.score.q_value;
  return out;
}

ReductionOutcome solve_pure_plus_noise(const Prior& prior, const ComplexVector& psi, int dim) {
  require_estimable(prior);
  if (dim < 2 || psi.size() != dim) throw Error(ErrorCode::WrongShape, "state vector length must equal dim >= 2");
  const auto rho1 = pure_state(psi);
  const auto rho2 = maximally_mixed(dim);
  const ComplexMatrix p = projector(psi);
  const double inv_d = 1.0 / dim;
  auto out = finish(ReductionKind::PureWithNoise, {p, identity(dim) - p}, prior, rho1, rho2,
                    "Lueders measurement of the pure component");
  out.reduced_q = reduced_score(prior, {1.0, 0.0}, {inv_d, 1.0 - inv_d});
  return out;
}

OperatorBasis aligned_basis(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  if (rho1.dim() != rho2.dim()) throw Error(ErrorCode::DimensionMismatch, "states differ in dimension");
  const ComplexMatrix diff = rho1.matrix() - rho2.matrix();
  if (max_abs_entry(diff) <= numeric_policy().same_state_tol) {
    throw Error(ErrorCode::BasisAlignmentFailed, "rho1 equals rho2; no direction to align with");
  }
  const int d = rho1.dim();
  const ComplexMatrix centre = identity(d) / static_cast<double>(d);
  return completed_basis(d, {diff, rho1.matrix() - centre, rho2.matrix() - centre});
}

ReductionOutcome embed_and_check(const Prior& prior, const DensityMatrix& rho1, const DensityMatrix& rho2,
                                 const OperatorBasis& basis) {
  require_estimable(prior);
  if (rho1.dim() != rho2.dim() || basis.dim() != rho1.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "states and basis differ in dimension");
  }
  if (same_state(rho1, rho2)) return degenerate_outcome(ReductionKind::Embedded, prior, rho1, rho2);
  const int d = rho1.dim();
  const double c = std::sqrt(static_cast<double>(d) * d - d);
  const RealVector r1 = basis_decompose(rho1, basis);
  const RealVector r2 = basis_decompose(rho2, basis);
  const double outside = std::max(r1.tail(r1.size() - 2).cwiseAbs().maxCoeff(), r2.tail(r2.size() - 2).cwiseAbs().maxCoeff());
  if (outside > 1e-9) {
    throw Error(ErrorCode::BasisAlignmentFailed, "states have components beyond G_1, G_2", outside);
  }

  const auto eff = effective_states(prior, rho1, rho2);
  // Traces against the basis operators carry a factor (d - 1) on the coordinate
  // product; folding it into the state coordinates gives the qubit expressions.
  const Eigen::Vector2d sa = (d - 1.0) * basis_decompose(eff.rho_a, basis).head<2>();
  const Eigen::Vector2d sb = (d - 1.0) * basis_decompose(eff.rho_b, basis).head<2>();
  const Eigen::Vector2d a1 = r1.head<2>();
  const Eigen::Vector2d a2 = r2.head<2>();
  const double scale = prior.mean() * prior.mean();
  const double cross = a1.x() * a2.y() - a1.y() * a2.x();

  if (std::abs(cross) < 1e-12) {
    // Both traceless parts lie on one axis A, so the states are functions of A
    // and commute; the spectral measurement of A is optimal among all POVMs.
    const Eigen::Vector2d u = (a1 - a2).normalized();
    const ComplexMatrix axis = u.x() * basis[0] + u.y() * basis[1];
    const auto axis_eig = hermitian_eigen(axis);
    std::vector<ComplexMatrix> effects;
    std::vector<double> t1, t2;
    for (Eigen::Index i = 0; i < axis_eig.values.size();) {
      Eigen::Index j = i;
      ComplexMatrix proj = ComplexMatrix::Zero(d, d);
      while (j < axis_eig.values.size() && axis_eig.values(j) - axis_eig.values(i) < 1e-9) {
        proj += projector(axis_eig.vectors.col(j));
        ++j;
      }
      const double share = static_cast<double>(j - i) / d;
      t1.push_back(share * (1.0 + c * a1.dot(u) * axis_eig.values(i)));
      t2.push_back(share * (1.0 + c * a2.dot(u) * axis_eig.values(i)));
      effects.push_back(proj);
      i = j;
    }
    std::ostringstream cert;
    cert << "single-axis embedding; spectral measurement of the aligned generator with " << effects.size()
         << " outcomes";
    auto out = finish(ReductionKind::Embedded, std::move(effects), prior, rho1, rho2, cert.str());
    out.reduced_q = reduced_score(prior, t1, t2);
    return out;
  }

  const Vec3 ra(sa.x(), sa.y(), 0.0);
  const Vec3 rb(sb.x(), sb.y(), 0.0);
  if (rb.norm() >= 1.0 - 1e-12) {
    ReductionOutcome out;
    out.kind = ReductionKind::Unreduced;
    std::ostringstream cert;
    cert << "scaled mean-state coordinate has norm " << rb.norm() << " >= 1; the planar formulas do not apply";
    out.certificate = cert.str();
    return out;
  }
  const auto geom = planar_geometry(ra, rb, scale);
  const auto angle = optimal_alpha(geom);
  const Vec3 n = geom.direction(angle.alpha);
  const ComplexMatrix along = n.x() * basis[0] + n.y() * basis[1];
  std::vector<ComplexMatrix> effects{0.5 * (identity(d) + c * along), 0.5 * (identity(d) - c * along)};
  std::ostringstream cert;
  cert << "planar embedding; alpha0 = " << angle.alpha;
  auto out = finish(ReductionKind::Embedded, std::move(effects), prior, rho1, rho2, cert.str());
  out.reduced_q = angle.q_max;
  if (!out.positivity_ok) {
    std::ostringstream why;
    why << out.certificate << "; candidate effect eigenvalue " << out.min_eigenvalue << " < 0, no optimality claim";
    out.certificate = why.str();
  }
  return out;
}

ReductionOutcome embed_and_check(const Prior& prior, const DensityMatrix& rho1, const DensityMatrix& rho2) {
  if (same_state(rho1, rho2)) {
    require_estimable(prior);
    return degenerate_outcome(ReductionKind::Embedded, prior, rho1, rho2);
  }
  return embed_and_check(prior, rho1, rho2, aligned_basis(rho1, rho2));
}

bool is_pure_plus_noise(const DensityMatrix& rho1, const DensityMatrix& rho2, ComplexVector* psi) {
  const int d = rho1.dim();
  if (rho2.dim() != d) return false;
  if (max_abs_entry(rho2.matrix() - identity(d) / static_cast<double>(d)) > 1e-10) return false;
  if (std::abs(rho1.purity() - 1.0) > 1e-10) return false;
  if (psi) {
    const auto eig = hermitian_eigen(rho1.matrix());
    *psi = eig.vectors.col(d - 1);
  }
  return true;
}

}  // namespace mixest

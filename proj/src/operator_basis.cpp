#include "mixest/operator_basis.hpp"

#include <cmath>

#include "mixest/errors.hpp"

namespace mixest {
namespace {

constexpr double kBasisTol = 1e-10;

double bloch_scale(int dim) { return static_cast<double>(dim) / std::sqrt(static_cast<double>(dim) * dim - dim); }

}  // namespace

OperatorBasis::OperatorBasis(int dim, std::vector<ComplexMatrix> generators)
    : dim_(dim), generators_(std::move(generators)) {
  if (dim < 2) throw Error(ErrorCode::BadParameter, "operator basis needs dim >= 2", dim);
  const std::size_t expected = static_cast<std::size_t>(dim) * dim - 1;
  if (generators_.size() != expected) {
    throw Error(ErrorCode::BadParameter, "operator basis needs d^2 - 1 generators",
                static_cast<double>(generators_.size()));
  }
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    const auto& g = generators_[i];
    if (g.rows() != dim || g.cols() != dim) throw Error(ErrorCode::DimensionMismatch, "generator has wrong size");
    if (hermiticity_defect(g) > kBasisTol) throw Error(ErrorCode::NotHermitian, "generator is not Hermitian");
    if (std::abs(g.trace()) > kBasisTol) throw Error(ErrorCode::BadParameter, "generator is not traceless");
    for (std::size_t j = 0; j <= i; ++j) {
      const double overlap = trace_product(g, generators_[j]);
      const double target = (i == j) ? 1.0 : 0.0;
      if (std::abs(overlap - target) > kBasisTol) {
        throw Error(ErrorCode::BadParameter, "generators are not orthonormal", overlap);
      }
    }
  }
}

OperatorBasis OperatorBasis::gell_mann(int dim) {
  if (dim < 2) throw Error(ErrorCode::BadParameter, "Gell-Mann basis needs dim >= 2", dim);
  const double norm = 1.0 / std::sqrt(2.0);
  std::vector<ComplexMatrix> gens;
  for (int j = 0; j < dim; ++j) {
    for (int k = j + 1; k < dim; ++k) {
      ComplexMatrix sym = ComplexMatrix::Zero(dim, dim);
      sym(j, k) = sym(k, j) = norm;
      gens.push_back(sym);
      ComplexMatrix anti = ComplexMatrix::Zero(dim, dim);
      anti(j, k) = Complex(0.0, -norm);
      anti(k, j) = Complex(0.0, norm);
      gens.push_back(anti);
    }
  }
  for (int l = 1; l < dim; ++l) {
    ComplexMatrix diag = ComplexMatrix::Zero(dim, dim);
    const double c = std::sqrt(2.0 / (l * (l + 1.0))) * norm;
    for (int j = 0; j < l; ++j) diag(j, j) = c;
    diag(l, l) = -l * c;
    gens.push_back(diag);
  }
  return OperatorBasis(dim, std::move(gens));
}

RealVector basis_decompose(const ComplexMatrix& m, const OperatorBasis& basis) {
  if (m.rows() != basis.dim() || m.cols() != basis.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "operator and basis dimensions differ");
  }
  const double scale = bloch_scale(basis.dim());
  RealVector r(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) r(static_cast<Eigen::Index>(i)) = trace_product(basis[i], m) * scale;
  return r;
}

RealVector basis_decompose(const DensityMatrix& rho, const OperatorBasis& basis) {
  return basis_decompose(rho.matrix(), basis);
}

ComplexMatrix basis_compose(const RealVector& coords, const OperatorBasis& basis) {
  if (static_cast<std::size_t>(coords.size()) != basis.size()) {
    throw Error(ErrorCode::DimensionMismatch, "coordinate vector length differs from basis size");
  }
  const int d = basis.dim();
  ComplexMatrix out = identity(d);
  const double c = std::sqrt(static_cast<double>(d) * d - d);
  for (std::size_t i = 0; i < basis.size(); ++i) out += c * coords(static_cast<Eigen::Index>(i)) * basis[i];
  return out / static_cast<double>(d);
}

OperatorBasis completed_basis(int dim, const std::vector<ComplexMatrix>& leading, double tol) {
  std::vector<ComplexMatrix> gens;
  auto absorb = [&](ComplexMatrix candidate, double threshold) {
    candidate = hermitian_part(candidate);
    candidate -= (candidate.trace() / static_cast<double>(dim)) * identity(dim);
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& g : gens) candidate -= trace_product(g, candidate) * g;
    }
    const double n = std::sqrt(std::max(0.0, trace_product(candidate, candidate)));
    if (n <= threshold) return;
    gens.push_back(candidate / n);
  };
  for (const auto& m : leading) absorb(m, tol);
  const auto fill = OperatorBasis::gell_mann(dim);
  const std::size_t full = static_cast<std::size_t>(dim) * dim - 1;
  for (const auto& g : fill.generators()) {
    if (gens.size() == full) break;
    absorb(g, 1e-6);
  }
  if (gens.size() != full) throw Error(ErrorCode::BasisAlignmentFailed, "could not complete the operator basis");
  return OperatorBasis(dim, std::move(gens));
}

}  // namespace mixest

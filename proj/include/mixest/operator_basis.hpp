#pragma once

#include <vector>

#include "mixest/state.hpp"

namespace mixest {

/// Orthonormal traceless Hermitian generators G_1..G_{d^2-1}
/// (tr G_i G_j = delta_ij). G_0 = 1/sqrt(d) is implicit.
class OperatorBasis {
 public:
  /// Checks orthonormality, tracelessness and Hermiticity to 1e-10.
  OperatorBasis(int dim, std::vector<ComplexMatrix> generators);

  /// Generalized Gell-Mann matrices scaled by 1/sqrt(2). For each pair j < k
  /// the symmetric then the antisymmetric generator, then the d-1 diagonal ones.
  /// For d = 2 this is (sx, sy, sz) / sqrt(2).
  static OperatorBasis gell_mann(int dim);

  int dim() const { return dim_; }
  std::size_t size() const { return generators_.size(); }
  const ComplexMatrix& operator[](std::size_t i) const { return generators_[i]; }
  const std::vector<ComplexMatrix>& generators() const { return generators_; }

 private:
  int dim_;
  std::vector<ComplexMatrix> generators_;
};

/// Generalized Bloch coordinates r_i = tr(G_i m) * d / sqrt(d^2 - d) of a
/// trace-one Hermitian operator.
RealVector basis_decompose(const ComplexMatrix& m, const OperatorBasis& basis);
RealVector basis_decompose(const DensityMatrix& rho, const OperatorBasis& basis);

/// (1/d) (1 + sqrt(d^2 - d) sum_i r_i G_i).
ComplexMatrix basis_compose(const RealVector& coords, const OperatorBasis& basis);

/// Gram-Schmidt under the Hilbert-Schmidt inner product: `leading` (after
/// removing their trace and orthonormalizing) come first, the rest of the basis
/// is completed from the Gell-Mann generators. Leading operators whose residual
/// norm is below `tol` are dropped.
OperatorBasis completed_basis(int dim, const std::vector<ComplexMatrix>& leading, double tol = 1e-9);

}  // namespace mixest

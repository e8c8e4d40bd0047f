#pragma once

#include <Eigen/Dense>
#include <complex>

namespace mixest {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Vec3 = Eigen::Vector3d;

/// Eigen-decomposition of a Hermitian matrix. Eigenvalues ascending; each
/// eigenvector has its first non-negligible component made real positive.
struct HermitianEigen {
  RealVector values;
  ComplexMatrix vectors;  // columns
};

HermitianEigen hermitian_eigen(const ComplexMatrix& m);
double min_eigenvalue(const ComplexMatrix& m);
double max_eigenvalue(const ComplexMatrix& m);

ComplexMatrix identity(int dim);
ComplexMatrix pauli(int axis);  // 0 = x, 1 = y, 2 = z
ComplexMatrix projector(const ComplexVector& v);

/// Re tr(A B), computed without forming the product.
double trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

double max_abs_entry(const ComplexMatrix& m);
double hermiticity_defect(const ComplexMatrix& m);
ComplexMatrix hermitian_part(const ComplexMatrix& m);
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// Multiplies v by a global phase so its first entry with modulus above
/// `tol` is real and positive.
void fix_phase(Eigen::Ref<ComplexVector> v, double tol = 1e-12);

/// Transpose on the second factor of a (dim_a * dim_b)-dimensional operator.
ComplexMatrix partial_transpose_b(const ComplexMatrix& m, int dim_a, int dim_b);

}  // namespace mixest

#include "mixest/linalg.hpp"

#include <Eigen/Eigenvalues>

#include "mixest/errors.hpp"

namespace mixest {

void fix_phase(Eigen::Ref<ComplexVector> v, double tol) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mod = std::abs(v[i]);
    if (mod > tol) {
      v *= std::conj(v[i]) / mod;
      v[i] = Complex(mod, 0.0);
      return;
    }
  }
}

HermitianEigen hermitian_eigen(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(m));
  HermitianEigen out{solver.eigenvalues(), solver.eigenvectors()};
  for (Eigen::Index k = 0; k < out.vectors.cols(); ++k) fix_phase(out.vectors.col(k));
  return out;
}

double min_eigenvalue(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(m), Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

double max_eigenvalue(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(m), Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(solver.eigenvalues().size() - 1);
}

ComplexMatrix identity(int dim) { return ComplexMatrix::Identity(dim, dim); }

ComplexMatrix pauli(int axis) {
  ComplexMatrix s(2, 2);
  switch (axis) {
    case 0: s << 0.0, 1.0, 1.0, 0.0; break;
    case 1: s << 0.0, Complex(0, -1), Complex(0, 1), 0.0; break;
    case 2: s << 1.0, 0.0, 0.0, -1.0; break;
    default: throw Error(ErrorCode::BadParameter, "Pauli axis must be 0, 1 or 2");
  }
  return s;
}

ComplexMatrix projector(const ComplexVector& v) { return v * v.adjoint(); }

double trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a.transpose().cwiseProduct(b)).sum().real();
}

double max_abs_entry(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double hermiticity_defect(const ComplexMatrix& m) { return max_abs_entry(m - m.adjoint()); }

ComplexMatrix hermitian_part(const ComplexMatrix& m) { return 0.5 * (m + m.adjoint()); }

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

ComplexMatrix partial_transpose_b(const ComplexMatrix& m, int dim_a, int dim_b) {
  if (m.rows() != dim_a * dim_b || m.cols() != dim_a * dim_b) {
    throw Error(ErrorCode::WrongShape, "operator size does not match dim_a * dim_b");
  }
  ComplexMatrix out(m.rows(), m.cols());
  for (int i = 0; i < dim_a; ++i)
    for (int j = 0; j < dim_b; ++j)
      for (int k = 0; k < dim_a; ++k)
        for (int l = 0; l < dim_b; ++l)
          out(i * dim_b + j, k * dim_b + l) = m(i * dim_b + l, k * dim_b + j);
  return out;
}

}  // namespace mixest

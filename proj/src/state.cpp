#include "mixest/state.hpp"

#include <cmath>
#include <sstream>

#include "mixest/errors.hpp"
#include "mixest/numeric_policy.hpp"

namespace mixest {
namespace {

void require_square(const ComplexMatrix& m) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw Error(ErrorCode::NotSquare, "matrix must be square and non-empty");
  }
}

void require_hermitian(const ComplexMatrix& m) {
  const double defect = hermiticity_defect(m);
  if (defect > numeric_policy().hermitian_tol) {
    std::ostringstream msg;
    msg << "max |A - A^dagger| = " << defect;
    throw Error(ErrorCode::NotHermitian, msg.str(), defect);
  }
}

}  // namespace

std::vector<ComplexMatrix> Povm::matrices() const {
  std::vector<ComplexMatrix> out;
  out.reserve(effects_.size());
  for (const auto& e : effects_) out.push_back(e.matrix());
  return out;
}

DensityMatrix validate_state(const ComplexMatrix& m) {
  const auto& policy = numeric_policy();
  require_square(m);
  require_hermitian(m);
  const ComplexMatrix h = hermitian_part(m);
  const double trace_error = std::abs(h.trace().real() - 1.0);
  if (trace_error > policy.trace_tol) {
    std::ostringstream msg;
    msg << "trace deviates from 1 by " << trace_error;
    throw Error(ErrorCode::NotUnitTrace, msg.str(), trace_error);
  }
  const double lowest = min_eigenvalue(h);
  if (lowest < -policy.psd_tol) {
    std::ostringstream msg;
    msg << "smallest eigenvalue " << lowest;
    throw Error(ErrorCode::NotPSD, msg.str(), lowest);
  }
  return DensityMatrix(h);
}

Effect validate_effect(const ComplexMatrix& m) {
  const auto& policy = numeric_policy();
  require_square(m);
  require_hermitian(m);
  const ComplexMatrix h = hermitian_part(m);
  const auto eig = hermitian_eigen(h);
  const double lowest = eig.values(0);
  const double highest = eig.values(eig.values.size() - 1);
  if (lowest < -policy.psd_tol) {
    std::ostringstream msg;
    msg << "effect has eigenvalue " << lowest;
    throw Error(ErrorCode::NotPSD, msg.str(), lowest);
  }
  if (highest > 1.0 + policy.effect_max_tol) {
    std::ostringstream msg;
    msg << "effect has eigenvalue " << highest << " above 1";
    throw Error(ErrorCode::EffectTooLarge, msg.str(), highest);
  }
  return Effect(h);
}

Povm validate_povm(std::span<const ComplexMatrix> effects) {
  if (effects.empty()) throw Error(ErrorCode::InvalidPovm, "a POVM needs at least one effect");
  const auto dim = effects.front().rows();
  std::vector<Effect> checked;
  checked.reserve(effects.size());
  ComplexMatrix sum = ComplexMatrix::Zero(dim, dim);
  for (std::size_t k = 0; k < effects.size(); ++k) {
    if (effects[k].rows() != dim || effects[k].cols() != dim) {
      throw Error(ErrorCode::InvalidPovm, "effects have differing dimensions");
    }
    try {
      checked.push_back(validate_effect(effects[k]));
    } catch (const Error& e) {
      throw Error(ErrorCode::InvalidPovm, "effect " + std::to_string(k) + ": " + e.what(), e.magnitude());
    }
    sum += checked.back().matrix();
  }
  const double defect = max_abs_entry(sum - identity(static_cast<int>(dim)));
  if (defect > numeric_policy().povm_sum_tol) {
    std::ostringstream msg;
    msg << "effects sum to identity only within " << defect;
    throw Error(ErrorCode::InvalidPovm, msg.str(), defect);
  }
  return Povm(std::move(checked));
}

DensityMatrix mixture(double weight, const DensityMatrix& first, const DensityMatrix& second) {
  if (first.dim() != second.dim()) throw Error(ErrorCode::DimensionMismatch, "mixture of states with different dimension");
  if (!(weight >= 0.0 && weight <= 1.0)) throw Error(ErrorCode::BadParameter, "mixture weight outside [0, 1]", weight);
  return DensityMatrix(weight * first.matrix() + (1.0 - weight) * second.matrix());
}

DensityMatrix pure_state(const ComplexVector& psi) {
  const double n = psi.norm();
  if (std::abs(n - 1.0) > 1e-9) throw Error(ErrorCode::BadParameter, "state vector is not normalized", n);
  return validate_state(projector(psi));
}

DensityMatrix maximally_mixed(int dim) {
  return validate_state(identity(dim) / static_cast<double>(dim));
}

Vec3 pauli_coordinates(const ComplexMatrix& m) {
  if (m.rows() != 2 || m.cols() != 2) throw Error(ErrorCode::WrongDimension, "Pauli coordinates need a 2x2 operator");
  return {trace_product(pauli(0), m), trace_product(pauli(1), m), trace_product(pauli(2), m)};
}

BlochVector bloch_decompose(const DensityMatrix& rho) {
  if (rho.dim() != 2) throw Error(ErrorCode::WrongDimension, "Bloch vectors are defined for qubits only", rho.dim());
  return BlochVector::from(pauli_coordinates(rho.matrix()));
}

ComplexMatrix pauli_dot(const Vec3& r) {
  return r.x() * pauli(0) + r.y() * pauli(1) + r.z() * pauli(2);
}

Effect bloch_compose(const BlochVector& r, double weight) {
  const double n = r.norm();
  if (n > 1.0 + numeric_policy().bloch_norm_tol) {
    throw Error(ErrorCode::VectorTooLong, "Bloch vector longer than 1", n);
  }
  if (weight < 0.0) throw Error(ErrorCode::BadParameter, "negative effect weight", weight);
  return validate_effect(weight * (identity(2) + pauli_dot(r.vec())));
}

DensityMatrix qubit_state(const BlochVector& r) {
  const double n = r.norm();
  if (n > 1.0 + numeric_policy().bloch_norm_tol) {
    throw Error(ErrorCode::VectorTooLong, "Bloch vector longer than 1", n);
  }
  return validate_state(0.5 * (identity(2) + pauli_dot(r.vec())));
}

ComplexMatrix common_eigenbasis(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  if (rho1.dim() != rho2.dim()) throw Error(ErrorCode::DimensionMismatch, "states differ in dimension");
  const double comm = max_abs_entry(commutator(rho1.matrix(), rho2.matrix()));
  const double tol = numeric_policy().commute_tol;
  if (comm >= tol) {
    std::ostringstream msg;
    msg << "max |[rho1, rho2]| = " << comm;
    throw Error(ErrorCode::NotCommuting, msg.str(), comm);
  }
  const int dim = rho1.dim();
  const auto first = hermitian_eigen(rho1.matrix());
  ComplexMatrix basis(dim, dim);
  int start = 0;
  while (start < dim) {
    int stop = start + 1;
    while (stop < dim && first.values(stop) - first.values(start) < tol) ++stop;
    const int width = stop - start;
    const ComplexMatrix block = first.vectors.middleCols(start, width);
    if (width == 1) {
      basis.col(start) = block.col(0);
    } else {
      const auto inner = hermitian_eigen(block.adjoint() * rho2.matrix() * block);
      basis.middleCols(start, width) = block * inner.vectors;
      for (int k = start; k < stop; ++k) fix_phase(basis.col(k));
    }
    start = stop;
  }
  return basis;
}

bool same_state(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  return rho1.dim() == rho2.dim() &&
         max_abs_entry(rho1.matrix() - rho2.matrix()) <= numeric_policy().same_state_tol;
}

}  // namespace mixest

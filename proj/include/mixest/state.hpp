#pragma once

#include <span>
#include <vector>

#include "mixest/linalg.hpp"

namespace mixest {

/// Hermitian, positive semidefinite, unit-trace operator. Only obtainable
/// through validation or through operations that preserve the invariants.
class DensityMatrix {
 public:
  int dim() const { return static_cast<int>(m_.rows()); }
  const ComplexMatrix& matrix() const { return m_; }
  double purity() const { return trace_product(m_, m_); }

  friend DensityMatrix validate_state(const ComplexMatrix& m);
  friend DensityMatrix mixture(double weight, const DensityMatrix& first, const DensityMatrix& second);

 private:
  explicit DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

/// One POVM element: Hermitian with spectrum in [0, 1].
class Effect {
 public:
  int dim() const { return static_cast<int>(m_.rows()); }
  const ComplexMatrix& matrix() const { return m_; }
  double probability(const DensityMatrix& rho) const { return trace_product(m_, rho.matrix()); }

  friend Effect validate_effect(const ComplexMatrix& m);

 private:
  explicit Effect(ComplexMatrix m) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

class Povm {
 public:
  int dim() const { return effects_.front().dim(); }
  std::size_t size() const { return effects_.size(); }
  const Effect& operator[](std::size_t m) const { return effects_[m]; }
  const std::vector<Effect>& effects() const { return effects_; }
  std::vector<ComplexMatrix> matrices() const;

  friend Povm validate_povm(std::span<const ComplexMatrix> effects);

 private:
  explicit Povm(std::vector<Effect> effects) : effects_(std::move(effects)) {}
  std::vector<Effect> effects_;
};

DensityMatrix validate_state(const ComplexMatrix& m);
Effect validate_effect(const ComplexMatrix& m);
Povm validate_povm(std::span<const ComplexMatrix> effects);

/// weight * first + (1 - weight) * second, weight in [0, 1].
DensityMatrix mixture(double weight, const DensityMatrix& first, const DensityMatrix& second);

/// Pure state |psi><psi| for a unit vector.
DensityMatrix pure_state(const ComplexVector& psi);
DensityMatrix maximally_mixed(int dim);

struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3 vec() const { return {x, y, z}; }
  double norm() const { return vec().norm(); }
  static BlochVector from(const Vec3& v) { return {v.x(), v.y(), v.z()}; }
};

/// (tr sx rho, tr sy rho, tr sz rho) for a qubit state.
BlochVector bloch_decompose(const DensityMatrix& rho);
/// Same map for an arbitrary 2x2 Hermitian operator.
Vec3 pauli_coordinates(const ComplexMatrix& m);

/// weight * (1 + r . sigma).
Effect bloch_compose(const BlochVector& r, double weight);
/// (1 + r . sigma) / 2.
DensityMatrix qubit_state(const BlochVector& r);
ComplexMatrix pauli_dot(const Vec3& r);

/// Orthonormal basis diagonalizing both states (columns of the result).
/// Degenerate eigenspaces of rho1 are resolved by diagonalizing rho2 inside them.
ComplexMatrix common_eigenbasis(const DensityMatrix& rho1, const DensityMatrix& rho2);

bool same_state(const DensityMatrix& rho1, const DensityMatrix& rho2);

}  // namespace mixest

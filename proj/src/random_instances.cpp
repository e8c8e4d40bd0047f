#include "mixest/random_instances.hpp"

#include <cmath>
#include <numbers>

#include "mixest/errors.hpp"

namespace mixest {
namespace {

Complex complex_normal(CounterRng& rng) { return {rng.normal(), rng.normal()}; }

std::vector<double> dirichlet(CounterRng& rng, int n) {
  std::vector<double> w(n);
  double total = 0.0;
  for (auto& x : w) total += (x = rng.exponential());
  for (auto& x : w) x /= total;
  return w;
}

ComplexMatrix inverse_sqrt(const ComplexMatrix& s) {
  const auto eig = hermitian_eigen(s);
  const RealVector inv = eig.values.cwiseSqrt().cwiseInverse();
  return eig.vectors * inv.asDiagonal() * eig.vectors.adjoint();
}

}  // namespace

ComplexVector random_unit_vector(CounterRng& rng, int dim) {
  ComplexVector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = complex_normal(rng);
  return v / v.norm();
}

DensityMatrix random_density_matrix(CounterRng& rng, int dim, int rank) {
  ComplexMatrix g(dim, rank);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < rank; ++j) g(i, j) = complex_normal(rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return validate_state(hermitian_part(rho));
}

DensityMatrix random_density_matrix(CounterRng& rng, int dim) { return random_density_matrix(rng, dim, dim); }

Vec3 random_sphere_point(CounterRng& rng) {
  Vec3 v(rng.normal(), rng.normal(), rng.normal());
  return v.normalized();
}

Vec3 random_ball_point(CounterRng& rng) { return std::cbrt(rng.uniform()) * random_sphere_point(rng); }

DensityMatrix random_qubit_state(CounterRng& rng) { return qubit_state(BlochVector::from(random_ball_point(rng))); }

Povm random_povm(CounterRng& rng, int dim, int n_rank_one) {
  for (int attempt = 0; attempt < 200; ++attempt) {
    const auto w = dirichlet(rng, n_rank_one + 1);
    std::vector<ComplexMatrix> effects;
    ComplexMatrix rest = identity(dim);
    for (int k = 0; k < n_rank_one; ++k) {
      effects.push_back(w[k] * dim * projector(random_unit_vector(rng, dim)));
      rest -= effects.back();
    }
    rest = hermitian_part(rest);
    if (min_eigenvalue(rest) < 0.0) continue;
    effects.push_back(rest);
    return validate_povm(effects);
  }
  return random_povm_normalized(rng, dim, n_rank_one + 1);
}

Povm random_povm_normalized(CounterRng& rng, int dim, int n_outcomes) {
  // Effects kept as Gram factors F F^dagger so the rescaled ones stay positive.
  std::vector<ComplexMatrix> factors;
  ComplexMatrix s;
  do {  // redraw near-singular sums; S^{-1/2} would amplify rounding
    factors.clear();
    s = ComplexMatrix::Zero(dim, dim);
    for (int k = 0; k < n_outcomes; ++k) {
      factors.push_back(std::sqrt(rng.exponential()) * random_unit_vector(rng, dim));
      s += factors.back() * factors.back().adjoint();
    }
    if (n_outcomes < dim) {
      // Too few outcomes to span; pad with the complement.
      const auto eig = hermitian_eigen(identity(dim) - s / (max_eigenvalue(s) + 1.0));
      factors.push_back(eig.vectors * eig.values.cwiseMax(0.0).cwiseSqrt().cast<Complex>().asDiagonal());
      s += factors.back() * factors.back().adjoint();
    }
  } while (min_eigenvalue(s) < 1e-6 * max_eigenvalue(s));
  const ComplexMatrix t = inverse_sqrt(s);
  std::vector<ComplexMatrix> effects;
  for (const auto& f : factors) {
    const ComplexMatrix g = t * f;
    effects.push_back(hermitian_part(g * g.adjoint()));
  }
  return validate_povm(effects);
}

PlanarPovm random_planar_povm(CounterRng& rng) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  for (;;) {
    const double a1 = two_pi * rng.uniform();
    const double a2 = two_pi * rng.uniform();
    const double a3 = two_pi * rng.uniform();
    const auto w = barycentric_weights(a1, a2, a3);
    if (w.empty() || *std::min_element(w.begin(), w.end()) < 1e-9) continue;
    return PlanarPovm{{{w[0], a1}, {w[1], a2}, {w[2], a3}}};
  }
}

std::pair<DensityMatrix, DensityMatrix> random_commuting_pair(CounterRng& rng, int dim) {
  ComplexMatrix g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = complex_normal(rng);
  const ComplexMatrix u = Eigen::HouseholderQR<ComplexMatrix>(g).householderQ();
  auto diag = [&] {
    const auto w = dirichlet(rng, dim);
    RealVector v(dim);
    for (int i = 0; i < dim; ++i) v(i) = w[i];
    return validate_state(hermitian_part(u * v.cast<Complex>().asDiagonal() * u.adjoint()));
  };
  auto a = diag();
  auto b = diag();
  return {a, b};
}

}  // namespace mixest

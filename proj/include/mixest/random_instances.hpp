#pragma once

#include <vector>

#include "mixest/linalg.hpp"
#include "mixest/qubit_optimizer.hpp"
#include "mixest/rng.hpp"
#include "mixest/state.hpp"

namespace mixest {

/// Haar-random unit vector in C^d.
ComplexVector random_unit_vector(CounterRng& rng, int dim);
/// Ginibre ensemble: G G^dagger / tr, with G of size dim x rank.
DensityMatrix random_density_matrix(CounterRng& rng, int dim, int rank);
DensityMatrix random_density_matrix(CounterRng& rng, int dim);
/// Uniform point of the unit ball.
Vec3 random_ball_point(CounterRng& rng);
Vec3 random_sphere_point(CounterRng& rng);
DensityMatrix random_qubit_state(CounterRng& rng);

/// Rank-one effects c_k |v_k><v_k| with Haar v_k and Dirichlet-weighted c_k
/// (scaled by d), completed by 1 - sum; resampled until the remainder is
/// positive. Falls back to random_povm_normalized after many rejections.
Povm random_povm(CounterRng& rng, int dim, int n_rank_one);
/// S^{-1/2} A_k S^{-1/2} for random rank-one A_k, S = sum A_k.
Povm random_povm_normalized(CounterRng& rng, int dim, int n_outcomes);
/// Three pure in-plane outcomes at random angles with the barycentric weights.
PlanarPovm random_planar_povm(CounterRng& rng);

/// Commuting pair diagonal in a common random unitary basis.
std::pair<DensityMatrix, DensityMatrix> random_commuting_pair(CounterRng& rng, int dim);

}  // namespace mixest

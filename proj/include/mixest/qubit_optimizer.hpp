#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mixest/report.hpp"

namespace mixest {

/// The qubit problem reduced to the plane spanned by r_a and r_b.
///
/// gamma is atan2 of r_b's components along (e_delta, e_perp). A measurement
/// angle alpha denotes the Bloch direction cos(alpha) e_delta - sin(alpha) e_perp,
/// so that the angle between that direction and r_b is alpha + gamma.
/// `scale` is the squared prior mean (1/4 for the uniform prior); the score of
/// any planar measurement is scale * (1 + ...).
struct PlanarGeometry {
  double delta_r = 0.0;
  double r_b_norm = 0.0;
  double gamma = 0.0;
  Vec3 e_delta = Vec3::UnitX();
  Vec3 e_perp = Vec3::UnitZ();
  double scale = 0.25;

  Vec3 direction(double alpha) const;
  /// Angle of the in-plane component of v.
  double angle_of(const Vec3& v) const;

  /// Geometry with the default frame (e_delta = x, e_perp = z).
  static PlanarGeometry from_scalars(double delta_r, double r_b_norm, double gamma, double scale = 0.25);
};

/// Frame from the effective-state Bloch vectors. If r_a and r_b are parallel
/// the plane is the lowest-index coordinate plane containing them.
PlanarGeometry planar_geometry(const Vec3& r_a, const Vec3& r_b, double scale);
PlanarGeometry planar_geometry(const Prior& prior, const DensityMatrix& rho1, const DensityMatrix& rho2);

struct PlanarOutcome {
  double weight;  // effect = weight * (1 + n(angle) . sigma)
  double angle;
};

/// Pure in-plane effects; weights sum to 1 and the weighted directions to 0.
struct PlanarPovm {
  std::vector<PlanarOutcome> outcomes;

  /// Throws InvalidPovm when either completeness condition fails by more than tol.
  void validate(double tol = 1e-9) const;
};

double planar_q(const PlanarPovm& povm, const PlanarGeometry& geom);
/// Effects weight * (1 + n . sigma) in the geometry's frame.
Povm lift(const PlanarPovm& povm, const PlanarGeometry& geom);

struct PlanarReduction {
  PlanarPovm povm;
  PlanarGeometry geometry;
};

/// Effects with their Bloch vectors projected onto the geometry's plane.
/// Scores the same as the input; effects are in general not pure.
Povm project_to_plane(const Povm& povm, const PlanarGeometry& geom);

/// Projects every effect's Bloch vector onto the r_a/r_b plane and splits each
/// projected effect into two pure ones along a chord that keeps the ratio
/// tr[E rho_a] / tr[E rho_b]. Preserves the score.
PlanarReduction reduce_to_plane(const Povm& povm, const Prior& prior, const DensityMatrix& rho1,
                                const DensityMatrix& rho2);

/// Spectral split of a full-rank qubit effect into two rank-one parts, larger
/// eigenvalue first. A multiple of the identity splits along z.
std::pair<Effect, Effect> split_effect(const Effect& effect);
/// `povm` with outcome `index` replaced by its spectral split.
Povm split_outcome(const Povm& povm, std::size_t index);

/// cos^2(alpha) / (1 - r_b^2 cos^2(alpha + gamma)).
double pvm_objective(double alpha, const PlanarGeometry& geom);
/// Score of the two-outcome projective measurement along direction(alpha).
double q_of_angle(double alpha, const PlanarGeometry& geom);

/// Representative of an angle modulo pi in (-pi/2, pi/2].
double wrap_half_turn(double alpha);

/// Closed-form maximizer of pvm_objective, sign branch chosen by the sign of
/// gamma, wrapped to (-pi/2, pi/2].
double optimal_alpha_formula(const PlanarGeometry& geom);

struct OptimalAngle {
  double alpha = 0.0;          // in (-pi/2, pi/2]
  double q_max = 0.0;
  double formula_alpha = 0.0;  // closed form, unrefined
  double grid_alpha = 0.0;     // grid scan + refinement
  bool degenerate = false;     // delta_r = 0: every measurement scores the same
  bool formula_agrees = true;  // closed form within 1e-6 rad of the scan
};

/// Closed form refined by a local search and checked against a 2000-point scan.
OptimalAngle optimal_alpha(const PlanarGeometry& geom);

struct QubitSolution {
  EstimationReport report;
  PlanarGeometry geometry;
  OptimalAngle angle;
  Vec3 direction;  // Bloch direction of the first projector
};

QubitSolution optimal_pvm(const Prior& prior, const DensityMatrix& rho1, const DensityMatrix& rho2);

struct BruteForceResult {
  PlanarPovm best;
  double q = 0.0;
  PlanarGeometry geometry;
};

/// Multi-start local search over planar measurements with 2 or 3 pure outcomes.
/// For three outcomes the weights follow from the angles (the unique barycentric
/// solution of the completeness conditions); infeasible angle sets are rejected.
BruteForceResult brute_force_planar(const PlanarGeometry& geom, int n_outcomes, int n_starts, std::uint64_t seed,
                                    int iterations = 200);
BruteForceResult brute_force_planar(const Prior& prior, const DensityMatrix& rho1, const DensityMatrix& rho2,
                                    int n_outcomes, int n_starts, std::uint64_t seed, int iterations = 200);

/// Weights of three pure planar outcomes at the given angles, or an empty
/// vector when the origin is not in their convex hull.
std::vector<double> barycentric_weights(double a1, double a2, double a3);

}  // namespace mixest

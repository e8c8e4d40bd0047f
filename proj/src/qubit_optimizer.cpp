#include "mixest/qubit_optimizer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/tools/minima.hpp>

#include "mixest/errors.hpp"
#include "mixest/numeric_policy.hpp"
#include "mixest/rng.hpp"

namespace mixest {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAgreementTol = 1e-6;
constexpr int kScanPoints = 2000;

double wrap_full_turn(double a) { return a - 2.0 * kPi * std::ceil((a - kPi) / (2.0 * kPi)); }

double angle_distance_mod_pi(double a, double b) { return std::abs(wrap_half_turn(a - b)); }

/// Maximizes pvm_objective on [lo, hi] with Brent's method.
double refine_maximum(const PlanarGeometry& geom, double lo, double hi) {
  auto neg = [&](double a) { return -pvm_objective(a, geom); };
  std::uintmax_t iters = 200;
  const auto r = boost::math::tools::brent_find_minima(neg, lo, hi, std::numeric_limits<double>::digits / 2, iters);
  return r.first;
}

Vec3 first_free_axis(const Vec3& e) {
  for (int k = 0; k < 3; ++k) {
    const Vec3 axis = Vec3::Unit(k);
    const Vec3 rest = axis - axis.dot(e) * e;
    if (rest.norm() > 1e-6) return rest.normalized();
  }
  return Vec3::UnitZ();
}

}  // namespace

Vec3 PlanarGeometry::direction(double alpha) const {
  return std::cos(alpha) * e_delta - std::sin(alpha) * e_perp;
}

double PlanarGeometry::angle_of(const Vec3& v) const { return std::atan2(-v.dot(e_perp), v.dot(e_delta)); }

PlanarGeometry PlanarGeometry::from_scalars(double delta_r, double r_b_norm, double gamma, double scale) {
  if (delta_r < 0.0 || r_b_norm < 0.0 || r_b_norm > 1.0) {
    throw Error(ErrorCode::BadParameter, "need delta_r >= 0 and r_b in [0, 1]");
  }
  PlanarGeometry g;
  g.delta_r = delta_r;
  g.r_b_norm = r_b_norm;
  g.gamma = gamma;
  g.scale = scale;
  return g;
}

PlanarGeometry planar_geometry(const Vec3& r_a, const Vec3& r_b, double scale) {
  PlanarGeometry g;
  g.scale = scale;
  const Vec3 delta = r_a - r_b;
  g.delta_r = delta.norm();
  g.r_b_norm = r_b.norm();
  if (g.delta_r > 1e-14) {
    g.e_delta = delta / g.delta_r;
  } else if (g.r_b_norm > 1e-14) {
    g.e_delta = r_b / g.r_b_norm;
  } else {
    g.e_delta = Vec3::UnitX();
  }
  const Vec3 perp = r_b - r_b.dot(g.e_delta) * g.e_delta;
  g.e_perp = perp.norm() > 1e-12 ? Vec3(perp.normalized()) : first_free_axis(g.e_delta);
  g.gamma = std::atan2(r_b.dot(g.e_perp), r_b.dot(g.e_delta));
  return g;
}

PlanarGeometry planar_geometry(const Prior& prior, const DensityMatrix& rho1, const DensityMatrix& rho2) {
  const auto eff = effective_states(prior, rho1, rho2);
  return planar_geometry(bloch_decompose(eff.rho_a).vec(), bloch_decompose(eff.rho_b).vec(),
                         prior.mean() * prior.mean());
}

void PlanarPovm::validate(double tol) const {
  double total = 0.0;
  double cx = 0.0;
  double cy = 0.0;
  for (const auto& o : outcomes) {
    if (o.weight < -tol) throw Error(ErrorCode::InvalidPovm, "negative planar weight", o.weight);
    total += o.weight;
    cx += o.weight * std::cos(o.angle);
    cy += o.weight * std::sin(o.angle);
  }
  if (std::abs(total - 1.0) > tol) throw Error(ErrorCode::InvalidPovm, "planar weights do not sum to 1", total);
  if (std::hypot(cx, cy) > tol) throw Error(ErrorCode::InvalidPovm, "planar directions are not balanced", std::hypot(cx, cy));
}

double planar_q(const PlanarPovm& povm, const PlanarGeometry& geom) {
  double total = 0.0;
  for (const auto& o : povm.outcomes) {
    const double denom = 1.0 + geom.r_b_norm * std::cos(o.angle + geom.gamma);
    if (o.weight * denom < numeric_policy().never_occurs) continue;
    const double c = geom.delta_r * std::cos(o.angle);
    total += o.weight * c * c / denom;
  }
  return geom.scale * (1.0 + total);
}

Povm lift(const PlanarPovm& povm, const PlanarGeometry& geom) {
  std::vector<ComplexMatrix> effects;
  effects.reserve(povm.outcomes.size());
  for (const auto& o : povm.outcomes) {
    effects.push_back(o.weight * (identity(2) + pauli_dot(geom.direction(o.angle))));
  }
  return validate_povm(effects);
}

Povm project_to_plane(const Povm& povm, const PlanarGeometry& geom) {
  if (povm.dim() != 2) throw Error(ErrorCode::WrongDimension, "plane projection is defined for qubits", povm.dim());
  std::vector<ComplexMatrix> effects;
  for (const auto& e : povm.effects()) {
    const double weight = 0.5 * e.matrix().trace().real();
    const Vec3 r = pauli_coordinates(e.matrix());
    const Vec3 q = r.dot(geom.e_delta) * geom.e_delta + r.dot(geom.e_perp) * geom.e_perp;
    effects.push_back(weight * identity(2) + 0.5 * pauli_dot(q));
  }
  return validate_povm(effects);
}

PlanarReduction reduce_to_plane(const Povm& povm, const Prior& prior, const DensityMatrix& rho1,
                                const DensityMatrix& rho2) {
  if (povm.dim() != 2 || rho1.dim() != 2 || rho2.dim() != 2) {
    throw Error(ErrorCode::WrongDimension, "plane reduction is defined for qubits");
  }
  PlanarReduction out{{}, planar_geometry(prior, rho1, rho2)};
  const auto& g = out.geometry;
  for (const auto& e : povm.effects()) {
    const double weight = 0.5 * e.matrix().trace().real();
    if (weight < 1e-15) continue;
    const Vec3 r = pauli_coordinates(e.matrix()) / (2.0 * weight);
    const Vec3 q = r.dot(g.e_delta) * g.e_delta + r.dot(g.e_perp) * g.e_perp;
    if (q.norm() >= 1.0 - 1e-12) {
      out.povm.outcomes.push_back({weight, g.angle_of(q)});
      continue;
    }
    // Split along the chord through q on which tr[E rho_a] / tr[E rho_b] is
    // constant; the two pure pieces then score exactly what the whole did.
    const Eigen::Vector2d qp(q.dot(g.e_delta), q.dot(g.e_perp));
    const Eigen::Vector2d rb(g.r_b_norm * std::cos(g.gamma), g.r_b_norm * std::sin(g.gamma));
    const Eigen::Vector2d ra = rb + Eigen::Vector2d(g.delta_r, 0.0);
    const Eigen::Vector2d v = (1.0 + qp.dot(rb)) * ra - (1.0 + qp.dot(ra)) * rb;
    const Eigen::Vector2d chord = v.norm() > 1e-14 ? Eigen::Vector2d(-v.y(), v.x()) / v.norm() : Eigen::Vector2d(0.0, 1.0);
    const double b = qp.dot(chord);
    const double root = std::sqrt(b * b + 1.0 - qp.squaredNorm());
    const double t1 = -b + root;
    const double t2 = -b - root;
    for (const auto& [t, w] : {std::pair{t1, -t2 / (t1 - t2)}, std::pair{t2, t1 / (t1 - t2)}}) {
      const Eigen::Vector2d n = qp + t * chord;
      if (weight * w > 1e-15) out.povm.outcomes.push_back({weight * w, g.angle_of(n.x() * g.e_delta + n.y() * g.e_perp)});
    }
  }
  return out;
}

std::pair<Effect, Effect> split_effect(const Effect& effect) {
  if (effect.dim() != 2) throw Error(ErrorCode::WrongDimension, "effect splitting is implemented for qubits", effect.dim());
  const auto eig = hermitian_eigen(effect.matrix());
  const double low = eig.values(0);
  const double high = eig.values(1);
  if (low <= 1e-12) throw Error(ErrorCode::AlreadyPure, "effect has rank one", low);
  if (high - low < 1e-12) {
    ComplexMatrix up = ComplexMatrix::Zero(2, 2);
    ComplexMatrix down = ComplexMatrix::Zero(2, 2);
    up(0, 0) = high;
    down(1, 1) = low;
    return {validate_effect(up), validate_effect(down)};
  }
  return {validate_effect(high * projector(eig.vectors.col(1))), validate_effect(low * projector(eig.vectors.col(0)))};
}

Povm split_outcome(const Povm& povm, std::size_t index) {
  if (index >= povm.size()) throw Error(ErrorCode::BadParameter, "outcome index out of range", static_cast<double>(index));
  auto [first, second] = split_effect(povm[index]);
  std::vector<ComplexMatrix> effects;
  for (std::size_t m = 0; m < povm.size(); ++m) {
    if (m == index) {
      effects.push_back(first.matrix());
      effects.push_back(second.matrix());
    } else {
      effects.push_back(povm[m].matrix());
    }
  }
  return validate_povm(effects);
}

double pvm_objective(double alpha, const PlanarGeometry& geom) {
  const double c = std::cos(alpha);
  const double b = std::cos(alpha + geom.gamma);
  return c * c / (1.0 - geom.r_b_norm * geom.r_b_norm * b * b);
}

double q_of_angle(double alpha, const PlanarGeometry& geom) {
  const double b = std::cos(alpha + geom.gamma);
  const double denom = 1.0 - geom.r_b_norm * geom.r_b_norm * b * b;
  if (denom < 1e-15) {
    throw Error(ErrorCode::SingularDenominator, "an outcome of this measurement never occurs under rho_b", denom);
  }
  const double c = std::cos(alpha);
  return geom.scale * (1.0 + geom.delta_r * geom.delta_r * c * c / denom);
}

double wrap_half_turn(double alpha) { return alpha - kPi * std::ceil((alpha - 0.5 * kPi) / kPi); }

double optimal_alpha_formula(const PlanarGeometry& geom) {
  const double rb2 = geom.r_b_norm * geom.r_b_norm;
  const double g = geom.gamma;
  const double denom = std::sqrt(0.5 * rb2 * (rb2 - 2.0) * (1.0 - std::cos(2.0 * g)) + 1.0);
  const double arg = denom > 0.0 ? std::clamp(std::cos(g) / denom, -1.0, 1.0) : 1.0;
  const double sign = g >= 0.0 ? 1.0 : -1.0;
  return wrap_half_turn(sign * std::acos(arg) - g);
}

OptimalAngle optimal_alpha(const PlanarGeometry& geom) {
  OptimalAngle out;
  if (geom.delta_r <= 1e-15) {
    out.degenerate = true;
    out.q_max = geom.scale;
    return out;
  }
  out.formula_alpha = optimal_alpha_formula(geom);

  double best = -kPi / 2.0;
  double best_value = -1.0;
  const double h = kPi / kScanPoints;
  for (int k = 1; k <= kScanPoints; ++k) {
    const double a = -kPi / 2.0 + k * h;
    const double v = pvm_objective(a, geom);
    if (v > best_value) {
      best_value = v;
      best = a;
    }
  }
  out.grid_alpha = wrap_half_turn(refine_maximum(geom, best - h, best + h));

  out.formula_agrees = angle_distance_mod_pi(out.formula_alpha, out.grid_alpha) <= kAgreementTol;
  if (out.formula_agrees) {
    // Near the flat maximum the closed form is more accurate than any search.
    out.alpha = out.formula_alpha;
  } else {
    const double refined = wrap_half_turn(refine_maximum(geom, out.formula_alpha - 1e-3, out.formula_alpha + 1e-3));
    out.alpha = pvm_objective(refined, geom) >= pvm_objective(out.grid_alpha, geom) ? refined : out.grid_alpha;
  }
  out.q_max = q_of_angle(out.alpha, geom);
  return out;
}

QubitSolution optimal_pvm(const Prior& prior, const DensityMatrix& rho1, const DensityMatrix& rho2) {
  if (rho1.dim() != 2 || rho2.dim() != 2) throw Error(ErrorCode::WrongDimension, "qubit solver needs 2x2 states");
  if (prior.is_degenerate()) throw Error(ErrorCode::InvalidPrior, "a prior without spread gives a constant objective");
  if (same_state(rho1, rho2)) throw Error(ErrorCode::DegenerateProblem, "rho1 equals rho2: nothing to estimate");

  const auto geom = planar_geometry(prior, rho1, rho2);
  const auto angle = optimal_alpha(geom);
  const Vec3 n = geom.direction(angle.alpha);
  std::vector<ComplexMatrix> effects{0.5 * (identity(2) + pauli_dot(n)), 0.5 * (identity(2) - pauli_dot(n))};
  auto povm = validate_povm(effects);
  auto score = q_functional(povm, prior, rho1, rho2);
  return {{"qubit_pvm", std::move(povm), std::move(score)}, geom, angle, n};
}

std::vector<double> barycentric_weights(double a1, double a2, double a3) {
  std::array<double, 3> w{std::sin(a3 - a2), std::sin(a1 - a3), std::sin(a2 - a1)};
  const double total = w[0] + w[1] + w[2];
  if (std::abs(total) < 1e-12) return {};
  for (auto& x : w) x /= total;
  for (double x : w)
    if (x < 0.0) return {};
  return {w.begin(), w.end()};
}

namespace {

PlanarPovm planar_from_params(const std::vector<double>& params) {
  PlanarPovm p;
  if (params.size() == 1) {
    p.outcomes = {{0.5, params[0]}, {0.5, params[0] + kPi}};
    return p;
  }
  const auto w = barycentric_weights(params[0], params[1], params[2]);
  if (w.empty()) return p;
  for (int k = 0; k < 3; ++k) p.outcomes.push_back({w[k], params[k]});
  return p;
}

double search_objective(const std::vector<double>& params, const PlanarGeometry& geom) {
  const auto p = planar_from_params(params);
  if (p.outcomes.empty()) return -std::numeric_limits<double>::infinity();
  return planar_q(p, geom);
}

}  // namespace

BruteForceResult brute_force_planar(const PlanarGeometry& geom, int n_outcomes, int n_starts, std::uint64_t seed,
                                    int iterations) {
  if (n_outcomes != 2 && n_outcomes != 3) throw Error(ErrorCode::BadParameter, "search supports 2 or 3 outcomes", n_outcomes);
  if (n_starts < 1) throw Error(ErrorCode::BadParameter, "need at least one start", n_starts);
  const std::size_t n_params = n_outcomes == 2 ? 1 : 3;

  BruteForceResult result;
  result.geometry = geom;
  result.q = -std::numeric_limits<double>::infinity();
  std::vector<double> best_params;

  for (int start = 0; start < n_starts; ++start) {
    CounterRng rng(seed, static_cast<std::uint64_t>(start));
    std::vector<double> x(n_params);
    double fx = -std::numeric_limits<double>::infinity();
    for (int attempt = 0; attempt < 1000 && !std::isfinite(fx); ++attempt) {
      for (auto& v : x) v = 2.0 * kPi * rng.uniform() - kPi;
      fx = search_objective(x, geom);
    }
    if (!std::isfinite(fx)) continue;

    double step = 1e-2;
    for (int it = 0; it < iterations && step > 1e-12; ++it) {
      std::vector<double> grad(n_params);
      double gnorm = 0.0;
      for (std::size_t i = 0; i < n_params; ++i) {
        const double h = 1e-7;
        auto up = x;
        auto dn = x;
        up[i] += h;
        dn[i] -= h;
        const double fu = search_objective(up, geom);
        const double fd = search_objective(dn, geom);
        if (std::isfinite(fu) && std::isfinite(fd)) {
          grad[i] = (fu - fd) / (2.0 * h);
        } else if (std::isfinite(fu)) {
          grad[i] = (fu - fx) / h;
        } else if (std::isfinite(fd)) {
          grad[i] = (fx - fd) / h;
        }
        gnorm += grad[i] * grad[i];
      }
      gnorm = std::sqrt(gnorm);
      if (gnorm == 0.0) break;
      // Backtracking on a step measured in radians along the normalized gradient.
      bool moved = false;
      while (step > 1e-12) {
        auto trial = x;
        for (std::size_t i = 0; i < n_params; ++i) trial[i] += step * grad[i] / gnorm;
        const double ft = search_objective(trial, geom);
        if (ft > fx) {
          x = trial;
          fx = ft;
          step = std::min(2.0 * step, 0.5);
          moved = true;
          break;
        }
        step *= 0.5;
      }
      if (!moved) break;
    }
    if (fx > result.q) {
      result.q = fx;
      best_params = x;
    }
  }
  if (best_params.empty()) throw Error(ErrorCode::BadParameter, "no feasible starting point found");
  auto best = planar_from_params(best_params);
  for (const auto& o : best.outcomes) {
    if (o.weight > 1e-12) result.best.outcomes.push_back({o.weight, wrap_full_turn(o.angle)});
  }
  return result;
}

BruteForceResult brute_force_planar(const Prior& prior, const DensityMatrix& rho1, const DensityMatrix& rho2,
                                    int n_outcomes, int n_starts, std::uint64_t seed, int iterations) {
  if (rho1.dim() != 2 || rho2.dim() != 2) throw Error(ErrorCode::WrongDimension, "planar search needs qubit states");
  return brute_force_planar(planar_geometry(prior, rho1, rho2), n_outcomes, n_starts, seed, iterations);
}

}  // namespace mixest

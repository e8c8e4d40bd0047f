#include "mixest/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>

#include "mixest/bayes.hpp"
#include "mixest/highdim_optimizer.hpp"
#include "mixest/qubit_optimizer.hpp"
#include "mixest/random_instances.hpp"
#include "mixest/simulator.hpp"

namespace mixest {
namespace {

/// Runs `body` on `cases` instances; body returns the violation (<= 0 passes).
SelftestCheck check(std::string name, int cases, const std::function<double(int)>& body) {
  double worst = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < cases; ++i) worst = std::max(worst, body(i));
  std::ostringstream detail;
  detail << "worst excess over tolerance " << worst << " over " << cases << " cases";
  return {std::move(name), worst <= 0.0, detail.str()};
}

}  // namespace

std::vector<SelftestCheck> run_selftest(std::uint64_t seed, int cases) {
  const Prior uniform = Prior::uniform();
  std::vector<SelftestCheck> out;

  out.push_back(check("uniform score identity", cases, [&](int i) {
    CounterRng rng(seed, 100000 + i);
    const auto r1 = random_qubit_state(rng);
    const auto r2 = random_qubit_state(rng);
    const auto s = q_functional(random_povm(rng, 2, 3), uniform, r1, r2);
    double posterior = 0.0;
    for (const auto& m : s.per_outcome) posterior += m.prob * m.variance;
    return std::abs(s.q_value + posterior - 1.0 / 3.0) - 1e-10;
  }));

  out.push_back(check("split monotonicity", cases, [&](int i) {
    CounterRng rng(seed, 200000 + i);
    const auto r1 = random_qubit_state(rng);
    const auto r2 = random_qubit_state(rng);
    const auto p = random_povm(rng, 2, 2);
    std::size_t idx = 0;
    for (; idx < p.size(); ++idx)
      if (min_eigenvalue(p[idx].matrix()) > 1e-9) break;
    if (idx == p.size()) return -1.0;
    const double before = q_functional(p, uniform, r1, r2).q_value;
    const double after = q_functional(split_outcome(p, idx), uniform, r1, r2).q_value;
    return before - after - 1e-12;
  }));

  out.push_back(check("plane projection preserves score", cases, [&](int i) {
    CounterRng rng(seed, 300000 + i);
    const auto r1 = random_qubit_state(rng);
    const auto r2 = random_qubit_state(rng);
    const auto p = random_povm(rng, 2, 3);
    const auto red = reduce_to_plane(p, uniform, r1, r2);
    return std::abs(planar_q(red.povm, red.geometry) - q_functional(p, uniform, r1, r2).q_value) - 1e-12;
  }));

  out.push_back(check("planar 3-outcome search below projective optimum", std::max(1, cases / 10), [&](int i) {
    CounterRng rng(seed, 400000 + i);
    const auto r1 = random_qubit_state(rng);
    const auto r2 = random_qubit_state(rng);
    const auto geom = planar_geometry(uniform, r1, r2);
    const double best = optimal_alpha(geom).q_max;
    double worst = -1.0;
    for (int k = 0; k < 100; ++k) worst = std::max(worst, planar_q(random_planar_povm(rng), geom) - best - 1e-9);
    return worst;
  }));

  out.push_back(check("closed-form angle matches scan", cases, [&](int i) {
    CounterRng rng(seed, 500000 + i);
    const auto geom = planar_geometry(uniform, random_qubit_state(rng), random_qubit_state(rng));
    return optimal_alpha(geom).formula_agrees ? -1.0 : 1.0;
  }));

  out.push_back(check("pinching preserves score on commuting pairs", cases, [&](int i) {
    CounterRng rng(seed, 600000 + i);
    const int d = 2 + i % 3;
    const auto [r1, r2] = random_commuting_pair(rng, d);
    const ComplexMatrix u = common_eigenbasis(r1, r2);
    const auto p = random_povm(rng, d, d + 1);
    std::vector<ComplexMatrix> pinched;
    for (const auto& e : p.effects()) {
      const ComplexMatrix inner = u.adjoint() * e.matrix() * u;
      pinched.push_back(u * ComplexMatrix(inner.diagonal().real().cast<Complex>().asDiagonal()) * u.adjoint());
    }
    return std::abs(q_functional(validate_povm(pinched), uniform, r1, r2).q_value -
                    q_functional(p, uniform, r1, r2).q_value) -
           1e-12;
  }));

  out.push_back(check("permutation symmetry", cases, [&](int i) {
    CounterRng rng(seed, 700000 + i);
    const int d = 2 + i % 3;
    const auto r1 = random_density_matrix(rng, d);
    const auto r2 = random_density_matrix(rng, d);
    const auto p = random_povm(rng, d, d);
    const double a = q_functional(p, uniform, r1, r2).q_value;
    return std::max(std::abs(a - q_functional(p, uniform, r2, r1).q_value),
                    std::abs(a - q_permutation_form(p, uniform, r1, r2))) -
           1e-12;
  }));

  out.push_back(check("simulation agrees with analytic mean variance", 3, [&](int i) {
    CounterRng rng(seed, 800000 + i);
    const auto r1 = random_qubit_state(rng);
    const auto r2 = random_qubit_state(rng);
    const auto sol = optimal_pvm(uniform, r1, r2);
    const auto sim = run_simulation(sol.report.povm, uniform, r1, r2, 20000, seed + i);
    return std::abs(sim.empirical_mse - sim.analytic_mean_variance) - 4.0 * sim.std_error;
  }));

  return out;
}

void print_selftest(std::ostream& os, const std::vector<SelftestCheck>& checks) {
  for (const auto& c : checks) os << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
}

}  // namespace mixest

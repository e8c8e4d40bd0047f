#include "mixest/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "mixest/errors.hpp"
#include "mixest/io.hpp"
#include "mixest/random_instances.hpp"
#include "mixest/selftest.hpp"
#include "mixest/simulator.hpp"
#include "mixest/solve.hpp"

namespace mixest {
namespace {

struct Options {
  std::string problem;
  std::string prior;
  std::string povm;
  std::string out;
  std::string trials_out;
  std::string rho0;
  std::int64_t n_trials = 100000;
  std::uint64_t seed = 20240601;
  double rb = 0.8;
  double delta_r = 1.0 / 3.0;
  int points = 360;
  double s = 0.5;
  double t = 1.0;
  double bmax = std::numbers::ln2;
  double omega = 0.0;
  bool uniform = false;
  int cases = 100;
};

/// Writes to --out when given, else to the data stream.
void emit(const Options& o, std::ostream& out, const std::string& text) {
  if (o.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw Error(ErrorCode::BadParameter, "cannot write " + o.out);
  f << text;
}

ProblemFile load_problem(const Options& o) {
  if (o.problem.empty()) throw Error(ErrorCode::BadParameter, "--problem is required");
  auto p = problem_from_json(read_json_file(o.problem));
  if (!o.prior.empty()) p.prior = prior_from_json(json_from_arg(o.prior));
  return p;
}

Json explore(const ProblemFile& p, const EstimationReport& report, int samples, std::uint64_t seed) {
  double best = -1.0;
  for (int i = 0; i < samples; ++i) {
    CounterRng rng(seed, i);
    const int n = p.rho1.dim() + 1 + static_cast<int>(rng.uniform() * p.rho1.dim());
    const auto candidate = i % 2 ? random_povm(rng, p.rho1.dim(), n) : random_povm_normalized(rng, p.rho1.dim(), n);
    best = std::max(best, q_functional(candidate, p.prior, p.rho1, p.rho2).q_value);
  }
  return {{"samples", samples}, {"best_random_q", best}, {"solver_q", report.score.q_value},
          {"random_exceeds_solver", best > report.score.q_value + 1e-10}};
}

int cmd_solve(const Options& o, std::ostream& out, std::ostream& err) {
  const auto p = load_problem(o);
  const auto sol = solve_problem(p.prior, p.rho1, p.rho2);
  if (!sol.report) {
    err << "unsolved: " << sol.certificate << "\nsmallest candidate-effect eigenvalue: " << sol.min_eigenvalue << '\n';
    return kExitUnsolved;
  }
  Json j{{"dim", p.rho1.dim()},
         {"route", sol.route},
         {"certificate", sol.certificate},
         {"positivity_ok", sol.positivity_ok},
         {"prior", prior_to_json(p.prior)},
         {"report", report_to_json(*sol.report)}};
  if (sol.qubit) {
    const auto& g = sol.qubit->geometry;
    j["geometry"] = {{"delta_r", g.delta_r}, {"r_b", g.r_b_norm}, {"gamma", g.gamma}, {"alpha0", sol.qubit->angle.alpha},
                     {"formula_agrees", sol.qubit->angle.formula_agrees}};
  }
  const int samples = p.options.value("explore_samples", 0);
  if (samples > 0) j["explore"] = explore(p, *sol.report, samples, o.seed);
  emit(o, out, j.dump(2) + "\n");
  return kExitOk;
}

int cmd_simulate(const Options& o, std::ostream& out, std::ostream& err) {
  const auto p = load_problem(o);
  std::optional<Povm> povm;
  if (!o.povm.empty()) {
    povm = validate_povm(povm_from_json(json_from_arg(o.povm)));
  } else {
    const auto sol = solve_problem(p.prior, p.rho1, p.rho2);
    if (!sol.report) {
      err << "unsolved: " << sol.certificate << '\n';
      return kExitUnsolved;
    }
    povm = sol.report->povm;
  }
  const auto summary = run_simulation(*povm, p.prior, p.rho1, p.rho2, o.n_trials, o.seed, !o.trials_out.empty());
  if (!o.trials_out.empty()) {
    std::ofstream f(o.trials_out);
    if (!f) throw Error(ErrorCode::BadParameter, "cannot write " + o.trials_out);
    write_trials_csv(f, summary.trials);
  }
  if (summary.flagged) err << "warning: empirical MSE differs from the analytic value by more than 4 standard errors\n";
  std::ostringstream csv;
  write_summary_csv(csv, summary);
  emit(o, out, csv.str());
  return kExitOk;
}

int cmd_sweep_gamma(const Options& o, std::ostream& out, std::ostream& err) {
  if (!(o.rb >= 0.0 && o.rb < 1.0)) throw Error(ErrorCode::BadParameter, "--rb must lie in [0, 1)", o.rb);
  if (o.points < 1) throw Error(ErrorCode::BadParameter, "--points must be positive", o.points);
  if (!(o.delta_r > 0.0)) throw Error(ErrorCode::BadParameter, "--delta-r must be positive", o.delta_r);
  std::ostringstream csv;
  csv << "gamma,alpha0,q_max\n";
  int disagreements = 0;
  for (int k = 1; k <= o.points; ++k) {
    const double gamma = -std::numbers::pi + 2.0 * std::numbers::pi * k / o.points;
    const auto a = optimal_alpha(PlanarGeometry::from_scalars(o.delta_r, o.rb, gamma));
    if (!a.formula_agrees) ++disagreements;
    csv << format_double(gamma) << ',' << format_double(a.alpha) << ',' << format_double(a.q_max) << '\n';
  }
  if (disagreements) err << "warning: closed form and scan disagree at " << disagreements << " points\n";
  emit(o, out, csv.str());
  return kExitOk;
}

int cmd_decoherence(const Options& o, std::ostream& out, std::ostream&) {
  ComplexMatrix up = ComplexMatrix::Zero(2, 2);
  up(0, 0) = 1.0;
  const auto rho0 = validate_state(o.rho0.empty() ? up : matrix_from_json(json_from_arg(o.rho0)));
  const DecoherenceModel model{o.s, o.t, o.bmax, rho0, o.omega};
  const auto est = solve_decay_estimation(model, o.uniform ? std::optional<Prior>(Prior::uniform()) : std::nullopt);
  const auto summary = run_simulation(est.solution.report.povm, est.prior, est.rho1, est.rho2, o.n_trials, o.seed);
  Json j{{"prior", prior_to_json(est.prior)},
         {"alpha0", est.solution.angle.alpha},
         {"report", report_to_json(est.solution.report)},
         {"plugin_rates", est.plugin_rates},
         {"plugin_rates_note", "-ln(g_m)/t; a transform of the lambda estimate, not the Bayes estimate of the rate"},
         {"simulation", summary_to_json(summary)}};
  emit(o, out, j.dump(2) + "\n");
  return kExitOk;
}

int cmd_selftest(const Options& o, std::ostream& out) {
  const auto checks = run_selftest(o.seed, o.cases);
  std::ostringstream text;
  print_selftest(text, checks);
  emit(o, out, text.str());
  for (const auto& c : checks)
    if (!c.passed) return 1;
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Optimal single-copy estimation of a mixing parameter"};
  app.require_subcommand(1);

  auto* solve = app.add_subcommand("solve", "Optimal measurement for a problem file (JSON)");
  solve->add_option("--problem", o.problem, "Problem file")->required();
  solve->add_option("--prior", o.prior, "Prior override, inline JSON or file");
  solve->add_option("--seed", o.seed, "Seed for exploratory sampling");
  solve->add_option("--out", o.out, "Write output here instead of stdout");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo check of a measurement (CSV)");
  simulate->add_option("--problem", o.problem, "Problem file")->required();
  simulate->add_option("--prior", o.prior, "Prior override, inline JSON or file");
  simulate->add_option("--povm", o.povm, "Measurement file; default is the optimal one");
  simulate->add_option("--n-trials", o.n_trials, "Number of trials")->check(CLI::PositiveNumber);
  simulate->add_option("--seed", o.seed, "Seed");
  simulate->add_option("--trials-out", o.trials_out, "Per-trial CSV");
  simulate->add_option("--out", o.out, "Write output here instead of stdout");

  auto* sweep = app.add_subcommand("sweep-gamma", "Optimal angle against gamma (CSV)");
  sweep->add_option("--rb", o.rb, "Norm of the mean-state Bloch vector");
  sweep->add_option("--points", o.points, "Number of gamma values in (-pi, pi]");
  sweep->add_option("--delta-r", o.delta_r, "Norm of the difference vector");
  sweep->add_option("--out", o.out, "Write output here instead of stdout");

  auto* deco = app.add_subcommand("decoherence", "Decay-factor estimation for a relaxing qubit (JSON)");
  deco->add_option("--s", o.s, "Equilibrium population of |0>");
  deco->add_option("--t", o.t, "Evolution time");
  deco->add_option("--bmax", o.bmax, "Largest decay rate");
  deco->add_option("--omega", o.omega, "Qubit frequency (recorded only)");
  deco->add_option("--rho0", o.rho0, "Initial state matrix, inline JSON or file; default |0><0|");
  deco->add_flag("--uniform", o.uniform, "Use a uniform prior on the decay factor");
  deco->add_option("--n-trials", o.n_trials, "Number of simulated trials")->check(CLI::PositiveNumber);
  deco->add_option("--seed", o.seed, "Seed");
  deco->add_option("--out", o.out, "Write output here instead of stdout");

  auto* self = app.add_subcommand("selftest", "Run the property checks");
  self->add_option("--seed", o.seed, "Seed");
  self->add_option("--cases", o.cases, "Cases per check")->check(CLI::PositiveNumber);
  self->add_option("--out", o.out, "Write output here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*solve) return cmd_solve(o, out, err);
    if (*simulate) return cmd_simulate(o, out, err);
    if (*sweep) return cmd_sweep_gamma(o, out, err);
    if (*deco) return cmd_decoherence(o, out, err);
    return cmd_selftest(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::UnsolvedCase ? kExitUnsolved : kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace mixest

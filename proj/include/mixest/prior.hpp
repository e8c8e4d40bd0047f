#pragma once

#include <string>
#include <vector>

namespace mixest {

enum class PriorKind { Uniform, TruncatedReciprocal, PointMass, Table };

std::string to_string(PriorKind kind);

/// Prior distribution of the mixing weight lambda on [0, 1], carrying its
/// first three moments in closed form (or by quadrature for tables) and an
/// inverse-CDF sampling rule.
class Prior {
 public:
  static Prior uniform();
  /// Density 1 / (lambda * t_bmax) on [exp(-t_bmax), 1].
  static Prior truncated_reciprocal(double t_bmax);
  static Prior point_mass(double lambda0);
  /// Piecewise-linear density through (lambda[i], density[i]); normalized here.
  static Prior table(std::vector<double> lambda, std::vector<double> density);

  PriorKind kind() const { return kind_; }
  double mean() const { return moments_[1]; }
  double second_moment() const { return moments_[2]; }
  double third_moment() const { return moments_[3]; }
  /// n in 0..3.
  double moment(int n) const;
  double variance() const { return moments_[2] - moments_[1] * moments_[1]; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  /// Parameter of the rule: t * B_max for TruncatedReciprocal, lambda0 for
  /// PointMass, 0 otherwise.
  double parameter() const { return parameter_; }
  const std::vector<double>& table_lambda() const { return table_x_; }
  const std::vector<double>& table_density() const { return table_y_; }

  /// Probability density at lambda; throws for PointMass.
  double density(double lambda) const;
  /// Maps u in [0, 1] to a draw of lambda.
  double sample(double u) const;

  /// No spread: the estimation objective is constant.
  bool is_degenerate() const;

 private:
  Prior() = default;
  void check_moments() const;

  PriorKind kind_ = PriorKind::Uniform;
  double moments_[4] = {1.0, 0.5, 1.0 / 3.0, 0.25};
  double lo_ = 0.0;
  double hi_ = 1.0;
  double parameter_ = 0.0;
  std::vector<double> table_x_;
  std::vector<double> table_y_;
  std::vector<double> table_cdf_;
};

/// Prior of lambda = exp(-B t) when B is uniform on [0, B_max]; t_bmax = t * B_max.
Prior prior_from_decoherence(double t_bmax);

/// Adaptive Simpson quadrature on [a, b] to absolute tolerance `tol`.
template <class F>
double adaptive_simpson(F&& f, double a, double b, double tol, int max_depth = 40);

}  // namespace mixest

#include "mixest/detail/adaptive_simpson.ipp"

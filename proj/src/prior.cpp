#include "mixest/prior.hpp"

#include <algorithm>
#include <cmath>

#include "mixest/errors.hpp"

namespace mixest {

std::string to_string(PriorKind kind) {
  switch (kind) {
    case PriorKind::Uniform: return "uniform";
    case PriorKind::TruncatedReciprocal: return "trunc_reciprocal";
    case PriorKind::PointMass: return "point_mass";
    case PriorKind::Table: return "table";
  }
  return "unknown";
}

Prior Prior::uniform() { return Prior(); }

Prior Prior::truncated_reciprocal(double t_bmax) {
  if (!(t_bmax > 0.0) || !std::isfinite(t_bmax)) {
    throw Error(ErrorCode::NonPositiveParameter, "t * B_max must be positive and finite", t_bmax);
  }
  Prior p;
  p.kind_ = PriorKind::TruncatedReciprocal;
  p.parameter_ = t_bmax;
  p.lo_ = std::exp(-t_bmax);
  p.hi_ = 1.0;
  // int_{e^-T}^1 lambda^n / (lambda T) dlambda = (1 - e^{-nT}) / (nT)
  for (int n = 1; n <= 3; ++n) p.moments_[n] = -std::expm1(-n * t_bmax) / (n * t_bmax);
  p.check_moments();
  return p;
}

Prior Prior::point_mass(double lambda0) {
  if (!(lambda0 >= 0.0 && lambda0 <= 1.0)) throw Error(ErrorCode::InvalidPrior, "point mass outside [0, 1]", lambda0);
  Prior p;
  p.kind_ = PriorKind::PointMass;
  p.parameter_ = lambda0;
  p.lo_ = p.hi_ = lambda0;
  p.moments_[1] = lambda0;
  p.moments_[2] = lambda0 * lambda0;
  p.moments_[3] = lambda0 * lambda0 * lambda0;
  return p;
}

Prior Prior::table(std::vector<double> lambda, std::vector<double> density) {
  if (lambda.size() < 2 || lambda.size() != density.size()) {
    throw Error(ErrorCode::InvalidPrior, "table needs matching lambda/density arrays with at least two points");
  }
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    if (!(lambda[i] >= 0.0 && lambda[i] <= 1.0)) throw Error(ErrorCode::InvalidPrior, "table lambda outside [0, 1]", lambda[i]);
    if (!(density[i] >= 0.0) || !std::isfinite(density[i])) {
      throw Error(ErrorCode::InvalidPrior, "table density must be finite and non-negative", density[i]);
    }
    if (i > 0 && !(lambda[i] > lambda[i - 1])) throw Error(ErrorCode::InvalidPrior, "table lambda must increase strictly");
  }
  double mass = 0.0;
  for (std::size_t i = 1; i < lambda.size(); ++i) mass += 0.5 * (density[i] + density[i - 1]) * (lambda[i] - lambda[i - 1]);
  if (!(mass > 0.0)) throw Error(ErrorCode::InvalidPrior, "table density integrates to zero");
  for (auto& y : density) y /= mass;

  Prior p;
  p.kind_ = PriorKind::Table;
  p.lo_ = lambda.front();
  p.hi_ = lambda.back();
  p.table_cdf_.assign(lambda.size(), 0.0);
  for (std::size_t i = 1; i < lambda.size(); ++i) {
    p.table_cdf_[i] = p.table_cdf_[i - 1] + 0.5 * (density[i] + density[i - 1]) * (lambda[i] - lambda[i - 1]);
  }
  p.table_x_ = std::move(lambda);
  p.table_y_ = std::move(density);
  for (int n = 0; n <= 3; ++n) {
    double total = 0.0;
    for (std::size_t i = 1; i < p.table_x_.size(); ++i) {
      const double x0 = p.table_x_[i - 1];
      const double x1 = p.table_x_[i];
      total += adaptive_simpson([&](double x) { return std::pow(x, n) * p.density(x); }, x0, x1, 1e-13);
    }
    p.moments_[n] = total;
  }
  for (int n = 1; n <= 3; ++n) p.moments_[n] /= p.moments_[0];
  p.moments_[0] = 1.0;
  p.check_moments();
  return p;
}

double Prior::moment(int n) const {
  if (n < 0 || n > 3) throw Error(ErrorCode::BadParameter, "only moments 0..3 are carried", n);
  return moments_[n];
}

void Prior::check_moments() const {
  const double m1 = moments_[1];
  const double m2 = moments_[2];
  if (m1 * m1 > m2 + 1e-12 || m2 > m1 + 1e-12) {
    throw Error(ErrorCode::InvalidPrior, "moments violate mean^2 <= second moment <= mean", m2);
  }
}

double Prior::density(double lambda) const {
  switch (kind_) {
    case PriorKind::Uniform: return (lambda >= 0.0 && lambda <= 1.0) ? 1.0 : 0.0;
    case PriorKind::TruncatedReciprocal:
      return (lambda >= lo_ && lambda <= hi_) ? 1.0 / (lambda * parameter_) : 0.0;
    case PriorKind::PointMass: throw Error(ErrorCode::InvalidPrior, "a point mass has no density");
    case PriorKind::Table: {
      if (lambda < lo_ || lambda > hi_) return 0.0;
      const auto it = std::upper_bound(table_x_.begin(), table_x_.end(), lambda);
      if (it == table_x_.end()) return table_y_.back();
      const auto k = static_cast<std::size_t>(it - table_x_.begin());
      const double t = (lambda - table_x_[k - 1]) / (table_x_[k] - table_x_[k - 1]);
      return table_y_[k - 1] + t * (table_y_[k] - table_y_[k - 1]);
    }
  }
  return 0.0;
}

double Prior::sample(double u) const {
  u = std::clamp(u, 0.0, 1.0);
  switch (kind_) {
    case PriorKind::Uniform: return u;
    case PriorKind::TruncatedReciprocal: return std::exp(-u * parameter_);
    case PriorKind::PointMass: return parameter_;
    case PriorKind::Table: {
      const auto it = std::upper_bound(table_cdf_.begin(), table_cdf_.end(), u);
      if (it == table_cdf_.end()) return hi_;
      const auto k = static_cast<std::size_t>(it - table_cdf_.begin()) - 1;
      const double x0 = table_x_[k];
      const double h = table_x_[k + 1] - x0;
      const double y0 = table_y_[k];
      const double slope = (table_y_[k + 1] - y0) / h;
      const double rest = u - table_cdf_[k];
      // Solve y0 t + slope t^2 / 2 = rest in the form that stays stable as slope -> 0.
      const double root = std::sqrt(std::max(0.0, y0 * y0 + 2.0 * slope * rest));
      const double denom = y0 + root;
      const double t = denom > 0.0 ? 2.0 * rest / denom : 0.0;
      return std::clamp(x0 + t, x0, x0 + h);
    }
  }
  return u;
}

bool Prior::is_degenerate() const { return kind_ == PriorKind::PointMass || variance() <= 1e-15; }

Prior prior_from_decoherence(double t_bmax) { return Prior::truncated_reciprocal(t_bmax); }

}  // namespace mixest

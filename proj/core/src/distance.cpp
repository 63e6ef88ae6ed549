#include "mmwt/distance.hpp"

#include <algorithm>
#include <cmath>

#include "mmwt/errors.hpp"

namespace mmwt {

EquivalentDistanceMap EquivalentDistanceMap::from(const PathLossModel& model) {
  model.validate();
  return {std::pow(model.c_nlos / model.c_los, 1.0 / model.alpha_nlos), model.alpha_los / model.alpha_nlos};
}

double EquivalentDistanceMap::r_eq(double r) const {
  if (!(r >= 0.0)) throw DomainError("r_eq: negative distance");
  return std::pow(r / mu, 1.0 / kappa);
}

double EquivalentDistanceMap::r_eq_inv(double r) const {
  if (!(r >= 0.0)) throw DomainError("r_eq_inv: negative distance");
  return mu * std::pow(r, kappa);
}

double los_void_factor(double x) {
  if (x < 0.5) {
    // sum_{k>=2} (-1)^k (k - 1) x^k / k!
    double term = x * x / 2.0, sum = 0.0;
    for (int k = 2; k < 30; ++k) {
      sum += (k % 2 == 0 ? 1.0 : -1.0) * (k - 1) * term;
      term *= x / (k + 1);
      if (term < 1e-18 * sum) break;
    }
    return sum;
  }
  return -std::expm1(-x) - x * std::exp(-x);
}

double nlos_void_factor(double x) {
  if (x < 0.5) {
    // sum_{k>=3} (-1)^(k+1) (k - 1) x^k / k!
    double term = x * x * x / 6.0, sum = 0.0;
    for (int k = 3; k < 30; ++k) {
      sum += (k % 2 == 1 ? 1.0 : -1.0) * (k - 1) * term;
      term *= x / (k + 1);
      if (term < 1e-18 * sum) break;
    }
    return sum;
  }
  return 0.5 * x * x - los_void_factor(x);
}

ServingDistanceDist::ServingDistanceDist(const PathLossModel& model, double lambda_m)
    : model_(model), lambda_(lambda_m), map_(EquivalentDistanceMap::from(model)) {
  if (!(lambda_m > 0.0)) throw DomainError("serving distance: lambda_m must be positive");

  for (double p : {0.999, 0.99, 0.9, 0.75, 0.5, 0.25, 0.1, 0.01, 1e-3, 1e-4}) knots_.push_back(ccdf_inverse(p));
  knots_.erase(std::unique(knots_.begin(), knots_.end()), knots_.end());

  double m = 0.0;
  quad::Options opt;
  opt.rel_tol = 1e-10;
  expect([](double rho, std::span<double> out) { out[0] = rho; }, std::span(&m, 1), opt, {}, 1e-14);
  mean_ = m;
}

double ServingDistanceDist::ccdf(double r) const {
  if (!(r >= 0.0)) throw DomainError("serving_ccdf: negative distance");
  const double b = model_.beta;
  const double q = map_.r_eq_inv(r);
  const double scale = 2.0 * kPi * lambda_ / (b * b);
  return std::exp(-scale * (los_void_factor(b * r) + nlos_void_factor(b * q)));
}

double ServingDistanceDist::pdf(double r) const {
  if (!(r > 0.0)) throw DomainError("serving_pdf: distance must be positive");
  const double b = model_.beta;
  const double q = map_.r_eq_inv(r);
  const double mu = map_.mu, kappa = map_.kappa;
  const double rate = r * std::exp(-b * r) + mu * mu * kappa * std::pow(r, 2.0 * kappa - 1.0) * -std::expm1(-b * q);
  return 2.0 * kPi * lambda_ * rate * ccdf(r);
}

double ServingDistanceDist::ccdf_inverse(double p) const {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("ccdf_inverse: probability outside (0, 1)");
  double hi = 1.0;
  while (ccdf(hi) > p) {
    hi *= 2.0;
    if (hi > 1e12) throw NumericError("ccdf_inverse: could not bracket quantile");
  }
  double lo = 0.0;
  while (hi - lo > 1e-6) {
    const double mid = 0.5 * (lo + hi);
    (ccdf(mid) > p ? lo : hi) = mid;
  }
  return hi;
}

std::pair<double, double> ServingDistanceDist::quantile_bounds(double epsilon) const {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("quantile_bounds: epsilon outside (0, 1)");
  return {ccdf_inverse(1.0 - epsilon / 2.0), ccdf_inverse(epsilon / 2.0)};
}

double ServingDistanceDist::tail_radius(double mass) const {
  if (!(mass > 0.0 && mass < 1.0)) throw DomainError("tail_radius: mass outside (0, 1)");
  return ccdf_inverse(mass);
}

double femto_distance_pdf(double rho, double r_f) {
  if (!(r_f > 0.0)) throw DomainError("femto_distance_pdf: radius must be positive");
  if (rho < 0.0 || rho > r_f) return 0.0;
  return 2.0 * rho / (r_f * r_f);
}

}  // namespace mmwt

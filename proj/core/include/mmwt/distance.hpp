#pragma once

#include <span>
#include <utility>
#include <vector>

#include "mmwt/model.hpp"
#include "mmwt/quadrature.hpp"

namespace mmwt {

/// Maps an NLOS base station at distance r to the LOS distance delivering the same average
/// power. Association by strongest average power becomes nearest-point association.
struct EquivalentDistanceMap {
  double mu = 1.0;     // (C_N / C_L)^(1 / alpha_N)
  double kappa = 1.0;  // alpha_L / alpha_N

  static EquivalentDistanceMap from(const PathLossModel& model);

  /// NLOS physical distance -> equivalent LOS distance.
  double r_eq(double r) const;
  /// Equivalent LOS distance -> NLOS physical distance, mu r^kappa.
  double r_eq_inv(double r) const;
};

/// 1 - (1 + x) e^-x, accurate for small x.
double los_void_factor(double x);
/// x^2/2 + (1 + x) e^-x - 1, accurate for small x.
double nlos_void_factor(double x);

/// Law of the (equivalent) distance from the typical user to its serving MBS.
class ServingDistanceDist {
 public:
  ServingDistanceDist(const PathLossModel& model, double lambda_m);

  const PathLossModel& model() const { return model_; }
  double lambda() const { return lambda_; }
  const EquivalentDistanceMap& map() const { return map_; }

  double ccdf(double r) const;
  double cdf(double r) const { return 1.0 - ccdf(r); }
  double pdf(double r) const;

  /// Smallest r with ccdf(r) <= p, by bisection to 1e-6 m.
  double ccdf_inverse(double p) const;

  /// (rho0, rho1) with Pr{rho0 <= R <= rho1} >= 1 - epsilon, splitting epsilon evenly between tails.
  std::pair<double, double> quantile_bounds(double epsilon) const;

  double mean() const { return mean_; }

  /// Radius beyond which the remaining probability mass is below `mass`.
  double tail_radius(double mass) const;

  /// Breakpoints at fixed probability levels, used to seed outer quadratures.
  std::span<const double> quantile_knots() const { return knots_; }

  /// Computes result = integral over (0, tail_radius(tail_mass)) of h(rho) f_R(rho) d rho, where
  /// h writes result.size() components. The innermost meter uses the substitution
  /// rho = u^(1 / (2 kappa)) to absorb the rho^(2 kappa - 1) factor of the density.
  template <typename H>
  quad::Report expect(H&& h, std::span<double> result, const quad::Options& opt,
                      std::span<const double> extra_knots = {}, double tail_mass = 1e-6) const;

 private:
  PathLossModel model_;
  double lambda_;
  EquivalentDistanceMap map_;
  double mean_ = 0.0;
  std::vector<double> knots_;
};

/// Density of the distance between a femto user, uniform on a disc of radius r_f, and its FBS.
/// Zero outside [0, r_f].
double femto_distance_pdf(double rho, double r_f);

/// Mean femto link distance, 2 r_f / 3.
inline double femto_mean_distance(double r_f) { return 2.0 * r_f / 3.0; }

// ---------------------------------------------------------------------------------------------

template <typename H>
quad::Report ServingDistanceDist::expect(H&& h, std::span<double> result, const quad::Options& opt,
                                         std::span<const double> extra_knots, double tail_mass) const {
  const std::size_t n = result.size();
  constexpr double kInnerKnot = 1.0;
  const double r_max = std::max(tail_radius(tail_mass), 2.0 * kInnerKnot);

  std::vector<double> scratch(n);
  std::vector<double> inner(n);
  const double p = 1.0 / (2.0 * map_.kappa);
  auto inner_fn = [&](double u, std::span<double> out) {
    if (u <= 0.0) {
      std::fill(out.begin(), out.end(), 0.0);
      return;
    }
    const double rho = std::pow(u, p);
    const double jac = p * rho / u;
    h(rho, out);
    const double w = pdf(rho) * jac;
    for (double& v : out) v *= w;
  };
  const double inner_knots[] = {0.0, std::pow(kInnerKnot, 1.0 / p)};
  auto rep = quad::integrate(inner_fn, std::span<const double>(inner_knots), std::span(inner), opt);

  std::vector<double> knots{kInnerKnot};
  for (double k : knots_)
    if (k > kInnerKnot && k < r_max) knots.push_back(k);
  for (double k : extra_knots)
    if (k > kInnerKnot && k < r_max && std::isfinite(k)) knots.push_back(k);
  knots.push_back(r_max);
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

  auto outer_fn = [&](double rho, std::span<double> out) {
    h(rho, out);
    const double w = pdf(rho);
    for (double& v : out) v *= w;
  };
  auto rep2 = quad::integrate(outer_fn, std::span<const double>(knots), result, opt);
  for (std::size_t k = 0; k < n; ++k) result[k] += inner[k];

  rep2.evaluations += rep.evaluations;
  rep2.panels += rep.panels;
  rep2.max_error += rep.max_error;
  rep2.converged = rep2.converged && rep.converged;
  return rep2;
}

}  // namespace mmwt

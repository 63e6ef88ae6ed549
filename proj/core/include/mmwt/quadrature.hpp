#pragma once

// Adaptive Gauss-Kronrod (7/15) integration of vector-valued integrands.
//
// All components share one set of abscissae, so integrands that produce several related
// quantities per sample (derivative orders, sweep points) pay for each sample once.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "mmwt/errors.hpp"

namespace mmwt::quad {

struct Options {
  double rel_tol = 1e-8;
  double abs_tol = 0.0;
  int max_panels = 4000;
  /// Throw NumericError on non-convergence instead of returning the best estimate.
  bool throw_on_failure = true;
};

struct Report {
  double max_error = 0.0;  // largest per-component error estimate
  int panels = 0;
  int evaluations = 0;
  bool converged = false;
};

namespace detail {

inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for kXgk[1], kXgk[3], kXgk[5], kXgk[7].
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  std::size_t offset;  // into the value/error pools
  double score;        // error relative to tolerance, max over components
};

// One 15-point panel; writes Kronrod estimates to `value` and |K - G| to `error`.
template <typename F>
void gk15(F& f, double a, double b, std::span<double> value, std::span<double> error,
          std::span<double> scratch, std::span<double> gauss) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const std::size_t n = value.size();
  std::fill(value.begin(), value.end(), 0.0);
  std::fill(gauss.begin(), gauss.end(), 0.0);
  auto accumulate = [&](double x, double wk, double wg) {
    f(x, scratch);
    for (std::size_t k = 0; k < n; ++k) {
      value[k] += wk * scratch[k];
      gauss[k] += wg * scratch[k];
    }
  };
  accumulate(c, kWgk[7], kWg[3]);
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const double wg = (j % 2 == 1) ? kWg[j / 2] : 0.0;
    accumulate(c - dx, kWgk[j], wg);
    accumulate(c + dx, kWgk[j], wg);
  }
  for (std::size_t k = 0; k < n; ++k) {
    value[k] *= h;
    gauss[k] *= h;
    error[k] = std::abs(value[k] - gauss[k]);
  }
}

}  // namespace detail

/// Integrates f over [knots.front(), knots.back()], starting from one panel per knot interval.
///
/// `f(x, out)` writes `out.size() == result.size()` components. Convergence requires every
/// component's summed error to be below max(abs_tol, rel_tol * |integral|).
template <typename F>
Report integrate(F&& f, std::span<const double> knots, std::span<double> result, const Options& opt = {}) {
  const std::size_t n = result.size();
  Report rep;
  std::fill(result.begin(), result.end(), 0.0);
  if (knots.size() < 2 || n == 0) {
    rep.converged = true;
    return rep;
  }

  std::vector<double> values, errors;
  std::vector<double> scratch(n), gauss(n);
  std::vector<detail::Panel> panels;
  std::vector<double> total(n, 0.0), total_err(n, 0.0);

  auto add_panel = [&](double a, double b) {
    const std::size_t off = values.size();
    values.resize(off + n);
    errors.resize(off + n);
    detail::gk15(f, a, b, std::span(values).subspan(off, n), std::span(errors).subspan(off, n), scratch, gauss);
    rep.evaluations += 15;
    panels.push_back({a, b, off, 0.0});
  };

  for (std::size_t i = 0; i + 1 < knots.size(); ++i)
    if (knots[i + 1] > knots[i]) add_panel(knots[i], knots[i + 1]);

  auto tolerance = [&](std::size_t k) { return std::max(opt.abs_tol, opt.rel_tol * std::abs(total[k])); };

  for (;;) {
    std::fill(total.begin(), total.end(), 0.0);
    std::fill(total_err.begin(), total_err.end(), 0.0);
    for (const auto& p : panels)
      for (std::size_t k = 0; k < n; ++k) {
        total[k] += values[p.offset + k];
        total_err[k] += errors[p.offset + k];
      }
    bool done = true;
    double worst = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      worst = std::max(worst, total_err[k]);
      if (!(total_err[k] <= tolerance(k))) done = false;  // NaN never converges
    }
    rep.max_error = worst;
    rep.panels = static_cast<int>(panels.size());
    if (done) {
      rep.converged = true;
      break;
    }
    if (static_cast<int>(panels.size()) >= opt.max_panels) break;

    // Split the panel contributing most to the worst normalised error.
    std::size_t pick = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < panels.size(); ++i) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        const double tol = tolerance(k);
        s = std::max(s, tol > 0.0 ? errors[panels[i].offset + k] / tol : errors[panels[i].offset + k]);
      }
      if (s > best) {
        best = s;
        pick = i;
      }
    }
    const auto victim = panels[pick];
    const double mid = 0.5 * (victim.a + victim.b);
    if (!(mid > victim.a && mid < victim.b)) break;  // panel no longer divisible
    panels.erase(panels.begin() + static_cast<std::ptrdiff_t>(pick));
    add_panel(victim.a, mid);
    add_panel(mid, victim.b);
  }

  std::copy(total.begin(), total.end(), result.begin());
  if (!rep.converged && opt.throw_on_failure) {
    throw NumericError("adaptive quadrature did not converge: " + std::to_string(rep.panels) +
                       " panels on [" + std::to_string(knots.front()) + ", " + std::to_string(knots.back()) +
                       "], error estimate " + std::to_string(rep.max_error));
  }
  return rep;
}

/// Integrates f over [a, inf) through x = a + scale * t / (1 - t).
/// Finite knots beyond `a` become initial panel boundaries.
template <typename F>
Report integrate_to_infinity(F&& f, double a, double scale, std::span<const double> knots,
                             std::span<double> result, const Options& opt = {}) {
  if (!(scale > 0.0)) throw DomainError("integrate_to_infinity: scale must be positive");
  std::vector<double> t_knots{0.0};
  std::vector<double> sorted(knots.begin(), knots.end());
  std::sort(sorted.begin(), sorted.end());
  for (double x : sorted) {
    if (!(x > a) || !std::isfinite(x)) continue;
    const double t = (x - a) / (x - a + scale);
    if (t > t_knots.back() && t < 1.0) t_knots.push_back(t);
  }
  t_knots.push_back(1.0);

  std::vector<double> inner(result.size());
  auto mapped = [&](double t, std::span<double> out) {
    const double one_minus = 1.0 - t;
    // Rounding can put a Kronrod node on t = 1; the point carries no weight in the limit.
    if (!(one_minus > 0.0)) {
      std::fill(out.begin(), out.end(), 0.0);
      return;
    }
    const double x = a + scale * t / one_minus;
    const double jac = scale / (one_minus * one_minus);
    f(x, out);
    for (double& v : out) v *= jac;
  };
  return integrate(mapped, std::span<const double>(t_knots), result, opt);
}

/// Scalar convenience wrapper.
template <typename F>
double integrate_scalar(F&& f, std::span<const double> knots, const Options& opt = {}, Report* report = nullptr) {
  double out = 0.0;
  auto rep = integrate([&](double x, std::span<double> v) { v[0] = f(x); }, knots, std::span(&out, 1), opt);
  if (report) *report = rep;
  return out;
}

template <typename F>
double integrate_scalar_to_infinity(F&& f, double a, double scale, std::span<const double> knots = {},
                                    const Options& opt = {}, Report* report = nullptr) {
  double out = 0.0;
  auto rep = integrate_to_infinity([&](double x, std::span<double> v) { v[0] = f(x); }, a, scale, knots,
                                   std::span(&out, 1), opt);
  if (report) *report = rep;
  return out;
}

}  // namespace mmwt::quad

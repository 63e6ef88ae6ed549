#pragma once

#include <span>
#include <vector>

#include "mmwt/model.hpp"
#include "mmwt/quadrature.hpp"

namespace mmwt {

/// Path-loss weighting of an interfering population.
enum class LinkWeight {
  kLos,   // thinned by exp(-beta x)
  kNlos,  // thinned by 1 - exp(-beta x)
  kAll,   // every interferer in the given state (e.g. wall-penetrating links, always NLOS)
};

/// One Poisson population of interferers seen by the typical user:
///
///   A(z) = -2 pi density sum_i p_i int_{lower}^inf F(z, x, d_i) x w(x) dx,
///   F = 1 - (1 + z power ref_gain d_i G(x) / (m x^exponent))^-m,
///
/// with G the elevation gain when `tilted`, else 1.
struct InterferenceTier {
  double density = 0.0;
  HorizontalGainDist gains{};
  double power = 0.0;      // transmit power including any fixed attenuation
  double ref_gain = 1.0;   // C_w
  double exponent = 4.0;   // alpha_w
  LinkWeight weight = LinkWeight::kAll;
  double beta = 0.0;       // blockage intensity used by kLos / kNlos
  double lower_limit = 0.0;
  int fading_m = 1;
  bool tilted = false;
  VerticalPattern pattern{};

  /// True when A(z) has the closed form c z^(2/alpha) (untilted, unthinned, from the origin).
  bool has_closed_form() const { return !tilted && weight == LinkWeight::kAll && lower_limit == 0.0; }
};

struct LaplaceOptions {
  quad::Options quad{1e-8, 0.0, 4000, true};
  /// Integrate numerically even when a closed form exists (used for cross-checks).
  bool force_quadrature = false;
};

/// Exponent of a product of independent interference Laplace transforms, A = sum over tiers.
class LaplaceExponent {
 public:
  LaplaceExponent() = default;
  explicit LaplaceExponent(std::vector<InterferenceTier> tiers) : tiers_(std::move(tiers)) {}

  LaplaceExponent& add(InterferenceTier tier) {
    tiers_.push_back(std::move(tier));
    return *this;
  }
  const std::vector<InterferenceTier>& tiers() const { return tiers_; }

  /// a[0] = A(z) and a[n] = z^n A^(n)(z) for n = 1 .. a.size() - 1. Requires z >= 0.
  void scaled_derivatives(double z, double theta_tilt, std::span<double> a, const LaplaceOptions& opt = {}) const;

 private:
  std::vector<InterferenceTier> tiers_;
};

/// Highest derivative order supported by the derivative machinery.
inline constexpr int kMaxLaplaceOrder = 9;

/// exp(A(z)).
double laplace_value(const LaplaceExponent& exponent, double z, double theta_tilt, const LaplaceOptions& opt = {});

/// d^l/dz^l exp(A(z)) for l = 0 .. max_order. z must be positive when max_order >= 1.
std::vector<double> laplace_derivatives(const LaplaceExponent& exponent, double z, double theta_tilt, int max_order,
                                        const LaplaceOptions& opt = {});

/// Exponential-derivative recursion on scaled quantities: given a[n] = z^n A^(n)(z), writes
/// b[l] = z^l d^l/dz^l exp(A(z)). Sizes must match.
void exp_scaled_derivatives(std::span<const double> a, std::span<double> b);

/// Closed form of int_0^inf (1 - (1 + y^-alpha)^-m) y dy = Gamma(1 - 2/alpha) Gamma(m + 2/alpha) / (2 Gamma(m)).
/// For m = 1 this is pi / (alpha sin(2 pi / alpha)).
double unbounded_interference_integral(double alpha, int m);

}  // namespace mmwt

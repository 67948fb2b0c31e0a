#pragma once

#include "genconv/quadrature.hpp"

namespace genconv {

/// The even density C |t|^{-alpha-1} I(|t|), I(t) = ∫_0^t x^{alpha-1} sin x dx,
/// for alpha in (0, 1]. The constant C is fixed numerically by unit mass.
class WeakStableDensity {
 public:
  /// Normalizes by quadrature plus the asymptotic tail.
  explicit WeakStableDensity(double alpha, const QuadratureConfig& cfg = {});
  /// Uses a known constant (as stored in a serialized component).
  WeakStableDensity(double alpha, double constant);

  double alpha() const { return alpha_; }
  double constant() const { return c_; }

  double operator()(double t) const;
  double inner(double t) const;

  /// ∫_0^∞ t^{-alpha-1} I(t) dt, the mass of the unnormalized density on (0, ∞).
  double half_mass(const QuadratureConfig& cfg = {}) const;
  /// ∫_T^∞ t^{-alpha-1} I(t) cos(omega t) dt from the asymptotic expansion of I;
  /// requires T ≥ asymptotic_start().
  double tail_cosine(double omega, double T) const;
  /// ∫_ℝ g(t) cos(xt) dt.
  double cosine_transform(double x, const QuadratureConfig& cfg = {}) const;
  /// P(|Y| ≤ t).
  double folded_cdf(double t, const QuadratureConfig& cfg = {}) const;

  static constexpr double asymptotic_start() { return 60.0; }

 private:
  double alpha_;
  double c_ = 1.0;
  double c_inf_;  // I(∞) = Γ(alpha) sin(πα/2)
};

/// Convenience evaluator; constants are cached per alpha.
double weak_stable_density_g(double alpha, double t);

}  // namespace genconv

#pragma once

// Special functions needed by the probability kernels and the closed-form
// CDFs: regularized incomplete gamma and beta, and the Bessel-type kernel
// of the Kingman convolution.

namespace genconv::special {

/// Regularized lower incomplete gamma P(a, z) = γ(a, z) / Γ(a).
double gamma_p(double a, double z);

/// Regularized upper incomplete gamma Q(a, z) = Γ(a, z) / Γ(a).
/// Continued fraction for z ≥ a + 1, series complement otherwise.
double gamma_q(double a, double z);

/// Regularized incomplete beta I_x(a, b).
double beta_inc(double a, double b, double x);

/// Γ(s+1) (t/2)^{-s} J_s(t), the characteristic function of the Kingman
/// angle variable. Equals 1 at t = 0. Power series for |t| ≤ 4, std::cyl_bessel_j
/// (and cyl_neumann for s < 0) beyond.
double kingman_phi(double s, double t);

/// Binomial coefficient as a double.
double binomial(int n, int k);

}  // namespace genconv::special

#pragma once

#include <functional>
#include <vector>

namespace genconv {

struct QuadratureConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_depth = 60;
  double infinite_tail_cutoff_mass = 1e-12;

  void validate() const;
};

/// Process-wide default, honouring GENCONV_QUAD_TOL (applied to both
/// abs_tol and rel_tol) when set.
QuadratureConfig default_quadrature();

using Integrand = std::function<double(double)>;

/// Adaptive Gauss-Kronrod (10/21) integral of f over [a, b]. `b` may be
/// +infinity, in which case the tail past the last breakpoint is summed over
/// doubling blocks until the estimated remaining mass falls below
/// cfg.infinite_tail_cutoff_mass. Interior breakpoints split the range.
/// Throws QuadratureError when an interval would be bisected past
/// cfg.max_depth without meeting tolerance.
double quad_integrate(const Integrand& f, double a, double b, const QuadratureConfig& cfg = {},
                      const std::vector<double>& breakpoints = {});

/// Single 21-point Kronrod panel on [a, b]; returns the estimate and writes
/// the embedded Gauss/Kronrod error estimate to `err`.
double gk21(const Integrand& f, double a, double b, double& err);

}  // namespace genconv

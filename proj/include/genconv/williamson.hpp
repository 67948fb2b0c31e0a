#pragma once

#include <functional>
#include <vector>

#include "genconv/measures.hpp"

namespace genconv {

using Evaluator = std::function<double(double)>;

/// A CDF F paired with G(t) = Φ(1/t), Φ the Williamson transform of the law
/// of F. `F_left` gives left limits at atoms; `dG` is empty when no analytic
/// derivative is known.
struct CdfPair {
  double alpha = 1.0;
  Evaluator F;
  Evaluator F_left;
  Evaluator G;
  Evaluator dG;
  std::vector<double> breakpoints;
  int depth = 0;

  static constexpr int max_depth = 64;
};

/// ∫ (1 - (ts)^alpha)_+ m(ds).
double williamson(const MixtureMeasure& m, double alpha, double t,
                  const QuadratureConfig& cfg = default_quadrature());

/// G(t) + t G'(t) / alpha with a central difference of step h (h <= 0 picks
/// max(1e-6, 1e-6 t)). Result clamped to [0, 1].
double williamson_invert(const Evaluator& G, double alpha, double t, double h = 0.0);

/// As above, using the pair's analytic derivative when present. Throws
/// DiscontinuityError at a breakpoint.
double williamson_invert(const CdfPair& pair, double t, double h = 0.0);

/// G(t) = ∫_0^1 F(t v^{1/alpha}) dv, the substituted form of
/// alpha t^{-alpha} ∫_0^t x^{alpha-1} F(x) dx.
double williamson_G_from_cdf(const Evaluator& F, double alpha, double t,
                             const std::vector<double>& breakpoints,
                             const QuadratureConfig& cfg = default_quadrature());

CdfPair kendall_pair_of(const MixtureMeasure& m, double alpha,
                        const QuadratureConfig& cfg = default_quadrature());

CdfPair kendall_convolve(const CdfPair& p1, const CdfPair& p2);

}  // namespace genconv

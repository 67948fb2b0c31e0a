#pragma once

#include <string>
#include <utility>
#include <vector>

#include "genconv/quadrature.hpp"
#include "genconv/rng.hpp"

namespace genconv {

/// Tags of the continuous laws a mixture may carry. Parameters are listed in
/// the order they are stored in ContinuousComponent::params.
enum class DensityId {
  pareto,               // (beta)            density beta s^{-beta-1} on [1, inf)
  pow,                  // (alpha)           density alpha s^{alpha-1} on [0, 1]
  frechet_like,         // (alpha)           CDF exp(-s^{-alpha})
  weibull_kernel,       // (a, r)            law of G^{1/r}, G ~ Gamma(a)
  inv_weibull_kernel,   // (a, r)            law of G^{-1/r}
  ku_orderstat,         // (alpha, k, n)     k-th order statistic of n+k Pareto(alpha)
  ku_lom,               // (alpha, n)        CDF 1 - (1 - s^alpha)^n on [0, 1]
  pareto_max,           // (alpha, n)        CDF (1 - s^{-alpha})^n on [1, inf)
  kingman_radial,       // (s, x, y)         sqrt(x^2 + y^2 + 2xyV), V on [-1, 1]
  kucharczak,           // (a, r, x, y)      point-mass convolution, a in (0, 1)
  diamond_tail,         // (p, alpha)        continuous part of the diamond rule
  kendall_type_lom,     // (c, alpha, p)     CDF (1+c) s^alpha - c s^{alpha p} on [0, 1]
  kendall_type_maxrep,  // (c, alpha, p)     CDF of 1/X, X ~ kendall_type_lom
  g_alpha,              // (alpha, C)        |Y| for Y with the weakly stable density
  table,                // (kappa, t0, F0, t1, F1, ...) interpolated CDF, power tail kappa
};

std::string to_string(DensityId id);
DensityId density_from_string(const std::string& name);

struct Atom {
  double loc = 0.0;
  double w = 1.0;

  bool operator==(const Atom&) const = default;
};

struct Support {
  double lo = 0.0;
  double hi = 0.0;  // may be +infinity
};

/// A named continuous law, dilated by `scale`, carrying mixture weight `w`.
/// All evaluators below describe the dilated law on its own (unweighted).
struct ContinuousComponent {
  DensityId id = DensityId::pareto;
  std::vector<double> params;
  double scale = 1.0;
  double w = 1.0;

  bool operator==(const ContinuousComponent&) const = default;

  void validate() const;
  Support support() const;
  double cdf(double t) const;
  double pdf(double t) const;
  /// Generalized inverse of cdf for u in [0, 1).
  double quantile(double u) const;
  bool has_closed_quantile() const;
  double sample(Rng& rng) const;
  /// E g(X) for X with this law. `breaks` are kinks or jumps of g in t.
  double integrate(const Integrand& g, const QuadratureConfig& cfg,
                   const std::vector<double>& breaks = {}) const;
  /// Total mass of the density by quadrature (1 for a valid component).
  double mass(const QuadratureConfig& cfg) const;
};

ContinuousComponent make_component(DensityId id, std::vector<double> params, double scale = 1.0,
                                   double w = 1.0);

struct MixtureMeasure {
  std::vector<Atom> atoms;
  std::vector<ContinuousComponent> continuous;

  bool operator==(const MixtureMeasure&) const = default;

  static MixtureMeasure delta(double loc);
  static MixtureMeasure of(ContinuousComponent c);

  /// Checks weights, locations, component parameters and that the total
  /// weight is 1 within 1e-12.
  void validate() const;
  double total_weight() const;
  Support support() const;
  bool is_atomic() const { return continuous.empty(); }
};

/// Closed-form named laws as single-component measures.
namespace laws {
MixtureMeasure pareto(double beta);
MixtureMeasure pow_law(double alpha);
MixtureMeasure frechet_like(double alpha);
MixtureMeasure weibull_kernel(double a, double r);
MixtureMeasure exponential();
MixtureMeasure ku_orderstat(double alpha, int k, int n);
}  // namespace laws

double cdf(const MixtureMeasure& m, double t);
/// P(X < t), the left limit of cdf.
double cdf_left(const MixtureMeasure& m, double t);
/// inf{t : cdf(m, t) >= u}. Throws UnboundedQuantile for u = 1 on unbounded support.
double quantile(const MixtureMeasure& m, double u);
MixtureMeasure dilate(const MixtureMeasure& m, double a);
/// Flattened convex combination; identical atoms are merged, zero weights dropped.
MixtureMeasure mix(const std::vector<std::pair<double, MixtureMeasure>>& parts);
double integrate(const MixtureMeasure& m, const Integrand& g, const QuadratureConfig& cfg,
                 const std::vector<double>& breaks = {});
/// Atom weights plus quadrature mass of every continuous part.
double mass(const MixtureMeasure& m, const QuadratureConfig& cfg);
double sample(const MixtureMeasure& m, Rng& rng);

/// Replace components without a cheap sampler by interpolated tables so that
/// bulk sampling does not pay a numeric quantile per draw.
MixtureMeasure tabulate(const MixtureMeasure& m, const QuadratureConfig& cfg);
ContinuousComponent tabulate(const ContinuousComponent& c, const QuadratureConfig& cfg);

}  // namespace genconv

#include "genconv/families.hpp"

#include <algorithm>
#include <cmath>

#include "genconv/error.hpp"
#include "genconv/samplers.hpp"
#include "genconv/special.hpp"

namespace genconv {
namespace {

MixtureMeasure single(DensityId id, std::vector<double> params, double scale = 1.0) {
  return MixtureMeasure::of(make_component(id, std::move(params), scale));
}

// Weighted pieces of δ_ρ ◇ δ_1 for the families with a convex decomposition.
MixtureMeasure scaled_mixture(const std::vector<std::pair<double, MixtureMeasure>>& parts,
                              double M) {
  return dilate(mix(parts), M);
}

}  // namespace

MixtureMeasure delta_conv(const FamilySpec& fam, double x, double y) {
  fam.validate();
  if (!(x >= 0.0) || !(y >= 0.0) || !std::isfinite(x) || !std::isfinite(y)) {
    throw DomainError("families", "point masses must sit at finite non-negative locations");
  }
  if (fam.family == Family::kendall_type) {
    throw UnsupportedFamily("families", "the Kendall-type point-mass convolution is not constructible");
  }
  const double M = std::max(x, y);
  const double m = std::min(x, y);
  if (M == 0.0) return MixtureMeasure::delta(0.0);
  if (m == 0.0) return MixtureMeasure::delta(M);
  const double rho = m / M;

  switch (fam.family) {
    case Family::classical:
      return MixtureMeasure::delta(x + y);
    case Family::symmetric:
      return mix({{0.5, MixtureMeasure::delta(x + y)}, {0.5, MixtureMeasure::delta(M - m)}});
    case Family::stable: {
      const double v = std::pow(std::pow(M, fam.alpha) + std::pow(m, fam.alpha), 1.0 / fam.alpha);
      return MixtureMeasure::delta(std::max(M, v));
    }
    case Family::max:
      return MixtureMeasure::delta(M);
    case Family::kendall: {
      const double w = std::pow(rho, fam.alpha);
      return scaled_mixture({{1.0 - w, MixtureMeasure::delta(1.0)},
                             {w, laws::pareto(2.0 * fam.alpha)}},
                            M);
    }
    case Family::ku: {
      const double w = std::pow(rho, fam.alpha);
      std::vector<std::pair<double, MixtureMeasure>> parts;
      parts.push_back({std::pow(1.0 - w, fam.n), MixtureMeasure::delta(1.0)});
      for (int k = 1; k <= fam.n; ++k) {
        const double pk = special::binomial(fam.n, k) * std::pow(w, k) * std::pow(1.0 - w, fam.n - k);
        parts.push_back({pk, laws::ku_orderstat(fam.alpha, k, fam.n)});
      }
      // Binomial weights sum to 1 up to rounding; renormalize the last one.
      double s = 0.0;
      for (std::size_t i = 0; i + 1 < parts.size(); ++i) s += parts[i].first;
      parts.back().first = std::max(0.0, 1.0 - s);
      return scaled_mixture(parts, M);
    }
    case Family::diamond: {
      const double w = fam.p * std::pow(rho, fam.alpha);
      if (w == 0.0) return MixtureMeasure::delta(M);
      return scaled_mixture({{1.0 - w, MixtureMeasure::delta(1.0)},
                             {w, single(DensityId::diamond_tail, {fam.p, fam.alpha})}},
                            M);
    }
    case Family::kingman:
      return single(DensityId::kingman_radial, {fam.s, rho, 1.0}, M);
    case Family::kucharczak:
      if (fam.a == 1.0) {
        const double v = std::pow(std::pow(M, fam.r) + std::pow(m, fam.r), 1.0 / fam.r);
        return MixtureMeasure::delta(std::max(M, v));
      }
      return single(DensityId::kucharczak, {fam.a, fam.r, rho, 1.0}, M);
    case Family::kendall_type:
      break;
  }
  throw UnsupportedFamily("families", "no point-mass rule for " + to_string(fam.family));
}

bool is_monotonic(const FamilySpec& fam) {
  return fam.family != Family::kingman && fam.family != Family::symmetric;
}

MixtureMeasure lom_law(const FamilySpec& fam) {
  fam.validate();
  switch (fam.family) {
    case Family::classical:
      return laws::exponential();
    case Family::stable:
      return laws::weibull_kernel(1.0, fam.alpha);
    case Family::kendall:
      return laws::pow_law(fam.alpha);
    case Family::max:
      return MixtureMeasure::delta(1.0);
    case Family::kucharczak:
      return laws::weibull_kernel(fam.a, fam.r);
    case Family::ku:
      return single(DensityId::ku_lom, {fam.alpha, static_cast<double>(fam.n)});
    case Family::diamond:
      if (fam.p == 0.0) return MixtureMeasure::delta(1.0);
      return mix({{fam.p, laws::pow_law(fam.alpha)}, {1.0 - fam.p, MixtureMeasure::delta(1.0)}});
    case Family::kendall_type:
      return single(DensityId::kendall_type_lom, {fam.c, fam.alpha, fam.p});
    case Family::symmetric:
    case Family::kingman:
      break;
  }
  throw UnsupportedFamily("families", to_string(fam.family) + " has no lack-of-memory law");
}

MixtureMeasure max_weak_rep_mixing_law(const FamilySpec& fam) {
  fam.validate();
  switch (fam.family) {
    case Family::classical:
      return laws::frechet_like(1.0);
    case Family::stable:
      return laws::frechet_like(fam.alpha);
    case Family::kendall:
      return laws::pareto(fam.alpha);
    case Family::max:
      return MixtureMeasure::delta(1.0);
    case Family::kucharczak:
      return single(DensityId::inv_weibull_kernel, {fam.a, fam.r});
    case Family::ku:
      return single(DensityId::pareto_max, {fam.alpha, static_cast<double>(fam.n)});
    case Family::diamond:
      if (fam.p == 0.0) return MixtureMeasure::delta(1.0);
      return mix({{1.0 - fam.p, MixtureMeasure::delta(1.0)}, {fam.p, laws::pareto(fam.alpha)}});
    case Family::kendall_type:
      return single(DensityId::kendall_type_maxrep, {fam.c, fam.alpha, fam.p});
    case Family::symmetric:
    case Family::kingman:
      break;
  }
  throw UnsupportedFamily("families",
                          to_string(fam.family) + " kernel does not decrease to 0");
}

ConvexDecomposition convex_decomposition(const FamilySpec& fam) {
  fam.validate();
  ConvexDecomposition d;
  const double a = fam.alpha;
  switch (fam.family) {
    case Family::kendall:
      d.n = 2;
      d.weights = {[a](double x) { return 1.0 - std::pow(x, a); },
                   [a](double x) { return std::pow(x, a); }};
      d.components = {MixtureMeasure::delta(1.0), laws::pareto(2.0 * a)};
      return d;
    case Family::max:
      d.n = 1;
      d.weights = {[](double) { return 1.0; }};
      d.components = {MixtureMeasure::delta(1.0)};
      return d;
    case Family::ku: {
      const int n = fam.n;
      d.n = n + 1;
      for (int k = 0; k <= n; ++k) {
        d.weights.push_back([a, n, k](double x) {
          const double w = std::pow(x, a);
          return special::binomial(n, k) * std::pow(w, k) * std::pow(1.0 - w, n - k);
        });
        d.components.push_back(k == 0 ? MixtureMeasure::delta(1.0) : laws::ku_orderstat(a, k, n));
      }
      return d;
    }
    case Family::diamond: {
      const double p = fam.p;
      d.n = 2;
      d.weights = {[a, p](double x) { return 1.0 - p * std::pow(x, a); },
                   [a, p](double x) { return p * std::pow(x, a); }};
      d.components = {MixtureMeasure::delta(1.0), single(DensityId::diamond_tail, {p, a})};
      return d;
    }
    case Family::kendall_type: {
      const double c = fam.c, p = fam.p;
      d.n = 3;
      d.weights = {[=](double x) { return kernel_eval(fam, x); },
                   [=](double x) { return std::pow(x, a * p); },
                   [=](double x) { return (c + 1.0) * (std::pow(x, a) - std::pow(x, a * p)); }};
      d.components = {MixtureMeasure::delta(1.0), std::nullopt, std::nullopt};
      return d;
    }
    default:
      break;
  }
  throw UnsupportedFamily("families",
                          to_string(fam.family) + " lacks the convex linear combination property");
}

KendallTypeCase is_admissible_kendall_type(double c, double alpha, double p) {
  if (!(p >= 2.0) || !(alpha > 0.0)) {
    throw DomainError("families", "Kendall-type admissibility needs p >= 2 and alpha > 0");
  }
  const double eq[4] = {1.0 / (p - 1.0), 1.0 / (p * p - 1.0), 0.5 * (2.0 - p) / (p - 1.0),
                        0.5 / (p - 1.0)};
  for (int i = 0; i < 4; ++i) {
    if (std::abs(c - eq[i]) <= 1e-12) return {true, i + 1};
  }
  if (c > eq[1] && c < eq[3]) return {true, 5};
  return {false, 0};
}

double lom_residual(const FamilySpec& fam, double x, double y, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw DomainError("families", "sample count must be positive");
  const MixtureMeasure law = lom_law(fam);
  const ConvSampler conv(fam, x, y);
  const double exact = (1.0 - cdf(law, x)) * (1.0 - cdf(law, y));
  Rng rx(seed, 0);
  Rng rz(seed, 1);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (sample(law, rx) > conv(rz)) ++hits;
  }
  return std::abs(static_cast<double>(hits) / static_cast<double>(n) - exact);
}

double monotonicity_witness(const FamilySpec& fam, double x, double y, std::size_t n,
                            std::uint64_t seed) {
  if (n == 0) throw DomainError("families", "sample count must be positive");
  const ConvSampler conv(fam, x, y);
  const double M = std::max(x, y);
  Rng rng(seed, 0);
  std::size_t below = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (conv(rng) < M) ++below;
  }
  return static_cast<double>(below) / static_cast<double>(n);
}

}  // namespace genconv

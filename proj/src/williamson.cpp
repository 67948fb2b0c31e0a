#include "genconv/williamson.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "genconv/error.hpp"

namespace genconv {
namespace {

struct Closed {
  double G;
  double dG;
};

Closed atom_G(double loc, double alpha, double T) {
  if (loc == 0.0) return {1.0, 0.0};
  if (T <= loc) return {0.0, 0.0};
  const double ratio = std::pow(loc / T, alpha);
  return {1.0 - ratio, alpha * ratio / T};
}

// G and G' of pareto(beta) evaluated at unscaled T.
Closed pareto_G(double beta, double alpha, double T) {
  if (T <= 1.0) return {0.0, 0.0};
  const double tb = std::pow(T, -beta);
  const double ta = std::pow(T, -alpha);
  if (std::abs(alpha - beta) < 1e-8 * alpha) {
    const double L = std::log(T);
    return {1.0 - ta - alpha * ta * L, alpha * alpha * ta * L / T};
  }
  const double G = 1.0 - tb - beta * (tb - ta) / (alpha - beta);
  const double dG = (beta * tb - beta * (-beta * tb + alpha * ta) / (alpha - beta)) / T;
  return {G, dG};
}

Closed pow_G(double beta, double alpha, double T) {
  if (T <= 0.0) return {0.0, 0.0};
  const double k = alpha / (alpha + beta);
  if (T <= 1.0) {
    const double tb = std::pow(T, beta);
    return {tb * k, beta * k * tb / T};
  }
  const double ta = std::pow(T, -alpha);
  return {1.0 - ta * beta / (alpha + beta), alpha * beta / (alpha + beta) * ta / T};
}

bool has_closed_G(const ContinuousComponent& c) {
  return c.id == DensityId::pareto || c.id == DensityId::pow;
}

Closed component_G(const ContinuousComponent& c, double alpha, double t) {
  const double T = t / c.scale;
  Closed r = c.id == DensityId::pareto ? pareto_G(c.params[0], alpha, T)
                                       : pow_G(c.params[0], alpha, T);
  r.dG /= c.scale;
  return r;
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw DomainError("williamson", "alpha must be positive");
  }
}

}  // namespace

double williamson(const MixtureMeasure& m, double alpha, double t, const QuadratureConfig& cfg) {
  check_alpha(alpha);
  if (!(t >= 0.0)) throw DomainError("williamson", "argument must be non-negative");
  if (t == 0.0) return m.total_weight();
  double s = 0.0;
  for (const Atom& a : m.atoms) s += a.w * atom_G(a.loc, alpha, 1.0 / t).G;
  const Integrand g = [alpha, t](double x) {
    const double v = std::pow(t * x, alpha);
    return v >= 1.0 ? 0.0 : 1.0 - v;
  };
  for (const auto& c : m.continuous) {
    if (has_closed_G(c)) {
      s += c.w * component_G(c, alpha, 1.0 / t).G;
    } else if (c.support().lo * t < 1.0) {
      s += c.w * c.integrate(g, cfg, {1.0 / t});
    }
  }
  return std::clamp(s, 0.0, 1.0);
}

double williamson_invert(const Evaluator& G, double alpha, double t, double h) {
  check_alpha(alpha);
  if (!(t > 0.0)) throw DomainError("williamson", "inversion needs t > 0");
  if (h <= 0.0) h = std::max(1e-6, 1e-6 * t);
  h = std::min(h, 0.5 * t);
  const double d = (G(t + h) - G(t - h)) / (2.0 * h);
  return std::clamp(G(t) + t * d / alpha, 0.0, 1.0);
}

double williamson_invert(const CdfPair& pair, double t, double h) {
  for (double b : pair.breakpoints) {
    if (std::abs(t - b) <= 1e-12 * std::max(1.0, std::abs(b))) {
      throw DiscontinuityError("williamson", "inversion evaluated at a jump of F");
    }
  }
  if (!pair.dG) return williamson_invert(pair.G, pair.alpha, t, h);
  check_alpha(pair.alpha);
  if (!(t > 0.0)) throw DomainError("williamson", "inversion needs t > 0");
  return std::clamp(pair.G(t) + t * pair.dG(t) / pair.alpha, 0.0, 1.0);
}

double williamson_G_from_cdf(const Evaluator& F, double alpha, double t,
                             const std::vector<double>& breakpoints, const QuadratureConfig& cfg) {
  check_alpha(alpha);
  if (t <= 0.0) return F(0.0);
  std::vector<double> vb;
  for (double b : breakpoints) {
    if (b > 0.0 && b < t) vb.push_back(std::pow(b / t, alpha));
  }
  const Integrand f = [&F, alpha, t](double v) { return F(t * std::pow(v, 1.0 / alpha)); };
  return quad_integrate(f, 0.0, 1.0, cfg, vb);
}

CdfPair kendall_pair_of(const MixtureMeasure& m, double alpha, const QuadratureConfig& cfg) {
  check_alpha(alpha);
  m.validate();
  auto mm = std::make_shared<const MixtureMeasure>(m);
  CdfPair pair;
  pair.alpha = alpha;
  for (const Atom& a : m.atoms) {
    if (a.w > 0.0 && a.loc > 0.0) pair.breakpoints.push_back(a.loc);
  }
  std::sort(pair.breakpoints.begin(), pair.breakpoints.end());
  pair.F = [mm](double t) { return cdf(*mm, t); };
  pair.F_left = [mm](double t) { return cdf_left(*mm, t); };

  const bool all_closed = std::all_of(m.continuous.begin(), m.continuous.end(), has_closed_G);
  pair.G = [mm, alpha, cfg](double t) {
    if (t <= 0.0) return cdf(*mm, 0.0);
    double s = 0.0;
    for (const Atom& a : mm->atoms) s += a.w * atom_G(a.loc, alpha, t).G;
    for (const auto& c : mm->continuous) {
      if (has_closed_G(c)) {
        s += c.w * component_G(c, alpha, t).G;
      } else {
        const Support sup = c.support();
        if (t <= sup.lo) continue;
        std::vector<double> edges{sup.lo};
        if (std::isfinite(sup.hi)) edges.push_back(sup.hi);
        s += c.w * williamson_G_from_cdf([&c](double x) { return c.cdf(x); }, alpha, t, edges, cfg);
      }
    }
    return std::clamp(s, 0.0, 1.0);
  };
  if (all_closed) {
    pair.dG = [mm, alpha](double t) {
      if (t <= 0.0) return 0.0;
      double s = 0.0;
      for (const Atom& a : mm->atoms) s += a.w * atom_G(a.loc, alpha, t).dG;
      for (const auto& c : mm->continuous) s += c.w * component_G(c, alpha, t).dG;
      return s;
    };
  }
  return pair;
}

CdfPair kendall_convolve(const CdfPair& p1, const CdfPair& p2) {
  if (std::abs(p1.alpha - p2.alpha) > 1e-15 * std::max(p1.alpha, p2.alpha)) {
    throw DomainError("williamson", "Kendall convolution of pairs with different alpha");
  }
  const int depth = std::max(p1.depth, p2.depth) + 1;
  if (depth > CdfPair::max_depth) throw DomainError("williamson", "pair composition too deep");
  CdfPair out;
  out.alpha = p1.alpha;
  out.depth = depth;
  out.breakpoints = p1.breakpoints;
  out.breakpoints.insert(out.breakpoints.end(), p2.breakpoints.begin(), p2.breakpoints.end());
  std::sort(out.breakpoints.begin(), out.breakpoints.end());
  out.breakpoints.erase(std::unique(out.breakpoints.begin(), out.breakpoints.end()),
                        out.breakpoints.end());
  auto a = std::make_shared<const CdfPair>(p1);
  auto b = std::make_shared<const CdfPair>(p2);
  out.G = [a, b](double t) { return a->G(t) * b->G(t); };
  out.F = [a, b](double t) {
    if (t < 0.0) return 0.0;
    const double g1 = a->G(t), g2 = b->G(t);
    return std::clamp(g1 * b->F(t) + g2 * a->F(t) - g1 * g2, 0.0, 1.0);
  };
  out.F_left = [a, b](double t) {
    if (t <= 0.0) return 0.0;
    const double g1 = a->G(t), g2 = b->G(t);
    const auto left = [t](const CdfPair& p) { return p.F_left ? p.F_left(t) : p.F(t); };
    return std::clamp(g1 * left(*b) + g2 * left(*a) - g1 * g2, 0.0, 1.0);
  };
  if (p1.dG && p2.dG) {
    out.dG = [a, b](double t) { return a->dG(t) * b->G(t) + a->G(t) * b->dG(t); };
  }
  return out;
}

}  // namespace genconv

#include "genconv/kernels.hpp"

#include <cmath>

#include "genconv/error.hpp"
#include "genconv/families.hpp"
#include "genconv/special.hpp"

namespace genconv {

std::string to_string(Family f) {
  switch (f) {
    case Family::classical: return "classical";
    case Family::symmetric: return "symmetric";
    case Family::stable: return "stable";
    case Family::kendall: return "kendall";
    case Family::max: return "max";
    case Family::kucharczak: return "kucharczak";
    case Family::ku: return "ku";
    case Family::diamond: return "diamond";
    case Family::kendall_type: return "kendall_type";
    case Family::kingman: return "kingman";
  }
  return "unknown";
}

Family family_from_string(const std::string& name) {
  for (Family f : {Family::classical, Family::symmetric, Family::stable, Family::kendall,
                   Family::max, Family::kucharczak, Family::ku, Family::diamond,
                   Family::kendall_type, Family::kingman}) {
    if (to_string(f) == name) return f;
  }
  if (name == "kendall-type") return Family::kendall_type;
  throw DomainError("kernels", "unknown family '" + name + "'");
}

KernelSpec KernelSpec::classical() { return KernelSpec{}; }

KernelSpec KernelSpec::symmetric() {
  KernelSpec k;
  k.family = Family::symmetric;
  return k;
}

KernelSpec KernelSpec::stable(double alpha) {
  KernelSpec k;
  k.family = Family::stable;
  k.alpha = alpha;
  k.validate();
  return k;
}

KernelSpec KernelSpec::kendall(double alpha) {
  KernelSpec k;
  k.family = Family::kendall;
  k.alpha = alpha;
  k.validate();
  return k;
}

KernelSpec KernelSpec::max() {
  KernelSpec k;
  k.family = Family::max;
  return k;
}

KernelSpec KernelSpec::kucharczak(double a, double r) {
  KernelSpec k;
  k.family = Family::kucharczak;
  k.a = a;
  k.r = r;
  k.validate();
  return k;
}

KernelSpec KernelSpec::ku(double alpha, int n) {
  KernelSpec k;
  k.family = Family::ku;
  k.alpha = alpha;
  k.n = n;
  k.validate();
  return k;
}

KernelSpec KernelSpec::diamond(double p, double alpha) {
  KernelSpec k;
  k.family = Family::diamond;
  k.p = p;
  k.alpha = alpha;
  k.validate();
  return k;
}

KernelSpec KernelSpec::kendall_type(double c, double alpha, double p) {
  KernelSpec k;
  k.family = Family::kendall_type;
  k.c = c;
  k.alpha = alpha;
  k.p = p;
  k.validate();
  return k;
}

KernelSpec KernelSpec::kingman(double s) {
  KernelSpec k;
  k.family = Family::kingman;
  k.s = s;
  k.validate();
  return k;
}

void KernelSpec::validate() const {
  auto need = [](bool ok, const std::string& what) {
    if (!ok) throw DomainError("kernels", what);
  };
  switch (family) {
    case Family::classical:
    case Family::symmetric:
    case Family::max:
      break;
    case Family::stable:
    case Family::kendall:
      need(alpha > 0.0 && std::isfinite(alpha), "alpha must be positive");
      break;
    case Family::kucharczak:
      need(a > 0.0 && a <= 1.0, "Kucharczak a must lie in (0, 1]");
      need(r > 0.0 && std::isfinite(r), "Kucharczak r must be positive");
      break;
    case Family::ku:
      need(alpha > 0.0 && std::isfinite(alpha), "alpha must be positive");
      need(n >= 1, "n must be a positive integer");
      break;
    case Family::diamond:
      need(p >= 0.0 && p <= 1.0, "diamond p must lie in [0, 1]");
      need(alpha > 0.0 && std::isfinite(alpha), "alpha must be positive");
      break;
    case Family::kendall_type:
      need(is_admissible_kendall_type(c, alpha, p).admissible,
           "(c, alpha, p) is not an admissible Kendall-type triple");
      break;
    case Family::kingman:
      need(s > -0.5 && std::isfinite(s), "Kingman index must exceed -1/2");
      break;
  }
}

bool KernelSpec::compact() const {
  switch (family) {
    case Family::kendall:
    case Family::max:
    case Family::ku:
    case Family::diamond:
    case Family::kendall_type:
      return true;
    default:
      return false;
  }
}

std::vector<double> KernelSpec::params() const {
  switch (family) {
    case Family::stable:
    case Family::kendall:
      return {alpha};
    case Family::kucharczak:
      return {a, r};
    case Family::ku:
      return {alpha, static_cast<double>(n)};
    case Family::diamond:
      return {p, alpha};
    case Family::kendall_type:
      return {c, alpha, p};
    case Family::kingman:
      return {s};
    default:
      return {};
  }
}

double kernel_eval(const KernelSpec& spec, double t) {
  if (!(t >= 0.0)) throw DomainError("kernels", "kernel argument must be non-negative");
  switch (spec.family) {
    case Family::classical:
      return std::exp(-t);
    case Family::symmetric:
      return std::cos(t);
    case Family::stable:
      return std::exp(-std::pow(t, spec.alpha));
    case Family::kendall:
      return t >= 1.0 ? 0.0 : 1.0 - std::pow(t, spec.alpha);
    case Family::max:
      return t <= 1.0 ? 1.0 : 0.0;
    case Family::kucharczak:
      if (spec.a == 1.0) return std::exp(-std::pow(t, spec.r));
      return special::gamma_q(spec.a, std::pow(t, spec.r));
    case Family::ku:
      return t >= 1.0 ? 0.0 : std::pow(1.0 - std::pow(t, spec.alpha), spec.n);
    case Family::diamond:
      return t > 1.0 ? 0.0 : 1.0 - spec.p * std::pow(t, spec.alpha);
    case Family::kendall_type: {
      if (t > 1.0) return 0.0;
      const double ta = std::pow(t, spec.alpha);
      return 1.0 - (1.0 + spec.c) * ta + spec.c * std::pow(ta, spec.p);
    }
    case Family::kingman:
      return special::kingman_phi(spec.s, t);
  }
  return 0.0;
}

double gen_char_fn(const KernelSpec& spec, const MixtureMeasure& m, double t,
                   const QuadratureConfig& cfg) {
  if (!(t >= 0.0)) throw DomainError("kernels", "characteristic function argument must be >= 0");
  std::vector<double> breaks;
  if (spec.compact() && t > 0.0) breaks.push_back(1.0 / t);
  double s = 0.0;
  for (const Atom& a : m.atoms) s += a.w * kernel_eval(spec, a.loc * t);
  if (t == 0.0) {
    for (const auto& c : m.continuous) s += c.w;
    return s;
  }
  const Integrand g = [&spec, t](double x) { return kernel_eval(spec, x * t); };
  for (const auto& c : m.continuous) {
    // Compact kernels vanish beyond 1/t; skip components supported there.
    if (spec.compact() && c.support().lo * t > 1.0) continue;
    s += c.w * c.integrate(g, cfg, breaks);
  }
  return s;
}

std::vector<double> default_product_grid(double x, double y) {
  const double hi = 3.0 / std::max({x, y, 1.0});
  std::vector<double> g(50);
  for (int i = 0; i < 50; ++i) g[i] = hi * i / 49.0;
  return g;
}

ProductFormulaReport product_formula_residual(const KernelSpec& spec, double x, double y,
                                              const std::vector<double>& grid,
                                              const QuadratureConfig& cfg) {
  const MixtureMeasure mu = delta_conv(spec, x, y);
  ProductFormulaReport rep;
  rep.x = x;
  rep.y = y;
  rep.grid = grid;
  for (double t : grid) {
    const double lhs = kernel_eval(spec, x * t) * kernel_eval(spec, y * t);
    const double r = std::abs(lhs - gen_char_fn(spec, mu, t, cfg));
    rep.per_point.push_back(r);
    rep.max_residual = std::max(rep.max_residual, r);
  }
  return rep;
}

std::vector<double> default_polya_grid(const KernelSpec& spec) {
  double T = 2.0;
  if (!spec.compact()) {
    T = 1.0;
    while (std::abs(kernel_eval(spec, T)) >= 1e-7 && T < 1024.0) T *= 2.0;
  }
  const int n = 4000;
  std::vector<double> g(n + 1);
  for (int i = 0; i <= n; ++i) g[i] = T * i / n;
  return g;
}

PolyaReport polya_check(const KernelSpec& spec, const std::vector<double>& grid) {
  PolyaReport rep;
  auto fail = [&rep](std::string why, std::vector<double> w) {
    rep.ok = false;
    rep.reason = std::move(why);
    rep.witness = std::move(w);
    return rep;
  };
  if (grid.size() < 3 || grid.front() != 0.0) {
    throw DomainError("kernels", "Polya grid must start at 0 and hold at least three points");
  }
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw DomainError("kernels", "Polya grid must increase");
  }
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) v[i] = kernel_eval(spec, grid[i]);
  if (v[0] != 1.0) return fail("kernel at 0 differs from 1", {0.0});
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (v[i] > v[i - 1]) return fail("kernel increases", {grid[i - 1], grid[i]});
  }
  for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
    const double hl = grid[i] - grid[i - 1];
    const double hr = grid[i + 1] - grid[i];
    const double d2 = ((v[i + 1] - v[i]) / hr - (v[i] - v[i - 1]) / hl) * 0.5 * (hl + hr);
    if (d2 < -1e-12) return fail("convexity violated", {grid[i - 1], grid[i], grid[i + 1]});
  }
  if (!(std::abs(v.back()) < 1e-6)) return fail("kernel does not vanish at the grid end", {grid.back()});
  return rep;
}

}  // namespace genconv

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>

#include "genconv/error.hpp"
#include "genconv/measures.hpp"
#include "genconv/special.hpp"
#include "genconv/weak_stable.hpp"

namespace genconv {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;
constexpr double kHalfTol = 1e-9;  // |p - 1/2| below this uses the diamond limit form

using Fn = std::function<double(double)>;

// A change of variables s = s_of_w(w), w in [lo, hi], with E g(S) = ∫ g(s(w)) rho(w) dw.
struct Chart {
  double lo, hi;
  Fn s_of_w;
  Fn rho;
  Fn w_of_s;
  std::vector<double> breaks;
};

bool is_int(double v) { return std::floor(v) == v; }

void need(bool ok, const char* what) {
  if (!ok) throw DomainError("measures", what);
}

std::size_t arity(DensityId id) {
  switch (id) {
    case DensityId::pareto:
    case DensityId::pow:
    case DensityId::frechet_like:
      return 1;
    case DensityId::weibull_kernel:
    case DensityId::inv_weibull_kernel:
    case DensityId::ku_lom:
    case DensityId::pareto_max:
    case DensityId::diamond_tail:
    case DensityId::g_alpha:
      return 2;
    case DensityId::ku_orderstat:
    case DensityId::kingman_radial:
    case DensityId::kendall_type_lom:
    case DensityId::kendall_type_maxrep:
      return 3;
    case DensityId::kucharczak:
      return 4;
    case DensityId::table:
      return 0;
  }
  return 0;
}

// ---- diamond tail --------------------------------------------------------

bool diamond_is_half(double p) { return std::abs(p - 0.5) < kHalfTol; }

double diamond_cdf(double p, double a, double s) {
  if (s <= 1.0) return 0.0;
  if (p == 1.0) return 1.0 - std::pow(s, -2.0 * a);
  if (diamond_is_half(p)) {
    const double s2 = std::pow(s, -2.0 * a);
    return (1.0 - s2) - a * std::log(s) * s2;
  }
  const double slow = std::pow(s, -a / (1.0 - p));  // s^{q - 2 alpha}
  return (p * (1.0 - std::pow(s, -2.0 * a)) - (1.0 - p) * (1.0 - slow)) / (2.0 * p - 1.0);
}

double diamond_pdf(double p, double a, double s) {
  if (s < 1.0) return 0.0;
  const double base = a * std::pow(s, -2.0 * a - 1.0);
  if (p == 1.0) return 2.0 * base;
  if (diamond_is_half(p)) return base * (1.0 + 2.0 * a * std::log(s));
  const double q = a * (1.0 - 2.0 * p) / (1.0 - p);
  return base * (2.0 * p - std::pow(s, q)) / (2.0 * p - 1.0);
}

// Density of w = s^{-alpha} on (0, 1].
double diamond_rho(double p, double w) {
  if (w <= 0.0) return 0.0;
  if (p == 1.0) return 2.0 * w;
  if (diamond_is_half(p)) return w * (1.0 - 2.0 * std::log(w));
  const double e = (2.0 * p - 1.0) / (1.0 - p);
  return (2.0 * p - std::pow(w, e)) * w / (2.0 * p - 1.0);
}

// ---- Kucharczak ------------------------------------------------------------

struct Kuch {
  double a, r, X, Y, K;
  explicit Kuch(const std::vector<double>& p)
      : a(p[0]), r(p[1]), X(std::pow(p[2], p[1])), Y(std::pow(p[3], p[1])) {
    K = std::exp(a * std::log(X) + a * std::log(Y) - std::lgamma(a) - std::lgamma(1.0 - a));
  }
  double edge() const { return X + Y; }
  // Density in u = s^r.
  double fu(double u) const {
    if (u <= X + Y) return 0.0;
    return K * std::pow(u, -a) * std::pow(u - X - Y, -a) * (1.0 / (u - X) + 1.0 / (u - Y));
  }
  // Near-edge density in w = (u - X - Y)^{1-a}.
  double u_of_w(double w) const { return X + Y + std::pow(w, 1.0 / (1.0 - a)); }
  double rho_near(double w) const {
    const double u = u_of_w(w);
    return K * std::pow(u, -a) * (1.0 / (u - X) + 1.0 / (u - Y)) / (1.0 - a);
  }
  double w_near_max() const { return std::pow(X + Y, 1.0 - a); }
};

double kucharczak_cdf(const std::vector<double>& p, double s, const QuadratureConfig& cfg) {
  const Kuch k(p);
  const double u = std::pow(s, k.r);
  if (u <= k.edge()) return 0.0;
  if (u <= 2.0 * k.edge()) {
    const double w = std::pow(u - k.edge(), 1.0 - k.a);
    return quad_integrate([&k](double v) { return k.rho_near(v); }, 0.0, w, cfg);
  }
  const double upper = quad_integrate([&k](double v) { return k.fu(v); }, u, kInf, cfg);
  return std::clamp(1.0 - upper, 0.0, 1.0);
}

// ---- table -------------------------------------------------------------------

struct Table {
  const std::vector<double>& p;
  std::size_t n() const { return (p.size() - 1) / 2; }
  double kappa() const { return p[0]; }
  double t(std::size_t i) const { return p[1 + 2 * i]; }
  double F(std::size_t i) const { return p[2 + 2 * i]; }

  double cdf(double s) const {
    const std::size_t N = n();
    if (s < t(0)) return 0.0;
    if (s >= t(N - 1)) {
      if (kappa() > 0.0) return 1.0 - (1.0 - F(N - 1)) * std::pow(s / t(N - 1), -kappa());
      return 1.0;
    }
    std::size_t lo = 0, hi = N - 1;  // t(lo) <= s < t(hi)
    while (hi - lo > 1) {
      const std::size_t mid = (lo + hi) / 2;
      (t(mid) <= s ? lo : hi) = mid;
    }
    const double h = t(hi) - t(lo);
    return h > 0.0 ? F(lo) + (F(hi) - F(lo)) * (s - t(lo)) / h : F(hi);
  }
  double pdf(double s) const {
    const std::size_t N = n();
    if (s < t(0)) return 0.0;
    if (s >= t(N - 1)) {
      if (kappa() <= 0.0) return 0.0;
      return kappa() * (1.0 - F(N - 1)) / t(N - 1) * std::pow(s / t(N - 1), -kappa() - 1.0);
    }
    std::size_t lo = 0, hi = N - 1;
    while (hi - lo > 1) {
      const std::size_t mid = (lo + hi) / 2;
      (t(mid) <= s ? lo : hi) = mid;
    }
    const double h = t(hi) - t(lo);
    return h > 0.0 ? (F(hi) - F(lo)) / h : 0.0;
  }
  double quantile(double u) const {
    const std::size_t N = n();
    if (u <= F(0)) return t(0);
    if (u > F(N - 1)) {
      if (kappa() <= 0.0) return t(N - 1);
      return t(N - 1) * std::pow((1.0 - u) / (1.0 - F(N - 1)), -1.0 / kappa());
    }
    std::size_t lo = 0, hi = N - 1;  // F(lo) < u <= F(hi)
    while (hi - lo > 1) {
      const std::size_t mid = (lo + hi) / 2;
      (F(mid) < u ? lo : hi) = mid;
    }
    const double dF = F(hi) - F(lo);
    return dF > 0.0 ? t(lo) + (t(hi) - t(lo)) * (u - F(lo)) / dF : t(hi);
  }
};

// ---- generic numeric quantile ---------------------------------------------

double bisect_quantile(const Fn& F, double lo, double hi, double u) {
  if (F(lo) >= u) return lo;
  if (std::isinf(hi)) {
    hi = std::max(1.0, 2.0 * lo);
    while (F(hi) < u) {
      lo = hi;
      hi *= 2.0;
      if (hi > 1e300) throw UnboundedQuantile("measures", "quantile bracket overflow");
    }
  }
  for (int i = 0; i < 300 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (F(mid) >= u ? hi : lo) = mid;
  }
  return hi;
}

// ---- charts ------------------------------------------------------------------

Chart quantile_chart(const ContinuousComponent& c) {
  // u = 1 is a null set; evaluating just inside keeps unbounded laws finite.
  static constexpr double kTop = 1.0 - std::numeric_limits<double>::epsilon() / 2.0;
  return {0.0, 1.0, [&c](double u) { return c.quantile(std::min(u, kTop)) / c.scale; }, [](double) { return 1.0; },
          [&c](double s) { return c.cdf(s * c.scale); }, {}};
}

std::vector<Chart> charts(const ContinuousComponent& c) {
  const auto& p = c.params;
  switch (c.id) {
    case DensityId::weibull_kernel:
    case DensityId::inv_weibull_kernel: {
      const double a = p[0], r = p[1];
      const double sign = c.id == DensityId::weibull_kernel ? 1.0 : -1.0;
      const double norm = std::tgamma(a + 1.0);
      return {{0.0, kInf, [=](double w) { return std::pow(w, sign / (a * r)); },
               [=](double w) { return std::exp(-std::pow(w, 1.0 / a)) / norm; },
               [=](double s) { return std::pow(s, sign * a * r); }, {}}};
    }
    case DensityId::ku_orderstat: {
      const double a = p[0], k = p[1], n = p[2];
      const double lognorm = std::lgamma(k) + std::lgamma(n + 1.0) - std::lgamma(n + k + 1.0);
      return {{0.0, 1.0, [=](double b) { return std::pow(1.0 - b, -1.0 / a); },
               [=](double b) {
                 return std::exp((k - 1.0) * std::log(b) + n * std::log1p(-b) - lognorm);
               },
               [=](double s) { return 1.0 - std::pow(s, -a); }, {}}};
    }
    case DensityId::kingman_radial: {
      const double sk = p[0], x = p[1], y = p[2];
      const double lognorm = 2.0 * sk * std::log(2.0) + std::lgamma(sk + 0.5) * 2.0 -
                             std::lgamma(2.0 * sk + 1.0);
      return {{0.0, kPi,
               [=](double th) {
                 return std::sqrt(std::max(0.0, x * x + y * y + 2.0 * x * y * std::cos(th)));
               },
               [=](double th) {
                 const double sn = std::sin(th);
                 if (sn <= 0.0) return sk == 0.0 ? std::exp(-lognorm) : 0.0;
                 return std::exp(2.0 * sk * std::log(sn) - lognorm);
               },
               [=](double s) {
                 const double v = (s * s - x * x - y * y) / (2.0 * x * y);
                 return std::acos(std::clamp(v, -1.0, 1.0));
               },
               {}}};
    }
    case DensityId::kucharczak: {
      const Kuch k(p);
      const double wmax = k.w_near_max();
      const double r = k.r;
      return {{0.0, wmax, [=](double w) { return std::pow(k.u_of_w(w), 1.0 / r); },
               [=](double w) { return k.rho_near(w); },
               [=](double s) { return std::pow(std::max(0.0, std::pow(s, r) - k.edge()), 1.0 - k.a); },
               {}},
              {2.0 * k.edge(), kInf, [=](double u) { return std::pow(u, 1.0 / r); },
               [=](double u) { return k.fu(u); }, [=](double s) { return std::pow(s, r); }, {}}};
    }
    case DensityId::diamond_tail: {
      const double pp = p[0], a = p[1];
      return {{0.0, 1.0, [=](double w) { return std::pow(w, -1.0 / a); },
               [=](double w) { return diamond_rho(pp, w); },
               [=](double s) { return std::pow(s, -a); }, {}}};
    }
    case DensityId::kendall_type_lom:
    case DensityId::kendall_type_maxrep: {
      const double cc = p[0], a = p[1], pp = p[2];
      const double sign = c.id == DensityId::kendall_type_lom ? 1.0 : -1.0;
      return {{0.0, 1.0, [=](double w) { return std::pow(w, sign / a); },
               [=](double w) { return (1.0 + cc) - cc * pp * std::pow(w, pp - 1.0); },
               [=](double s) { return std::pow(s, sign * a); }, {}}};
    }
    default:
      return {quantile_chart(c)};
  }
}

// Inverting these CDFs needs a quadrature per bisection step, so draws go
// through a unit-scale table built once per parameter set.
const ContinuousComponent& sampling_table(const ContinuousComponent& c) {
  static std::mutex mu;
  static std::map<std::pair<DensityId, std::vector<double>>, ContinuousComponent> cache;
  const std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(c.id, c.params);
  auto it = cache.find(key);
  if (it == cache.end()) {
    ContinuousComponent unit = c;
    unit.scale = 1.0;
    unit.w = 1.0;
    it = cache.emplace(std::move(key), tabulate(unit, default_quadrature())).first;
  }
  return it->second;
}

// E g(|Y|) for the weakly stable law: exact on [0, T1], then the smooth
// leading tail term; the oscillatory remainder beyond T1 is O(T1^{-2}).
double g_alpha_integrate(const ContinuousComponent& c, const Integrand& g,
                         const QuadratureConfig& cfg) {
  const WeakStableDensity d(c.params[0], c.params[1]);
  const double a = c.params[0];
  const double T1 = 2000.0;
  const Integrand f = [&](double s) {
    if (s == 0.0) return g(0.0) * 2.0 * d.constant() / (a + 1.0);
    return g(c.scale * s) * 2.0 * d(s);
  };
  std::vector<double> bps;
  for (double b = kPi; b < T1; b += kPi) bps.push_back(b);
  const double near = quad_integrate(f, 0.0, T1, cfg, bps);
  const double cinf = std::tgamma(a) * std::sin(kPi * a / 2.0);
  const Integrand tail = [&](double s) {
    return g(c.scale * s) * 2.0 * d.constant() * cinf * std::pow(s, -a - 1.0);
  };
  return near + quad_integrate(tail, T1, kInf, cfg);
}

}  // namespace

std::string to_string(DensityId id) {
  switch (id) {
    case DensityId::pareto: return "pareto";
    case DensityId::pow: return "pow";
    case DensityId::frechet_like: return "frechet_like";
    case DensityId::weibull_kernel: return "weibull_kernel";
    case DensityId::inv_weibull_kernel: return "inv_weibull_kernel";
    case DensityId::ku_orderstat: return "ku_orderstat";
    case DensityId::ku_lom: return "ku_lom";
    case DensityId::pareto_max: return "pareto_max";
    case DensityId::kingman_radial: return "kingman_radial";
    case DensityId::kucharczak: return "kucharczak";
    case DensityId::diamond_tail: return "diamond_tail";
    case DensityId::kendall_type_lom: return "kendall_type_lom";
    case DensityId::kendall_type_maxrep: return "kendall_type_maxrep";
    case DensityId::g_alpha: return "g_alpha";
    case DensityId::table: return "table";
  }
  return "unknown";
}

DensityId density_from_string(const std::string& name) {
  static const DensityId all[] = {
      DensityId::pareto,         DensityId::pow,
      DensityId::frechet_like,   DensityId::weibull_kernel,
      DensityId::inv_weibull_kernel, DensityId::ku_orderstat,
      DensityId::ku_lom,         DensityId::pareto_max,
      DensityId::kingman_radial, DensityId::kucharczak,
      DensityId::diamond_tail,   DensityId::kendall_type_lom,
      DensityId::kendall_type_maxrep, DensityId::g_alpha,
      DensityId::table};
  for (DensityId id : all) {
    if (to_string(id) == name) return id;
  }
  throw FormatError("measures", "unknown density id '" + name + "'");
}

ContinuousComponent make_component(DensityId id, std::vector<double> params, double scale,
                                   double w) {
  ContinuousComponent c{id, std::move(params), scale, w};
  c.validate();
  return c;
}

void ContinuousComponent::validate() const {
  need(std::isfinite(scale) && scale > 0.0, "component scale must be positive and finite");
  need(w >= 0.0 && w <= 1.0, "component weight must lie in [0, 1]");
  const auto& p = params;
  for (double v : p) need(std::isfinite(v), "component parameters must be finite");
  if (id != DensityId::table) need(p.size() == arity(id), "wrong number of component parameters");
  switch (id) {
    case DensityId::pareto:
    case DensityId::pow:
    case DensityId::frechet_like:
      need(p[0] > 0.0, "shape must be positive");
      break;
    case DensityId::weibull_kernel:
    case DensityId::inv_weibull_kernel:
      need(p[0] > 0.0 && p[1] > 0.0, "a and r must be positive");
      break;
    case DensityId::ku_orderstat:
      need(p[0] > 0.0, "alpha must be positive");
      need(is_int(p[1]) && is_int(p[2]) && p[1] >= 1.0 && p[2] >= 1.0,
           "order statistic indices must be positive integers");
      break;
    case DensityId::ku_lom:
    case DensityId::pareto_max:
      need(p[0] > 0.0, "alpha must be positive");
      need(is_int(p[1]) && p[1] >= 1.0, "n must be a positive integer");
      break;
    case DensityId::kingman_radial:
      need(p[0] > -0.5, "Kingman index must exceed -1/2");
      need(p[1] > 0.0 && p[2] > 0.0, "Kingman radii must be positive");
      break;
    case DensityId::kucharczak:
      need(p[0] > 0.0 && p[0] < 1.0, "Kucharczak a must lie in (0, 1)");
      need(p[1] > 0.0 && p[2] > 0.0 && p[3] > 0.0, "Kucharczak r, x, y must be positive");
      break;
    case DensityId::diamond_tail:
      need(p[0] >= 0.0 && p[0] <= 1.0, "diamond p must lie in [0, 1]");
      need(p[1] > 0.0, "alpha must be positive");
      break;
    case DensityId::kendall_type_lom:
    case DensityId::kendall_type_maxrep:
      need(p[1] > 0.0 && p[2] > 1.0, "Kendall-type needs alpha > 0, p > 1");
      need(1.0 + p[0] - p[0] * p[2] >= -1e-12 && p[0] >= -1.0, "Kendall-type density negative");
      break;
    case DensityId::g_alpha:
      need(p[0] > 0.0 && p[0] <= 1.0 && p[1] > 0.0, "g_alpha needs alpha in (0, 1], C > 0");
      break;
    case DensityId::table: {
      need(p.size() >= 5 && p.size() % 2 == 1, "table needs kappa plus at least two nodes");
      const Table tb{p};
      need(p[0] >= 0.0, "table tail exponent must be non-negative");
      need(tb.t(0) >= 0.0 && tb.F(0) == 0.0, "table must start at F = 0 on [0, inf)");
      for (std::size_t i = 1; i < tb.n(); ++i) {
        need(tb.t(i) >= tb.t(i - 1) && tb.F(i) >= tb.F(i - 1), "table must be non-decreasing");
      }
      need(tb.F(tb.n() - 1) <= 1.0, "table CDF exceeds 1");
      need(p[0] > 0.0 || tb.F(tb.n() - 1) == 1.0, "table without tail must end at F = 1");
      break;
    }
  }
}

Support ContinuousComponent::support() const {
  const auto& p = params;
  Support s{0.0, kInf};
  switch (id) {
    case DensityId::pareto:
    case DensityId::ku_orderstat:
    case DensityId::pareto_max:
    case DensityId::diamond_tail:
    case DensityId::kendall_type_maxrep:
      s = {1.0, kInf};
      break;
    case DensityId::pow:
    case DensityId::ku_lom:
    case DensityId::kendall_type_lom:
      s = {0.0, 1.0};
      break;
    case DensityId::kingman_radial:
      s = {std::abs(p[1] - p[2]), p[1] + p[2]};
      break;
    case DensityId::kucharczak:
      s = {std::pow(std::pow(p[2], p[1]) + std::pow(p[3], p[1]), 1.0 / p[1]), kInf};
      break;
    case DensityId::table: {
      const Table tb{p};
      s = {tb.t(0), p[0] > 0.0 ? kInf : tb.t(tb.n() - 1)};
      break;
    }
    default:
      break;
  }
  return {s.lo * scale, s.hi * scale};
}

double ContinuousComponent::cdf(double t) const {
  if (!(t > 0.0)) return 0.0;
  if (std::isinf(t)) return 1.0;
  const double s = t / scale;
  const auto& p = params;
  switch (id) {
    case DensityId::pareto:
      return s <= 1.0 ? 0.0 : -std::expm1(-p[0] * std::log(s));
    case DensityId::pow:
      return s >= 1.0 ? 1.0 : std::pow(s, p[0]);
    case DensityId::frechet_like:
      return std::exp(-std::pow(s, -p[0]));
    case DensityId::weibull_kernel:
      return special::gamma_p(p[0], std::pow(s, p[1]));
    case DensityId::inv_weibull_kernel:
      return special::gamma_q(p[0], std::pow(s, -p[1]));
    case DensityId::ku_orderstat:
      return s <= 1.0 ? 0.0 : special::beta_inc(p[1], p[2] + 1.0, -std::expm1(-p[0] * std::log(s)));
    case DensityId::ku_lom:
      return s >= 1.0 ? 1.0 : 1.0 - std::pow(1.0 - std::pow(s, p[0]), p[1]);
    case DensityId::pareto_max:
      return s <= 1.0 ? 0.0 : std::pow(-std::expm1(-p[0] * std::log(s)), p[1]);
    case DensityId::kingman_radial: {
      const double x = p[1], y = p[2];
      const double v = std::clamp((s * s - x * x - y * y) / (2.0 * x * y), -1.0, 1.0);
      return special::beta_inc(p[0] + 0.5, p[0] + 0.5, 0.5 * (1.0 + v));
    }
    case DensityId::kucharczak:
      return kucharczak_cdf(p, s, default_quadrature());
    case DensityId::diamond_tail:
      return diamond_cdf(p[0], p[1], s);
    case DensityId::kendall_type_lom: {
      if (s >= 1.0) return 1.0;
      const double sa = std::pow(s, p[1]);
      return std::clamp((1.0 + p[0]) * sa - p[0] * std::pow(sa, p[2]), 0.0, 1.0);
    }
    case DensityId::kendall_type_maxrep: {
      if (s <= 1.0) return 0.0;
      const double sa = std::pow(s, -p[1]);
      return std::clamp(1.0 - (1.0 + p[0]) * sa + p[0] * std::pow(sa, p[2]), 0.0, 1.0);
    }
    case DensityId::g_alpha:
      return WeakStableDensity(p[0], p[1]).folded_cdf(s, default_quadrature());
    case DensityId::table:
      return Table{p}.cdf(s);
  }
  return 0.0;
}

double ContinuousComponent::pdf(double t) const {
  const Support sup = support();
  if (t < sup.lo || t > sup.hi || t <= 0.0) return 0.0;
  const double s = t / scale;
  const auto& p = params;
  double f = 0.0;
  switch (id) {
    case DensityId::pareto:
      f = p[0] * std::pow(s, -p[0] - 1.0);
      break;
    case DensityId::pow:
      f = p[0] * std::pow(s, p[0] - 1.0);
      break;
    case DensityId::frechet_like:
      f = p[0] * std::pow(s, -p[0] - 1.0) * std::exp(-std::pow(s, -p[0]));
      break;
    case DensityId::weibull_kernel:
      f = std::exp(std::log(p[1]) - std::lgamma(p[0]) + (p[0] * p[1] - 1.0) * std::log(s) -
                   std::pow(s, p[1]));
      break;
    case DensityId::inv_weibull_kernel:
      f = std::exp(std::log(p[1]) - std::lgamma(p[0]) - (p[0] * p[1] + 1.0) * std::log(s) -
                   std::pow(s, -p[1]));
      break;
    case DensityId::ku_orderstat: {
      const double a = p[0], k = p[1], n = p[2];
      f = a * k * special::binomial(static_cast<int>(n + k), static_cast<int>(n)) *
          std::pow(s, -a * (n + 1.0) - 1.0) * std::pow(1.0 - std::pow(s, -a), k - 1.0);
      break;
    }
    case DensityId::ku_lom:
      f = p[1] * p[0] * std::pow(s, p[0] - 1.0) * std::pow(1.0 - std::pow(s, p[0]), p[1] - 1.0);
      break;
    case DensityId::pareto_max:
      f = p[1] * p[0] * std::pow(s, -p[0] - 1.0) * std::pow(1.0 - std::pow(s, -p[0]), p[1] - 1.0);
      break;
    case DensityId::kingman_radial: {
      const double sk = p[0], x = p[1], y = p[2];
      const double v = (s * s - x * x - y * y) / (2.0 * x * y);
      if (v <= -1.0 || v >= 1.0) return 0.0;
      const double lognorm = 2.0 * sk * std::log(2.0) + 2.0 * std::lgamma(sk + 0.5) -
                             std::lgamma(2.0 * sk + 1.0);
      f = std::exp((sk - 0.5) * std::log1p(-v * v) - lognorm) * s / (x * y);
      break;
    }
    case DensityId::kucharczak: {
      const Kuch k(p);
      f = k.fu(std::pow(s, k.r)) * k.r * std::pow(s, k.r - 1.0);
      break;
    }
    case DensityId::diamond_tail:
      f = diamond_pdf(p[0], p[1], s);
      break;
    case DensityId::kendall_type_lom:
      f = p[1] * ((1.0 + p[0]) * std::pow(s, p[1] - 1.0) -
                  p[0] * p[2] * std::pow(s, p[1] * p[2] - 1.0));
      break;
    case DensityId::kendall_type_maxrep:
      f = p[1] * ((1.0 + p[0]) * std::pow(s, -p[1] - 1.0) -
                  p[0] * p[2] * std::pow(s, -p[1] * p[2] - 1.0));
      break;
    case DensityId::g_alpha:
      f = 2.0 * WeakStableDensity(p[0], p[1])(s);
      break;
    case DensityId::table:
      f = Table{p}.pdf(s);
      break;
  }
  return f / scale;
}

bool ContinuousComponent::has_closed_quantile() const {
  switch (id) {
    case DensityId::pareto:
    case DensityId::pow:
    case DensityId::frechet_like:
    case DensityId::ku_lom:
    case DensityId::pareto_max:
    case DensityId::table:
      return true;
    default:
      return false;
  }
}

double ContinuousComponent::quantile(double u) const {
  if (!(u >= 0.0 && u <= 1.0)) throw DomainError("measures", "quantile level outside [0, 1]");
  const Support sup = support();
  if (u == 1.0) {
    if (std::isinf(sup.hi)) throw UnboundedQuantile("measures", "quantile(1) of unbounded law");
    return sup.hi;
  }
  if (u == 0.0) return sup.lo;
  const auto& p = params;
  switch (id) {
    case DensityId::pareto:
      return scale * std::exp(-std::log1p(-u) / p[0]);
    case DensityId::pow:
      return scale * std::pow(u, 1.0 / p[0]);
    case DensityId::frechet_like:
      return scale * std::pow(-std::log(u), -1.0 / p[0]);
    case DensityId::ku_lom:
      return scale * std::pow(-std::expm1(std::log1p(-u) / p[1]), 1.0 / p[0]);
    case DensityId::pareto_max:
      return scale * std::exp(-std::log1p(-std::pow(u, 1.0 / p[1])) / p[0]);
    case DensityId::table:
      return scale * Table{p}.quantile(u);
    default:
      break;
  }
  return bisect_quantile([this](double t) { return cdf(t); }, sup.lo, sup.hi, u);
}

double ContinuousComponent::sample(Rng& rng) const {
  const auto& p = params;
  switch (id) {
    case DensityId::weibull_kernel:
      return scale * std::pow(rng.gamma(p[0]), 1.0 / p[1]);
    case DensityId::inv_weibull_kernel:
      return scale * std::pow(rng.gamma(p[0]), -1.0 / p[1]);
    case DensityId::ku_orderstat: {
      const double b = rng.beta(p[1], p[2] + 1.0);
      return scale * std::pow(1.0 - b, -1.0 / p[0]);
    }
    case DensityId::kingman_radial: {
      const double v = 2.0 * rng.beta(p[0] + 0.5, p[0] + 0.5) - 1.0;
      const double x = p[1], y = p[2];
      return scale * std::sqrt(std::max(0.0, x * x + y * y + 2.0 * x * y * v));
    }
    case DensityId::kucharczak:
    case DensityId::g_alpha:
      return scale * sampling_table(*this).quantile(rng.uniform());
    default:
      return quantile(rng.uniform());
  }
}

double ContinuousComponent::integrate(const Integrand& g, const QuadratureConfig& cfg,
                                      const std::vector<double>& breaks) const {
  if (id == DensityId::g_alpha) return g_alpha_integrate(*this, g, cfg);
  double total = 0.0;
  for (const Chart& ch : charts(*this)) {
    std::vector<double> bw = ch.breaks;
    for (double b : breaks) {
      if (!(b > 0.0) || !std::isfinite(b)) continue;
      const double w = ch.w_of_s(b / scale);
      if (std::isfinite(w) && w > ch.lo && w < ch.hi) bw.push_back(w);
    }
    const Integrand f = [&](double w) {
      const double r = ch.rho(w);
      return r == 0.0 ? 0.0 : g(scale * ch.s_of_w(w)) * r;
    };
    total += quad_integrate(f, ch.lo, ch.hi, cfg, bw);
  }
  return total;
}

double ContinuousComponent::mass(const QuadratureConfig& cfg) const {
  if (id == DensityId::g_alpha) {
    const WeakStableDensity d(params[0], params[1]);
    return 2.0 * d.constant() * d.half_mass(cfg);
  }
  if (has_closed_quantile()) {
    const Support sup = support();
    std::vector<double> bps;
    if (id == DensityId::table) {
      const Table tb{params};
      for (std::size_t i = 0; i < tb.n(); ++i) bps.push_back(tb.t(i) * scale);
    }
    return quad_integrate([this](double t) { return pdf(t); }, sup.lo, sup.hi, cfg, bps);
  }
  double total = 0.0;
  for (const Chart& ch : charts(*this)) total += quad_integrate(ch.rho, ch.lo, ch.hi, cfg, ch.breaks);
  return total;
}

ContinuousComponent tabulate(const ContinuousComponent& c, const QuadratureConfig&) {
  if (c.id != DensityId::kucharczak && c.id != DensityId::g_alpha) return c;
  ContinuousComponent unit = c;
  unit.scale = 1.0;
  unit.w = 1.0;
  std::vector<double> grid;
  if (c.id == DensityId::kucharczak) {
    const auto ch = charts(unit);
    const Chart& nearc = ch[0];
    for (int i = 0; i <= 400; ++i) {
      const double w = nearc.hi * std::pow(i / 400.0, 2.0);
      grid.push_back(nearc.s_of_w(w));
    }
    double u = ch[1].lo;
    const double edge = std::pow(grid.front(), c.params[1]);
    while (u < 1e12 * edge) {
      u *= 1.04;
      grid.push_back(std::pow(u, 1.0 / c.params[1]));
    }
  } else {
    grid.push_back(0.0);
    for (double s = 0.02; s < 1e6; s *= 1.03) grid.push_back(s);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  std::vector<double> F(grid.size());
  double run = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double v = i == 0 ? 0.0 : std::clamp(unit.cdf(grid[i]), 0.0, 1.0);
    run = std::max(run, v);
    F[i] = run;
  }
  // Stop where the remaining mass is resolved; fit a power tail beyond.
  std::size_t last = grid.size() - 1;
  while (last > 2 && F[last - 1] > 1.0 - 1e-10) --last;
  double kappa = 0.0;
  if (F[last] < 1.0 && F[last - 1] < F[last]) {
    kappa = std::log((1.0 - F[last - 1]) / (1.0 - F[last])) / std::log(grid[last] / grid[last - 1]);
  }
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    kappa = 0.0;
    F[last] = 1.0;
  }
  std::vector<double> params{kappa};
  for (std::size_t i = 0; i <= last; ++i) {
    params.push_back(grid[i]);
    params.push_back(F[i]);
  }
  return make_component(DensityId::table, std::move(params), c.scale, c.w);
}

}  // namespace genconv

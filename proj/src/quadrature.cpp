#include "genconv/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <queue>
#include <string>

#include "genconv/error.hpp"

namespace genconv {
namespace {

// Kronrod abscissae (positive half, descending), Kronrod weights, and the
// weights of the embedded 10-point Gauss rule (on xgk[1], xgk[3], ...).
constexpr double xgk[11] = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
constexpr double wgk[11] = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525552094, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr double wg[5] = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

constexpr int kMaxIntervals = 200000;
constexpr int kMaxTailBlocks = 1100;

struct Panel {
  double a, b, value, err;
  double floor;  // roundoff part of err; splitting cannot go below it
  int depth;
  bool operator<(const Panel& o) const { return err < o.err; }
};

double checked(const Integrand& f, double x) {
  const double v = f(x);
  if (!std::isfinite(v)) {
    throw QuadratureError("quadrature", "integrand not finite at x = " + std::to_string(x));
  }
  return v;
}

double gk21_floor(const Integrand& f, double a, double b, double& err, double& floor) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = checked(f, center);
  double resk = fc * wgk[10];
  double resg = 0.0;
  double resabs = std::abs(resk);
  double fv1[10];
  double fv2[10];
  for (int j = 0; j < 10; ++j) {
    const double dx = half * xgk[j];
    const double f1 = checked(f, center - dx);
    const double f2 = checked(f, center + dx);
    fv1[j] = f1;
    fv2[j] = f2;
    resk += wgk[j] * (f1 + f2);
    resabs += wgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) resg += wg[j / 2] * (f1 + f2);
  }
  const double mean = 0.5 * resk;
  double resasc = wgk[10] * std::abs(fc - mean);
  for (int j = 0; j < 10; ++j) {
    resasc += wgk[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));
  }
  const double result = resk * half;
  resabs *= std::abs(half);
  resasc *= std::abs(half);
  err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  constexpr double eps = std::numeric_limits<double>::epsilon();
  floor = 0.0;
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) {
    floor = 50.0 * eps * resabs;
    err = std::max(floor, err);
  }
  return result;
}

// Tanh-sinh rule on [a, b] for panels that bisection cannot resolve
// (algebraic endpoint singularities). Abscissae are placed by their distance
// to the nearer endpoint so that no node rounds onto a singular end.
double tanh_sinh(const Integrand& f, double a, double b, double tol, double& err) {
  constexpr double kHalfPi = 1.5707963267948966;
  constexpr double kTmax = 4.0;
  const double hw = 0.5 * (b - a);
  const double c = 0.5 * (a + b);
  auto node = [&](double t) {
    const double u = kHalfPi * std::sinh(t);
    const double w = hw * kHalfPi * std::cosh(t) / (std::cosh(u) * std::cosh(u));
    const double d = hw * 2.0 / (std::exp(2.0 * std::abs(u)) + 1.0);  // distance to the end
    const double x = t < 0.0 ? a + d : b - d;
    if (!(x > a && x < b) || w == 0.0) return 0.0;
    return w * checked(f, x);
  };
  double h = 1.0;
  double sum = checked(f, c) * hw * kHalfPi;
  for (double t = h; t <= kTmax; t += h) sum += node(t) + node(-t);
  double prev = sum * h;
  for (int level = 1; level <= 10; ++level) {
    h *= 0.5;
    for (double t = h; t <= kTmax; t += 2.0 * h) sum += node(t) + node(-t);
    const double est = sum * h;
    err = std::abs(est - prev);
    if (level >= 3 && err <= tol) return est;
    prev = est;
  }
  return prev;
}

// Global adaptive integration over consecutive segments of `pts`.
double adaptive(const Integrand& f, const std::vector<double>& pts, const QuadratureConfig& cfg) {
  std::priority_queue<Panel> heap;
  double total = 0.0;
  double total_err = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (!(pts[i + 1] > pts[i])) continue;
    double err = 0.0, floor = 0.0;
    const double v = gk21_floor(f, pts[i], pts[i + 1], err, floor);
    heap.push({pts[i], pts[i + 1], v, err, floor, 0});
    total += v;
    total_err += err;
  }
  int intervals = static_cast<int>(heap.size());
  while (!heap.empty()) {
    const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total));
    if (total_err <= tol) break;
    const Panel p = heap.top();
    if (p.err <= p.floor) break;  // remaining error is roundoff only
    heap.pop();
    const double mid = 0.5 * (p.a + p.b);
    if (p.depth + 1 > cfg.max_depth || mid <= p.a || mid >= p.b) {
      double e = 0.0;
      const double share = 0.01 * tol;
      const double v = tanh_sinh(f, p.a, p.b, share, e);
      if (e <= share) {
        total += v - p.value;
        total_err += e - p.err;
        heap.push({p.a, p.b, v, e, e, p.depth});
        continue;
      }
    }
    if (p.depth + 1 > cfg.max_depth || mid <= p.a || mid >= p.b || intervals > kMaxIntervals) {
      throw QuadratureError("quadrature", "no convergence on [" + std::to_string(p.a) + ", " +
                                              std::to_string(p.b) + "] (error estimate " +
                                              std::to_string(total_err) + ")");
    }
    double e1 = 0.0, e2 = 0.0, r1 = 0.0, r2 = 0.0;
    const double v1 = gk21_floor(f, p.a, mid, e1, r1);
    const double v2 = gk21_floor(f, mid, p.b, e2, r2);
    total += v1 + v2 - p.value;
    total_err += e1 + e2 - p.err;
    heap.push({p.a, mid, v1, e1, r1, p.depth + 1});
    heap.push({mid, p.b, v2, e2, r2, p.depth + 1});
    ++intervals;
  }
  // Re-sum to shed the drift of incremental updates.
  double sum = 0.0;
  while (!heap.empty()) {
    sum += heap.top().value;
    heap.pop();
  }
  return sum;
}

// ∫_T^{2T} f on the log scale, where power-law tails become smooth.
double tail_block(const Integrand& f, double T, const QuadratureConfig& cfg) {
  const Integrand g = [&f](double u) {
    const double t = std::exp(u);
    return f(t) * t;
  };
  const double lo = std::log(T);
  return adaptive(g, {lo, lo + std::log(2.0)}, cfg);
}

}  // namespace

void QuadratureConfig::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
    throw DomainError("quadrature", "tolerances must be positive");
  }
  if (max_depth < 1) throw DomainError("quadrature", "max_depth must be at least 1");
  if (!(infinite_tail_cutoff_mass > 0.0)) {
    throw DomainError("quadrature", "tail cutoff must be positive");
  }
}

QuadratureConfig default_quadrature() {
  QuadratureConfig cfg;
  if (const char* env = std::getenv("GENCONV_QUAD_TOL")) {
    char* end = nullptr;
    const double tol = std::strtod(env, &end);
    if (end != env && tol > 0.0 && std::isfinite(tol)) {
      cfg.abs_tol = tol;
      cfg.rel_tol = tol;
    }
  }
  return cfg;
}

double gk21(const Integrand& f, double a, double b, double& err) {
  double floor = 0.0;
  return gk21_floor(f, a, b, err, floor);
}

double quad_integrate(const Integrand& f, double a, double b, const QuadratureConfig& cfg,
                      const std::vector<double>& breakpoints) {
  cfg.validate();
  if (std::isnan(a) || std::isnan(b)) throw DomainError("quadrature", "NaN integration limit");
  if (b < a) return -quad_integrate(f, b, a, cfg, breakpoints);
  if (a == b) return 0.0;
  if (std::isinf(a)) throw DomainError("quadrature", "lower limit must be finite");

  std::vector<double> pts{a};
  for (double p : breakpoints) {
    if (p > a && p < b && std::isfinite(p)) pts.push_back(p);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  if (std::isfinite(b)) {
    pts.push_back(b);
    return adaptive(f, pts, cfg);
  }

  const double last = pts.back();
  const double T0 = last > 0.0 ? 2.0 * last : last + 1.0;
  pts.push_back(T0);
  double total = adaptive(f, pts, cfg);

  double T = T0;
  double prev = 0.0;
  int zero_run = 0;
  for (int k = 0; k < kMaxTailBlocks && T < 1e300; ++k, T *= 2.0) {
    const double blk = tail_block(f, T, cfg);
    total += blk;
    if (blk == 0.0) {
      if (++zero_run >= 2) return total;
      prev = blk;
      continue;
    }
    zero_run = 0;
    if (k > 0 && prev != 0.0) {
      const double q = blk / prev;
      if (q > 0.0 && q < 1.0) {
        const double rest = blk * q / (1.0 - q);
        if (std::abs(rest) < cfg.infinite_tail_cutoff_mass) return total + rest;
      }
    }
    prev = blk;
  }
  throw QuadratureError("quadrature", "tail mass did not fall below the cutoff");
}

}  // namespace genconv

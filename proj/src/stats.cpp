#include "genconv/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "genconv/error.hpp"

namespace genconv {

double ks_constant(double significance) {
  if (!(significance > 0.0 && significance < 1.0)) {
    throw DomainError("stats", "significance must lie in (0, 1)");
  }
  if (std::abs(significance - 0.01) < 1e-12) return 1.63;
  if (std::abs(significance - 0.05) < 1e-12) return 1.36;
  return std::sqrt(-0.5 * std::log(significance / 2.0));
}

double ecdf(const std::vector<double>& values, double t) {
  if (values.empty()) throw DomainError("stats", "empirical CDF of an empty batch");
  const auto below = std::count_if(values.begin(), values.end(), [t](double v) { return v <= t; });
  return static_cast<double>(below) / static_cast<double>(values.size());
}

double ecdf(const SampleBatch& batch, double t) { return ecdf(batch.values, t); }

KsReport ks_one_sample(const std::vector<double>& values, const std::function<double(double)>& F,
                       double significance, const std::function<double(double)>& F_left) {
  if (values.empty()) throw DomainError("stats", "KS test of an empty batch");
  std::vector<double> v = values;
  std::sort(v.begin(), v.end());
  const double n = static_cast<double>(v.size());
  double d = 0.0;
  std::size_t i = 0;
  while (i < v.size()) {
    std::size_t j = i;
    while (j < v.size() && v[j] == v[i]) ++j;
    const double x = v[i];
    const double below = static_cast<double>(i) / n;  // ECDF just left of x
    const double upto = static_cast<double>(j) / n;   // ECDF at x
    const double fx = F(x);
    const double fl = F_left ? F_left(x) : fx;
    d = std::max({d, std::abs(upto - fx), std::abs(below - fl)});
    i = j;
  }
  KsReport r;
  r.statistic = d;
  r.n = v.size();
  r.significance = significance;
  r.critical_value = ks_constant(significance) / std::sqrt(n);
  r.pass = r.statistic < r.critical_value;
  return r;
}

KsReport ks_one_sample(const SampleBatch& batch, const MixtureMeasure& law, double significance) {
  return ks_one_sample(
      batch.values, [&law](double t) { return cdf(law, t); }, significance,
      [&law](double t) { return cdf_left(law, t); });
}

KsReport ks_two_sample(const std::vector<double>& a, const std::vector<double>& b,
                       double significance) {
  if (a.empty() || b.empty()) throw DomainError("stats", "KS test of an empty batch");
  std::vector<double> x = a;
  std::vector<double> y = b;
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double n = static_cast<double>(x.size());
  const double m = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double t = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == t) ++i;
    while (j < y.size() && y[j] == t) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / n - static_cast<double>(j) / m));
  }
  KsReport r;
  r.statistic = d;
  r.n = x.size();
  r.m = y.size();
  r.significance = significance;
  r.critical_value = ks_constant(significance) * std::sqrt((n + m) / (n * m));
  r.pass = r.statistic < r.critical_value;
  return r;
}

KsReport ks_two_sample(const SampleBatch& a, const SampleBatch& b, double significance) {
  return ks_two_sample(a.values, b.values, significance);
}

BinomialCheck binomial_check(std::size_t successes, std::size_t trials, double p) {
  if (trials == 0) throw DomainError("stats", "binomial check needs trials");
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("stats", "probability outside [0, 1]");
  BinomialCheck c{successes, trials, p, 0.0, false};
  const double mean = static_cast<double>(trials) * p;
  const double sd = std::sqrt(mean * (1.0 - p));
  const double diff = static_cast<double>(successes) - mean;
  if (sd == 0.0) {
    c.z = diff == 0.0 ? 0.0 : INFINITY;
  } else {
    c.z = diff / sd;
  }
  c.pass = std::abs(c.z) <= 3.0;
  return c;
}

double cosine_transform(const std::function<double(double)>& g, double x,
                        const QuadratureConfig& cfg) {
  x = std::abs(x);
  if (x == 0.0) return 2.0 * quad_integrate(g, 0.0, INFINITY, cfg);
  const Integrand f = [&g, x](double t) { return g(t) * std::cos(x * t); };
  const double h = std::numbers::pi / x;
  // Partial sums over half periods alternate around the limit; repeated
  // averaging of the last few partial sums converges much faster.
  std::vector<double> partial;
  double s = 0.0;
  constexpr int kLevels = 12;
  double prev_est = INFINITY;
  for (int k = 0; k < 200000; ++k) {
    s += quad_integrate(f, k * h, (k + 1) * h, cfg);
    partial.push_back(s);
    if (partial.size() < static_cast<std::size_t>(kLevels) + 1) continue;
    std::vector<double> w(partial.end() - kLevels - 1, partial.end());
    for (int lvl = 0; lvl < kLevels; ++lvl) {
      for (std::size_t i = 0; i + 1 < w.size(); ++i) w[i] = 0.5 * (w[i] + w[i + 1]);
      w.pop_back();
    }
    const double est = w[0];
    if (std::abs(est - prev_est) <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(est))) {
      return 2.0 * est;
    }
    prev_est = est;
  }
  throw QuadratureError("stats", "cosine transform did not converge");
}

double cosine_transform(const WeakStableDensity& g, double x, const QuadratureConfig& cfg) {
  return g.cosine_transform(x, cfg);
}

double cosine_transform(const MixtureMeasure& folded, double x, const QuadratureConfig& cfg) {
  return integrate(folded, [x](double t) { return std::cos(x * t); }, cfg);
}

}  // namespace genconv

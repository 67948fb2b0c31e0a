#include "genconv/samplers.hpp"

#include <algorithm>
#include <cmath>

#include "genconv/error.hpp"

namespace genconv {
namespace {

double pareto_draw(double beta, Rng& rng) { return std::exp(-std::log(rng.uniform()) / beta); }

double pow_draw(double alpha, Rng& rng) { return std::pow(rng.uniform(), 1.0 / alpha); }

// Index k of the interval (s_{k-1}, s_k] of cumulative weights containing u.
int pick_interval(const ConvexDecomposition& d, double rho, double u) {
  double acc = 0.0;
  for (int k = 0; k < d.n; ++k) {
    acc += d.weights[k](rho);
    if (u <= acc) return k;
  }
  return d.n - 1;
}

void need_nonneg(double a, double b) {
  if (!(a >= 0.0) || !(b >= 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw DomainError("samplers", "convolution arguments must be finite and non-negative");
  }
}

}  // namespace

SampleBatch sample_base(const MixtureMeasure& law, std::size_t n, Rng& rng) {
  law.validate();
  SampleBatch b;
  b.seed = rng.seed();
  b.values.reserve(n);
  for (std::size_t i = 0; i < n; ++i) b.values.push_back(sample(law, rng));
  return b;
}

double sample_order_stat(const MixtureMeasure& base, int k, int n, Rng& rng) {
  if (n < 1 || k < 1 || k > n) throw DomainError("samplers", "order statistic index out of range");
  std::vector<double> v(static_cast<std::size_t>(n));
  for (double& x : v) x = sample(base, rng);
  std::nth_element(v.begin(), v.begin() + (k - 1), v.end());
  return v[static_cast<std::size_t>(k - 1)];
}

double rho_of(double theta1, double theta2) {
  const double M = std::max(theta1, theta2);
  return M == 0.0 ? 0.0 : std::min(theta1, theta2) / M;
}

double sample_kendall_conv(double theta1, double theta2, double alpha, Rng& rng) {
  need_nonneg(theta1, theta2);
  if (!(alpha > 0.0)) throw DomainError("samplers", "alpha must be positive");
  const double M = std::max(theta1, theta2);
  if (M == 0.0) return 0.0;
  const double w = std::pow(rho_of(theta1, theta2), alpha);
  const double u = rng.uniform();
  if (u <= w) return M * pareto_draw(2.0 * alpha, rng);
  return M;
}

double sample_kendall_alt(double theta1, double theta2, double alpha, Rng& rng) {
  need_nonneg(theta1, theta2);
  if (!(alpha > 0.0)) throw DomainError("samplers", "alpha must be positive");
  const double z1 = pow_draw(alpha, rng);
  const double z2 = pow_draw(alpha, rng);
  const double q1 = theta1 == 0.0 ? 0.0 : theta1 / z1;
  const double q2 = theta2 == 0.0 ? 0.0 : theta2 / z2;
  return std::max(std::max(theta1, theta2), std::min(q1, q2));
}

double sample_convex_comb(const FamilySpec& fam, double theta1, double theta2, Rng& rng) {
  need_nonneg(theta1, theta2);
  const ConvexDecomposition d = convex_decomposition(fam);
  const double M = std::max(theta1, theta2);
  if (M == 0.0) return 0.0;
  const int k = pick_interval(d, rho_of(theta1, theta2), rng.uniform());
  if (!d.components[k]) {
    throw UnsupportedFamily("samplers", "component measure of the decomposition is unavailable");
  }
  return M * sample(*d.components[k], rng);
}

double sample_ku_conv(double theta1, double theta2, double alpha, int n, Rng& rng) {
  need_nonneg(theta1, theta2);
  if (!(alpha > 0.0) || n < 1) throw DomainError("samplers", "ku needs alpha > 0 and n >= 1");
  const double M = std::max(theta1, theta2);
  if (M == 0.0) return 0.0;
  const double rho = rho_of(theta1, theta2);
  // k = #{W_i < rho} places rho in (W_{k:n}, W_{k+1:n}].
  int k = 0;
  for (int i = 0; i < n; ++i) {
    if (pow_draw(alpha, rng) < rho) ++k;
  }
  if (k == 0) return M;
  std::vector<double> q(static_cast<std::size_t>(n + k));
  for (double& v : q) v = pareto_draw(alpha, rng);
  std::nth_element(q.begin(), q.begin() + (k - 1), q.end());
  return M * q[static_cast<std::size_t>(k - 1)];
}

double sample_kingman_conv(double theta1, double theta2, double s, Rng& rng) {
  need_nonneg(theta1, theta2);
  if (!(s > -0.5)) throw DomainError("samplers", "Kingman index must exceed -1/2");
  if (theta1 == 0.0 || theta2 == 0.0) return std::max(theta1, theta2);
  const double v = 2.0 * rng.beta(s + 0.5, s + 0.5) - 1.0;
  return std::sqrt(std::max(0.0, theta1 * theta1 + theta2 * theta2 + 2.0 * theta1 * theta2 * v));
}

double sample_family(const FamilySpec& fam, double theta1, double theta2, Rng& rng) {
  need_nonneg(theta1, theta2);
  switch (fam.family) {
    case Family::classical:
      return theta1 + theta2;
    case Family::symmetric:
      return rng.uniform() <= 0.5 ? theta1 + theta2 : std::abs(theta1 - theta2);
    case Family::stable: {
      const double M = std::max(theta1, theta2);
      const double v =
          std::pow(std::pow(theta1, fam.alpha) + std::pow(theta2, fam.alpha), 1.0 / fam.alpha);
      return std::max(M, v);
    }
    case Family::kendall:
      return sample_kendall_conv(theta1, theta2, fam.alpha, rng);
    case Family::max:
      return std::max(theta1, theta2);
    case Family::ku:
      return sample_ku_conv(theta1, theta2, fam.alpha, fam.n, rng);
    case Family::diamond:
      return sample_convex_comb(fam, theta1, theta2, rng);
    case Family::kingman:
      return sample_kingman_conv(theta1, theta2, fam.s, rng);
    case Family::kucharczak:
      return sample(delta_conv(fam, theta1, theta2), rng);
    case Family::kendall_type:
      break;
  }
  throw UnsupportedFamily("samplers", "no sampler for the Kendall-type convolution");
}

double sample_reciprocal_conv(const FamilySpec& fam, double theta1, double theta2, Rng& rng) {
  need_nonneg(theta1, theta2);
  if (theta1 == 0.0 || theta2 == 0.0) {
    throw DomainError("samplers", "reciprocal representation needs positive arguments");
  }
  const ConvexDecomposition d = convex_decomposition(fam);
  const double r1 = 1.0 / theta1;
  const double r2 = 1.0 / theta2;
  const double m = std::min(r1, r2);
  // ρ is invariant under reciprocals; the original pair avoids a rounding step.
  const int k = pick_interval(d, rho_of(theta1, theta2), rng.uniform());
  if (!d.components[k]) {
    throw UnsupportedFamily("samplers", "component measure of the decomposition is unavailable");
  }
  return m / sample(*d.components[k], rng);
}

ConvSampler::ConvSampler(const FamilySpec& fam, double x, double y) : fam_(fam), x_(x), y_(y) {
  fam.validate();
  need_nonneg(x, y);
  if (fam.family == Family::kendall_type) {
    throw UnsupportedFamily("samplers", "no sampler for the Kendall-type convolution");
  }
  if (fam.family == Family::kucharczak) {
    table_ = tabulate(delta_conv(fam, x, y), default_quadrature());
  }
}

double ConvSampler::operator()(Rng& rng) const {
  if (table_) return sample(*table_, rng);
  return sample_family(fam_, x_, y_, rng);
}

}  // namespace genconv

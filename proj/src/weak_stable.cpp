#include "genconv/weak_stable.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <numbers>
#include <vector>

#include "genconv/error.hpp"

namespace genconv {
namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;
constexpr int kMaxTerms = 80;

// ∫_T^∞ t^gamma e^{i omega t} dt by repeated integration by parts.
cplx tail_exp(double gamma, double omega, double T) {
  if (omega == 0.0) return {-std::pow(T, gamma + 1.0) / (gamma + 1.0), 0.0};
  if (omega < 0.0) return std::conj(tail_exp(gamma, -omega, T));
  const cplx io(0.0, 1.0 / omega);
  cplx factor = io;
  double falling = 1.0;
  cplx sum = 0.0;
  double prev = INFINITY;
  for (int j = 0; j < kMaxTerms; ++j) {
    const cplx term = factor * falling * std::pow(T, gamma - j);
    if (std::abs(term) > prev) break;
    sum += term;
    prev = std::abs(term);
    if (prev < 1e-18 * std::abs(sum)) break;
    falling *= gamma - j;
    factor *= io;
  }
  return sum * std::exp(cplx(0.0, omega * T));
}

// Falling-factorial coefficients i^{k+1} (beta)_k of the expansion
// ∫_t^∞ x^beta e^{ix} dx = e^{it} Σ_k c_k t^{beta-k}.
std::vector<cplx> asymptotic_coefficients(double beta, double T) {
  std::vector<cplx> c;
  cplx ik(0.0, 1.0);
  double falling = 1.0;
  double prev = INFINITY;
  for (int k = 0; k < kMaxTerms; ++k) {
    const double mag = std::abs(falling) * std::pow(T, -k);
    if (mag > prev || (k > 0 && mag < 1e-18)) break;
    c.push_back(ik * falling);
    prev = mag;
    falling *= beta - k;
    ik *= cplx(0.0, 1.0);
  }
  return c;
}

}  // namespace

WeakStableDensity::WeakStableDensity(double alpha, double constant)
    : alpha_(alpha), c_(constant), c_inf_(std::tgamma(alpha) * std::sin(kPi * alpha / 2.0)) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw DomainError("kernels", "weakly stable density needs alpha in (0, 1]");
  }
}

WeakStableDensity::WeakStableDensity(double alpha, const QuadratureConfig& cfg)
    : WeakStableDensity(alpha, 1.0) {
  c_ = 1.0 / (2.0 * half_mass(cfg));
}

double WeakStableDensity::inner(double t) const {
  t = std::abs(t);
  if (t == 0.0) return 0.0;
  if (t > asymptotic_start()) {
    const double beta = alpha_ - 1.0;
    cplx s = 0.0;
    const auto coeffs = asymptotic_coefficients(beta, t);
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      s += coeffs[k] * std::pow(t, beta - static_cast<double>(k));
    }
    return c_inf_ - (s * std::exp(cplx(0.0, t))).imag();
  }
  // w = x^alpha removes the x^{alpha-1} endpoint singularity.
  const double a = alpha_;
  const Integrand f = [a](double w) { return std::sin(std::pow(w, 1.0 / a)) / a; };
  std::vector<double> bps;
  for (double k = 1.0; k * kPi < t; k += 1.0) bps.push_back(std::pow(k * kPi, a));
  QuadratureConfig cfg;
  cfg.abs_tol = 1e-14;
  cfg.rel_tol = 1e-13;
  return quad_integrate(f, 0.0, std::pow(t, a), cfg, bps);
}

double WeakStableDensity::operator()(double t) const {
  t = std::abs(t);
  if (t == 0.0) throw DomainError("kernels", "weakly stable density is evaluated at t != 0");
  return c_ * std::pow(t, -alpha_ - 1.0) * inner(t);
}

double WeakStableDensity::tail_cosine(double omega, double T) const {
  if (T < asymptotic_start()) throw DomainError("kernels", "tail start below asymptotic regime");
  const double beta = alpha_ - 1.0;
  auto freq = [](double f) { return std::abs(f) < 1e-3 ? 0.0 : f; };
  double total = c_inf_ * tail_exp(-alpha_ - 1.0, freq(omega), T).real();
  const auto coeffs = asymptotic_coefficients(beta, T);
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    const double g = beta - static_cast<double>(k) - alpha_ - 1.0;
    const cplx e = tail_exp(g, freq(1.0 + omega), T) + tail_exp(g, freq(1.0 - omega), T);
    total -= 0.5 * (coeffs[k] * e).imag();
  }
  return total;
}

double WeakStableDensity::half_mass(const QuadratureConfig& cfg) const {
  const double T = asymptotic_start();
  const double a = alpha_;
  const Integrand f = [this, a](double t) {
    if (t == 0.0) return 1.0 / (a + 1.0);
    return std::pow(t, -a - 1.0) * inner(t);
  };
  std::vector<double> bps;
  for (double k = 1.0; k * kPi < T; k += 1.0) bps.push_back(k * kPi);
  return quad_integrate(f, 0.0, T, cfg, bps) + tail_cosine(0.0, T);
}

double WeakStableDensity::cosine_transform(double x, const QuadratureConfig& cfg) const {
  x = std::abs(x);
  double T = 64.0 * kPi;
  for (double f : {x, 1.0 + x, std::abs(1.0 - x)}) {
    if (f >= 1e-3) T = std::max(T, 40.0 / f);
  }
  T = std::min(T, 4e4);
  const double a = alpha_;
  const Integrand f = [this, a, x](double t) {
    if (t == 0.0) return 1.0 / (a + 1.0);
    return std::pow(t, -a - 1.0) * inner(t) * std::cos(x * t);
  };
  const double step = kPi / std::max(1.0, x);
  std::vector<double> bps;
  for (double b = step; b < T; b += step) bps.push_back(b);
  return 2.0 * c_ * (quad_integrate(f, 0.0, T, cfg, bps) + tail_cosine(x, T));
}

double WeakStableDensity::folded_cdf(double t, const QuadratureConfig& cfg) const {
  t = std::abs(t);
  if (t == 0.0) return 0.0;
  const double a = alpha_;
  const Integrand f = [this, a](double s) {
    if (s == 0.0) return 1.0 / (a + 1.0);
    return std::pow(s, -a - 1.0) * inner(s);
  };
  const double T = asymptotic_start();
  if (t <= T) {
    std::vector<double> bps;
    for (double k = 1.0; k * kPi < t; k += 1.0) bps.push_back(k * kPi);
    return 2.0 * c_ * quad_integrate(f, 0.0, t, cfg, bps);
  }
  return 1.0 - 2.0 * c_ * tail_cosine(0.0, t);
}

double weak_stable_density_g(double alpha, double t) {
  static std::mutex mu;
  static std::map<double, double> constants;
  double c = 0.0;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = constants.find(alpha);
    if (it == constants.end()) {
      it = constants.emplace(alpha, WeakStableDensity(alpha).constant()).first;
    }
    c = it->second;
  }
  return WeakStableDensity(alpha, c)(t);
}

}  // namespace genconv

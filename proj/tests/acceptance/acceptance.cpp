// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <cfloat>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/binomial.hpp>

#include "genconv/families.hpp"
#include "genconv/kernels.hpp"
#include "genconv/samplers.hpp"
#include "genconv/stats.hpp"
#include "genconv/weak_stable.hpp"
#include "genconv/williamson.hpp"

using namespace genconv;

namespace {

constexpr std::size_t kN = 100000;
constexpr double kSig = 0.01;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

std::vector<double> draw(std::size_t n, const std::function<double()>& f) {
  std::vector<double> v(n);
  for (double& x : v) x = f();
  return v;
}

double base_draw(const MixtureMeasure& m, Rng& rng) { return sample_base(m, 1, rng).values[0]; }

Outcome kendall_exact() {
  Outcome o;
  std::uint64_t seed = 100;
  for (auto [t1, t2, alpha] : {std::tuple{1.0, 1.0, 1.0}, {0.5, 1.0, 1.0}, {0.3, 0.7, 2.0}}) {
    const auto start = std::chrono::steady_clock::now();
    Rng rng(seed++);
    const CdfPair p = kendall_convolve(kendall_pair_of(MixtureMeasure::delta(t1), alpha),
                                       kendall_pair_of(MixtureMeasure::delta(t2), alpha));
    const auto v = draw(kN, [&] { return sample_kendall_conv(t1, t2, alpha, rng); });
    const KsReport r = ks_one_sample(v, p.F, kSig, p.F_left);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.require(r.pass, fmt("KS %.5f >= %.5f", r.statistic, r.critical_value));
    o.require(secs < 10.0, fmt("case took %.1f s", secs));
  }
  return o;
}

Outcome pareto_square() {
  Outcome o;
  double worst = 0.0;
  for (double alpha : {0.5, 1.0, 2.0}) {
    const CdfPair one = kendall_pair_of(MixtureMeasure::delta(1.0), alpha);
    const CdfPair pi = kendall_convolve(one, one);
    for (int i = 0; i < 200; ++i) {
      const double t = 1.0 + 49.0 * i / 199.0;
      worst = std::max(worst, std::abs(pi.F(t) - (1.0 - std::pow(t, -2.0 * alpha))));
    }
  }
  o.require(worst <= 1e-9, fmt("max error %.3g", worst));
  return o;
}

Outcome williamson_round_trip() {
  Outcome o;
  double worst = 0.0;
  const auto check = [&](const MixtureMeasure& m, double alpha, double breakpoint) {
    const Evaluator G = [&](double t) { return williamson(m, alpha, 1.0 / t); };
    int used = 0;
    for (int i = 0; used < 200; ++i) {
      const double t = 0.0137 + 0.0291 * i;
      if (std::abs(t - breakpoint) < 1e-3) continue;
      worst = std::max(worst, std::abs(williamson_invert(G, alpha, t) - cdf(m, t)));
      ++used;
    }
  };
  for (double alpha : {0.5, 1.0, 2.0}) {
    for (double a : {0.5, 1.0, 3.0}) check(MixtureMeasure::delta(a), alpha, a);
    check(laws::pow_law(alpha), alpha, 1.0);
  }
  o.require(worst <= 1e-6, fmt("max error %.3g", worst));
  return o;
}

Outcome product_formula() {
  Outcome o;
  for (const auto& k : {KernelSpec::kendall(1.0), KernelSpec::stable(2.0), KernelSpec::classical(),
                        KernelSpec::symmetric(), KernelSpec::max(), KernelSpec::ku(1.0, 2)}) {
    for (auto [x, y] : {std::pair{1.0, 1.0}, {0.5, 1.0}}) {
      const auto grid = default_product_grid(x, y);
      const double r = product_formula_residual(k, x, y, grid).max_residual;
      const std::string name = to_string(k.family);
      o.require(grid.size() == 50, name + " grid size");
      o.require(r < 1e-6, name + fmt(" residual %.3g", r));
      if (k.family == Family::max) o.require(r == 0.0, name + fmt(" residual %.3g not 0", r));
      // Stable: e^{-x²t²}e^{-y²t²} against e^{-(zt)²} agrees to rounding only.
      if (k.family == Family::stable) o.require(r <= 4.0 * DBL_EPSILON, name + fmt(" residual %.3g", r));
    }
  }
  return o;
}

Outcome order_statistics() {
  Outcome o;
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  std::uint64_t seed = 500;
  for (auto [alpha, k, n] : {std::tuple{1.0, 1, 1}, {1.0, 2, 3}, {2.0, 3, 3}}) {
    // f_{k,n}(s) = α k C(n+k, n) s^{-α(n+1)-1} (1 - s^{-α})^{k-1} on s > 1.
    const auto pdf = [&](double s) {
      return alpha * k * boost::math::binomial_coefficient<double>(n + k, n) * std::pow(s, -alpha * (n + 1) - 1.0) *
             std::pow(1.0 - std::pow(s, -alpha), k - 1);
    };
    const MixtureMeasure law = laws::ku_orderstat(alpha, k, n);
    double worst = 0.0;
    for (double s = 1.05; s < 40.0; s *= 1.15) {
      worst = std::max(worst, std::abs(GK::integrate(pdf, 1.0, s, 15, 1e-13) - cdf(law, s)));
    }
    o.require(worst < 1e-9, fmt("CDF vs quadrature %.3g", worst));
    Rng rng(seed++);
    const auto v = draw(kN, [&] { return sample_order_stat(laws::pareto(alpha), k, n + k, rng); });
    const KsReport r = ks_one_sample(v, [&](double t) { return cdf(law, t); }, kSig);
    o.require(r.pass, fmt("KS %.5f >= %.5f", r.statistic, r.critical_value));
  }
  return o;
}

Outcome max_representation() {
  Outcome o;
  std::uint64_t seed = 600;
  const MixtureMeasure l1 = laws::pareto(3.0), l2 = laws::pow_law(2.0);
  for (const auto& f : {FamilySpec::classical(), FamilySpec::stable(2.0), FamilySpec::kendall(1.0), FamilySpec::ku(1.0, 2)}) {
    Rng rng(seed++);
    const MixtureMeasure theta = max_weak_rep_mixing_law(f);
    const auto lhs = draw(kN, [&] {
      const double a = base_draw(theta, rng) * base_draw(l1, rng);
      return std::max(a, base_draw(theta, rng) * base_draw(l2, rng));
    });
    const auto rhs = draw(kN, [&] {
      const double x1 = base_draw(l1, rng), x2 = base_draw(l2, rng);
      return base_draw(theta, rng) * sample_family(f, x1, x2, rng);
    });
    const KsReport r = ks_two_sample(lhs, rhs, kSig);
    o.require(r.pass, to_string(f.family) + fmt(" KS %.5f >= %.5f", r.statistic, r.critical_value));
  }
  return o;
}

Outcome lack_of_memory() {
  Outcome o;
  const double tol = 4.0 / std::sqrt(static_cast<double>(kN));
  std::uint64_t seed = 700;
  double worst = 0.0;
  for (const auto& f : {FamilySpec::classical(), FamilySpec::stable(2.0), FamilySpec::kendall(1.0), FamilySpec::max(),
                        FamilySpec::kucharczak(0.5, 1.0), FamilySpec::ku(1.0, 2), FamilySpec::diamond(0.5, 1.0),
                        FamilySpec::diamond(0.2, 2.0)}) {
    for (double x : {0.3, 0.7, 1.5}) {
      for (double y : {0.3, 0.7, 1.5}) {
        const double r = lom_residual(f, x, y, kN, seed++);
        worst = std::max(worst, r);
        o.require(r < tol, to_string(f.family) + fmt(" residual %.4f at x = %g", r, x));
      }
    }
  }
  for (double x : {0.3, 0.7, 1.5}) {
    for (double y : {0.3, 0.7, 1.5}) {
      const double r = std::abs(std::exp(-(x + y)) - std::exp(-x) * std::exp(-y));
      o.require(r <= 4.0 * DBL_EPSILON, fmt("classical analytic %.3g", r));
    }
  }
  if (o.pass) o.detail = fmt("max residual %.4f < %.4f", worst, tol);
  return o;
}

Outcome weak_stability() {
  Outcome o;
  for (double alpha : {0.5, 1.0}) {
    const WeakStableDensity g(alpha);
    const double m = 2.0 * g.constant() * g.half_mass();
    o.require(std::abs(m - 1.0) <= 1e-6, fmt("alpha %g mass %.9f", alpha, m));
    for (int i = 0; i <= 8; ++i) {
      const double x = 0.25 * i;
      const double err = std::abs(cosine_transform(g, x) - std::max(0.0, 1.0 - std::pow(x, alpha)));
      o.require(err <= 1e-3, fmt("alpha %g transform error %.3g", alpha, err));
    }
  }
  for (double alpha : {0.25, 0.5, 1.0, 1.25, 2.0}) {
    const auto k = KernelSpec::kendall(alpha);
    o.require(polya_check(k, default_polya_grid(k)).ok == (alpha <= 1.0), fmt("polya at alpha %g", alpha));
  }
  return o;
}

Outcome normalizations() {
  Outcome o;
  for (double p : {0.2, 0.5, 0.9}) {
    for (double alpha : {0.5, 1.0, 2.0}) {
      const double m = make_component(DensityId::diamond_tail, {p, alpha}).mass({});
      o.require(std::abs(m - 1.0) <= 1e-9, fmt("diamond tail mass %.12f at p = %g", m, p));
    }
  }
  const double km = make_component(DensityId::kucharczak, {0.5, 1.0, 1.0, 1.0}).mass({});
  o.require(std::abs(km - 1.0) <= 1e-6, fmt("Kucharczak mass %.9f", km));
  for (double c : {1.0, 1.0 / 3.0, 0.0, 0.5, 5.0 / 12.0}) {
    const ConvexDecomposition d = convex_decomposition(FamilySpec::kendall_type(c, 1.0, 2.0));
    for (int i = 0; i <= 100; ++i) {
      const double x = i / 100.0;
      double s = 0.0;
      for (const auto& w : d.weights) s += w(x);
      o.require(std::abs(s - 1.0) <= 1e-12, fmt("kendall_type weights at c = %g sum to %.15f", c, s));
    }
  }
  return o;
}

Outcome axioms() {
  Outcome o;
  const std::vector<FamilySpec> all = {
      FamilySpec::classical(),  FamilySpec::symmetric(),         FamilySpec::stable(2.0),
      FamilySpec::stable(0.7),  FamilySpec::kendall(1.0),        FamilySpec::max(),
      FamilySpec::kucharczak(0.5, 1.0), FamilySpec::ku(1.0, 2),  FamilySpec::diamond(0.5, 1.0),
      FamilySpec::kingman(0.5)};
  for (const auto& f : all) {
    const std::string name = to_string(f.family);
    for (auto [x, y] : {std::pair{0.5, 1.0}, {1.0, 1.0}, {0.3, 2.0}}) {
      const MixtureMeasure m = delta_conv(f, x, y);
      o.require(delta_conv(f, y, x) == m, name + " commutativity");
      for (double a : {0.5, 3.0}) {
        const MixtureMeasure lhs = delta_conv(f, a * x, a * y), rhs = dilate(m, a);
        double worst = 0.0;
        for (int i = 0; i < 40; ++i) {
          const double t = a * (x + y) * 3.0 * (i + 0.5) / 40.0;
          worst = std::max(worst, std::abs(cdf(lhs, t) - cdf(rhs, t)));
        }
        o.require(worst <= 1e-9, name + fmt(" homogeneity %.3g", worst));
      }
    }
    for (double x : {0.0, 0.4, 2.0}) {
      o.require(delta_conv(f, x, 0.0) == MixtureMeasure::delta(x), name + " neutral element");
      o.require(delta_conv(f, 0.0, x) == MixtureMeasure::delta(x), name + " neutral element");
    }
  }
  std::uint64_t seed = 1000;
  for (const auto& f : {FamilySpec::kendall(1.0), FamilySpec::stable(2.0)}) {
    Rng rng(seed++);
    const auto x1 = [&] { return base_draw(laws::pareto(3.0), rng); };
    const auto x2 = [&] { return base_draw(laws::pow_law(2.0), rng); };
    const auto x3 = [&] { return rng.exponential(); };
    const auto left = draw(kN, [&] {
      const double a = x1(), b = x2();
      return sample_family(f, sample_family(f, a, b, rng), x3(), rng);
    });
    const auto right = draw(kN, [&] {
      const double a = x1(), b = x2();
      return sample_family(f, a, sample_family(f, b, x3(), rng), rng);
    });
    const KsReport r = ks_two_sample(left, right, kSig);
    o.require(r.pass, to_string(f.family) + fmt(" associativity KS %.5f >= %.5f", r.statistic, r.critical_value));
  }
  return o;
}

Outcome monotonicity() {
  Outcome o;
  const std::size_t n = 10000;
  const double w = monotonicity_witness(FamilySpec::kingman(0.5), 1.0, 1.0, n, 1100);
  const BinomialCheck b = binomial_check(static_cast<std::size_t>(std::lround(w * n)), n, 0.25);
  o.require(b.pass, fmt("kingman fraction %.4f, z = %.2f", w, b.z));
  std::uint64_t seed = 1101;
  for (const auto& f : {FamilySpec::classical(), FamilySpec::stable(2.0), FamilySpec::kendall(1.0), FamilySpec::max(),
                        FamilySpec::kucharczak(0.5, 1.0), FamilySpec::ku(1.0, 2), FamilySpec::diamond(0.5, 1.0)}) {
    const double v = monotonicity_witness(f, 1.0, 1.0, n, seed++);
    o.require(v == 0.0, to_string(f.family) + fmt(" violations %.4f", v));
  }
  if (o.pass) o.detail = fmt("kingman fraction %.4f, z = %.2f", w, b.z);
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"Kendall exact algebra", kendall_exact},
      {"delta_1 Kendall-convolved with itself is pareto(2 alpha)", pareto_square},
      {"Williamson round trip", williamson_round_trip},
      {"product formula", product_formula},
      {"order-statistic identity", order_statistics},
      {"max-representation identity", max_representation},
      {"lack of memory", lack_of_memory},
      {"weak stability of the Kendall kernel", weak_stability},
      {"normalizations", normalizations},
      {"convolution axioms", axioms},
      {"monotonicity witnesses", monotonicity},
  };
  int failed = 0;
  int index = 1;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("threw: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %2d %s: %s (%.1f s)%s%s\n", index++, o.pass ? "PASS" : "FAIL", c.name, secs,
                o.detail.empty() ? "" : " - ", o.detail.c_str());
    failed += !o.pass;
  }
  std::printf("%d of %d criteria passed\n", index - 1 - failed, index - 1);
  return failed == 0 ? 0 : 1;
}

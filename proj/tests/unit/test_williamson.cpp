#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "genconv/error.hpp"
#include "genconv/samplers.hpp"
#include "genconv/williamson.hpp"

using namespace genconv;

namespace {

std::vector<double> grid(double lo, double hi, int n) {
  std::vector<double> g;
  for (int i = 0; i < n; ++i) g.push_back(lo + (hi - lo) * (i + 0.5) / n);
  return g;
}

}  // namespace

TEST_CASE("transform of point masses and the pow law") {
  for (double a : {0.0, 0.5, 2.0}) {
    for (double t : {0.0, 0.2, 0.5, 1.0, 3.0}) {
      CHECK(williamson(MixtureMeasure::delta(a), 1.5, t) ==
            doctest::Approx(std::max(0.0, 1.0 - std::pow(t * a, 1.5))));
    }
  }
  const MixtureMeasure m = mix({{0.5, laws::pareto(2.0)}, {0.5, laws::weibull_kernel(0.5, 2.0)}});
  CHECK(williamson(m, 0.8, 0.0) == 1.0);
  boost::math::quadrature::tanh_sinh<double> ts;
  for (double alpha : {0.5, 2.0}) {
    for (double t : {0.3, 1.0, 2.5}) {
      const double closed = t <= 1.0 ? 1.0 - std::pow(t, alpha) / 2.0 : std::pow(t, -alpha) / 2.0;
      const double ref = ts.integrate(
          [&](double s) { return (1.0 - std::pow(t * s, alpha)) * alpha * std::pow(s, alpha - 1.0); }, 0.0,
          std::min(1.0, 1.0 / t));
      CHECK(ref == doctest::Approx(closed).epsilon(1e-10));
      CHECK(williamson(laws::pow_law(alpha), alpha, t) == doctest::Approx(closed).epsilon(1e-9));
    }
  }
}

TEST_CASE("inversion") {
  const double alpha = 1.7;
  const Evaluator G1 = [alpha](double t) { return t <= 1.0 ? 0.0 : 1.0 - std::pow(t, -alpha); };
  for (double t : {1.1, 2.0, 9.0}) CHECK(williamson_invert(G1, alpha, t) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(williamson_invert([](double) { return 1.0; }, alpha, 0.4) == 1.0);
  for (double a : {0.5, 2.0}) {
    const Evaluator G = [a](double t) { return t >= 1.0 ? 1.0 - std::pow(t, -a) / 2.0 : std::pow(t, a) / 2.0; };
    for (double t : grid(0.0, 1.0, 40)) CHECK(std::abs(williamson_invert(G, a, t) - std::pow(t, a)) < 1e-6);
  }
}

TEST_CASE("round trip through the transform at continuity points") {
  for (double a : {0.5, 1.0, 3.0}) {
    for (double alpha : {0.5, 1.0, 2.0}) {
      const MixtureMeasure d = MixtureMeasure::delta(a);
      const Evaluator G = [&](double t) { return williamson(d, alpha, 1.0 / t); };
      for (double t : grid(0.01, 6.0, 60)) {
        if (std::abs(t - a) < 1e-3) continue;
        CHECK(std::abs(williamson_invert(G, alpha, t) - (t >= a ? 1.0 : 0.0)) < 1e-6);
      }
    }
  }
}

TEST_CASE("pairs of closed-form measures") {
  const CdfPair p = kendall_pair_of(MixtureMeasure::delta(2.0), 1.0);
  CHECK(p.F(1.999) == 0.0);
  CHECK(p.F(2.0) == 1.0);
  CHECK(p.F_left(2.0) == 0.0);
  CHECK(p.G(4.0) == doctest::Approx(0.5));
  CHECK(p.G(1.0) == 0.0);
  CHECK_THROWS_AS(williamson_invert(p, 2.0), DiscontinuityError);
  CHECK(williamson_invert(p, 3.0) == doctest::Approx(1.0).epsilon(1e-9));

  const CdfPair zero = kendall_pair_of(MixtureMeasure::delta(0.0), 1.0);
  for (double t : {0.1, 1.0, 5.0}) {
    CHECK(zero.F(t) == 1.0);
    CHECK(zero.G(t) == 1.0);
  }

  for (double alpha : {0.5, 1.0, 2.0}) {
    const MixtureMeasure pi = laws::pareto(2.0 * alpha);
    const CdfPair pp = kendall_pair_of(pi, alpha);
    for (double t : grid(1.0, 30.0, 40)) {
      const double closed = std::pow(1.0 - std::pow(t, -alpha), 2);
      CHECK(pp.G(t) == doctest::Approx(closed).epsilon(1e-9));
      CHECK(williamson_G_from_cdf([&](double x) { return cdf(pi, x); }, alpha, t, {1.0}) ==
            doctest::Approx(closed).epsilon(1e-9));
      CHECK(pp.G(t) <= pp.F(t));
      CHECK(std::abs(williamson_invert(pp, t) - pp.F(t)) < 1e-6);
    }
  }
}

TEST_CASE("convolution of point masses") {
  for (double alpha : {0.5, 1.0, 2.0}) {
    const CdfPair one = kendall_pair_of(MixtureMeasure::delta(1.0), alpha);
    const CdfPair pi = kendall_convolve(one, one);
    for (double t : grid(1.0, 50.0, 200)) {
      CHECK(std::abs(pi.F(t) - (1.0 - std::pow(t, -2.0 * alpha))) < 1e-12);
    }
  }
  for (auto [a, b, alpha] : {std::tuple{0.5, 1.0, 1.0}, {0.3, 0.7, 2.0}, {2.0, 1.5, 0.5}}) {
    const CdfPair r = kendall_convolve(kendall_pair_of(MixtureMeasure::delta(a), alpha),
                                       kendall_pair_of(MixtureMeasure::delta(b), alpha));
    const double hi = std::max(a, b);
    CHECK(r.F(hi * 0.999) == 0.0);
    CHECK(r.F_left(hi) == 0.0);
    for (double t : grid(hi, 20.0 * hi, 50)) {
      CHECK(r.F(t) == doctest::Approx(1.0 - std::pow(a * b, alpha) * std::pow(t, -2.0 * alpha)).epsilon(1e-12));
    }
  }
}

TEST_CASE("neutral element, associativity and monotone output") {
  const double alpha = 1.0;
  const CdfPair zero = kendall_pair_of(MixtureMeasure::delta(0.0), alpha);
  const CdfPair p1 = kendall_pair_of(mix({{0.3, MixtureMeasure::delta(0.7)}, {0.7, laws::pareto(3.0)}}), alpha);
  const CdfPair p2 = kendall_pair_of(laws::pow_law(2.0), alpha);
  const CdfPair p3 = kendall_pair_of(MixtureMeasure::delta(1.5), alpha);
  const CdfPair n = kendall_convolve(zero, p1);
  const CdfPair left = kendall_convolve(kendall_convolve(p1, p2), p3);
  const CdfPair right = kendall_convolve(p1, kendall_convolve(p2, p3));
  CHECK(left.depth == 2);
  double prev = 0.0;
  for (double t : grid(0.0, 12.0, 120)) {
    CHECK(n.F(t) == doctest::Approx(p1.F(t)).epsilon(1e-12));
    CHECK(std::abs(left.F(t) - right.F(t)) < 1e-9);
    CHECK(left.G(t) == doctest::Approx(p1.G(t) * p2.G(t) * p3.G(t)).epsilon(1e-12));
    CHECK(left.F(t) >= prev - 1e-12);
    prev = left.F(t);
  }
  CHECK_THROWS_AS(kendall_convolve(p1, kendall_pair_of(MixtureMeasure::delta(1.0), 2.0)), DomainError);
  CdfPair deep = p3;
  CHECK_THROWS_AS(
      [&] {
        for (int i = 0; i <= CdfPair::max_depth; ++i) deep = kendall_convolve(deep, p3);
      }(),
      DomainError);
}

TEST_CASE("transform of a sampled convolution matches the product of transforms") {
  const double alpha = 1.0;
  const MixtureMeasure m1 = mix({{0.5, MixtureMeasure::delta(1.0)}, {0.5, laws::pareto(2.0)}});
  const MixtureMeasure m2 = laws::pow_law(1.5);
  const CdfPair r = kendall_convolve(kendall_pair_of(m1, alpha), kendall_pair_of(m2, alpha));
  Rng rng(2024);
  const std::size_t n = 100000;
  const SampleBatch x1 = sample_base(m1, n, rng), x2 = sample_base(m2, n, rng);
  std::vector<double> z(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = sample_kendall_conv(x1.values[i], x2.values[i], alpha, rng);
  for (double t : {0.8, 1.5, 3.0, 8.0}) {
    double s = 0.0;
    for (double v : z) s += std::max(0.0, 1.0 - std::pow(v / t, alpha));
    // The summand lies in [0, 1], so its standard deviation is at most 1/2.
    CHECK(std::abs(s / n - r.G(t)) < 4.0 * 0.5 / std::sqrt(static_cast<double>(n)));
  }
}

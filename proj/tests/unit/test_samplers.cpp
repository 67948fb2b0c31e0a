#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "genconv/error.hpp"
#include "genconv/samplers.hpp"
#include "genconv/stats.hpp"
#include "genconv/williamson.hpp"

using namespace genconv;

namespace {

// About forty goodness-of-fit tests run in this file; each uses 1e-3 so that
// a chance failure of the file stays below 5%.
constexpr double kSig = 1e-3;
constexpr std::size_t kN = 100000;

std::vector<double> draw(std::size_t n, const std::function<double()>& f) {
  std::vector<double> v(n);
  for (double& x : v) x = f();
  return v;
}

bool ks_against(const std::vector<double>& v, const MixtureMeasure& law) {
  return ks_one_sample(
             v, [&](double t) { return cdf(law, t); }, kSig, [&](double t) { return cdf_left(law, t); })
      .pass;
}

}  // namespace

TEST_CASE("base laws") {
  Rng rng(1);
  for (const MixtureMeasure& law : {laws::pareto(2.5), laws::pow_law(0.6), laws::frechet_like(1.2),
                                    laws::weibull_kernel(0.4, 2.0), laws::exponential(),
                                    mix({{0.3, MixtureMeasure::delta(0.5)}, {0.7, laws::pareto(1.0)}})}) {
    const SampleBatch b = sample_base(law, kN, rng);
    CHECK(b.values.size() == kN);
    CHECK(ks_one_sample(b, law, kSig).pass);
    for (double v : b.values) REQUIRE(v >= 0.0);
  }
  const SampleBatch lom = sample_base(MixtureMeasure::of(make_component(DensityId::ku_lom, {1.5, 3.0})), kN, rng);
  CHECK(ks_one_sample(
            lom.values, [](double t) { return 1.0 - std::pow(1.0 - std::pow(std::min(t, 1.0), 1.5), 3); }, kSig)
            .pass);
}

TEST_CASE("order statistics") {
  Rng rng(2);
  CHECK_THROWS_AS(sample_order_stat(laws::pareto(1.0), 0, 3, rng), DomainError);
  CHECK_THROWS_AS(sample_order_stat(laws::pareto(1.0), 4, 3, rng), DomainError);
  Rng a(9), b(9);
  CHECK(sample_order_stat(laws::pow_law(2.0), 1, 1, a) == sample_base(laws::pow_law(2.0), 1, b).values[0]);
  for (auto [alpha, n] : {std::pair{1.0, 2}, {0.5, 4}}) {
    const auto v = draw(kN, [&] { return sample_order_stat(laws::pareto(alpha), 1, n + 1, rng); });
    CHECK(ks_against(v, laws::pareto(alpha * (n + 1))));
  }
  const auto v = draw(kN, [&] { return sample_order_stat(laws::pareto(1.0), 2, 5, rng); });
  CHECK(ks_against(v, laws::ku_orderstat(1.0, 2, 3)));
}

TEST_CASE("kendall representations") {
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    CHECK(sample_kendall_conv(1.7, 0.0, 2.0, rng) == 1.7);
    CHECK(sample_kendall_alt(1.7, 0.0, 2.0, rng) == 1.7);
    CHECK(sample_kendall_conv(0.0, 0.0, 2.0, rng) == 0.0);
  }
  for (double alpha : {0.5, 1.0, 2.0}) {
    CHECK(ks_against(draw(kN, [&] { return sample_kendall_conv(1.0, 1.0, alpha, rng); }), laws::pareto(2 * alpha)));
    CHECK(ks_against(draw(kN, [&] { return sample_kendall_alt(1.0, 1.0, alpha, rng); }), laws::pareto(2 * alpha)));
  }
  const CdfPair exact = kendall_convolve(kendall_pair_of(MixtureMeasure::delta(0.5), 1.0),
                                         kendall_pair_of(MixtureMeasure::delta(1.0), 1.0));
  const auto conv = draw(kN, [&] { return sample_kendall_conv(0.5, 1.0, 1.0, rng); });
  const KsReport r = ks_one_sample(conv, exact.F, 0.01, exact.F_left);
  CHECK(r.statistic < 2.0 * 1.63 / std::sqrt(static_cast<double>(kN)));
  const auto alt = draw(kN, [&] { return sample_kendall_alt(0.5, 1.0, 1.0, rng); });
  CHECK(ks_two_sample(conv, alt, kSig).pass);
  CHECK_THROWS_AS(sample_kendall_conv(1.0, 1.0, 0.0, rng), DomainError);
}

TEST_CASE("convex combination representation") {
  Rng rng(4);
  const auto comb = draw(kN, [&] { return sample_convex_comb(FamilySpec::kendall(1.0), 0.5, 1.0, rng); });
  const auto conv = draw(kN, [&] { return sample_kendall_conv(0.5, 1.0, 1.0, rng); });
  CHECK(ks_two_sample(comb, conv, kSig).pass);
  for (int i = 0; i < 100; ++i) CHECK(sample_convex_comb(FamilySpec::max(), 0.3, 0.8, rng) == 0.8);

  const double p = 0.3;
  std::size_t atoms = 0;
  for (int i = 0; i < 10000; ++i) atoms += sample_convex_comb(FamilySpec::diamond(p, 1.5), 1.0, 1.0, rng) == 1.0;
  CHECK(binomial_check(atoms, 10000, 1.0 - p).pass);

  for (const auto& f : {FamilySpec::ku(1.0, 3), FamilySpec::diamond(0.5, 2.0), FamilySpec::diamond(0.2, 1.0)}) {
    CAPTURE(to_string(f.family));
    const auto v = draw(kN, [&] { return sample_convex_comb(f, 0.6, 1.5, rng); });
    CHECK(ks_against(v, delta_conv(f, 0.6, 1.5)));
  }
  CHECK_THROWS_AS(sample_convex_comb(FamilySpec::kendall_type(1.0, 1.0, 2.0), 0.5, 1.0, rng), UnsupportedFamily);
  CHECK_THROWS_AS(sample_convex_comb(FamilySpec::classical(), 0.5, 1.0, rng), UnsupportedFamily);
}

TEST_CASE("order-statistic representation of the ku rule") {
  Rng rng(5);
  for (int i = 0; i < 100; ++i) CHECK(sample_ku_conv(2.0, 0.0, 1.0, 3, rng) == 2.0);
  const auto ku = draw(kN, [&] { return sample_ku_conv(0.5, 1.0, 1.0, 1, rng); });
  const auto kd = draw(kN, [&] { return sample_kendall_conv(0.5, 1.0, 1.0, rng); });
  CHECK(ks_two_sample(ku, kd, kSig).pass);

  // P{k = 0} = (1 - x^α)^n: only that branch returns the larger point itself.
  const double x = 0.6, alpha = 1.5;
  const int n = 3;
  std::size_t at_max = 0;
  for (int i = 0; i < 10000; ++i) at_max += sample_ku_conv(x, 1.0, alpha, n, rng) == 1.0;
  CHECK(binomial_check(at_max, 10000, std::pow(1.0 - std::pow(x, alpha), n)).pass);
  const auto v = draw(kN, [&] { return sample_ku_conv(x, 1.0, alpha, n, rng); });
  CHECK(ks_against(v, delta_conv(FamilySpec::ku(alpha, n), x, 1.0)));
}

TEST_CASE("kingman representation") {
  Rng rng(6);
  for (int i = 0; i < 100; ++i) CHECK(sample_kingman_conv(1.3, 0.0, 0.7, rng) == 1.3);
  const auto v = draw(kN, [&] { return sample_kingman_conv(1.0, 1.0, 0.5, rng); });
  CHECK(ks_one_sample(v, [](double r) { return std::clamp(r * r / 4.0, 0.0, 1.0); }, kSig).pass);
  // Z² = 2 + 2V with Var V = 1/4 at s = 1, so Z²/2 - 1 has mean 0 and sd 1/2.
  double sum = 0.0;
  const std::size_t n = 10000;
  for (std::size_t i = 0; i < n; ++i) {
    const double z = sample_kingman_conv(1.0, 1.0, 1.0, rng);
    sum += z * z / 2.0 - 1.0;
  }
  CHECK(std::abs(sum / n) < 3.0 * 0.5 / std::sqrt(static_cast<double>(n)));
  CHECK(ks_against(draw(kN, [&] { return sample_kingman_conv(0.4, 1.1, 1.7, rng); }),
                   delta_conv(FamilySpec::kingman(1.7), 0.4, 1.1)));
  CHECK_THROWS_AS(sample_kingman_conv(1.0, 1.0, -0.5, rng), DomainError);
}

TEST_CASE("family dispatch") {
  Rng rng(7);
  for (int i = 0; i < 100; ++i) {
    CHECK(sample_family(FamilySpec::classical(), 3.0, 4.0, rng) == 7.0);
    CHECK(sample_family(FamilySpec::max(), 0.5, 1.0, rng) == 1.0);
  }
  std::size_t twos = 0;
  for (int i = 0; i < 10000; ++i) {
    const double v = sample_family(FamilySpec::symmetric(), 1.0, 1.0, rng);
    REQUIRE((v == 0.0 || v == 2.0));
    twos += v == 2.0;
  }
  CHECK(binomial_check(twos, 10000, 0.5).pass);
  for (const auto& f : {FamilySpec::stable(0.7), FamilySpec::kucharczak(0.5, 1.0), FamilySpec::kucharczak(0.3, 2.0),
                        FamilySpec::diamond(0.5, 1.0)}) {
    CAPTURE(to_string(f.family));
    // The Kucharczak CDF costs a quadrature per sample point.
    const std::size_t n = f.family == Family::kucharczak ? 20000 : kN;
    const auto v = draw(n, [&] { return sample_family(f, 0.8, 1.2, rng); });
    CHECK(ks_against(v, delta_conv(f, 0.8, 1.2)));
  }
  CHECK_THROWS_AS(sample_family(FamilySpec::kendall_type(1.0, 1.0, 2.0), 1.0, 1.0, rng), UnsupportedFamily);
  CHECK_THROWS_AS(sample_family(FamilySpec::classical(), -1.0, 1.0, rng), DomainError);
}

TEST_CASE("reciprocal representation") {
  Rng rng(8);
  for (int i = 0; i < 100; ++i) CHECK(sample_reciprocal_conv(FamilySpec::max(), 0.5, 2.0, rng) == 0.5);
  const auto rec = draw(kN, [&] { return sample_reciprocal_conv(FamilySpec::kendall(1.0), 0.5, 1.0, rng); });
  const auto inv = draw(kN, [&] { return 1.0 / sample_kendall_conv(0.5, 1.0, 1.0, rng); });
  CHECK(ks_two_sample(rec, inv, kSig).pass);
  CHECK(rho_of(0.5, 2.0) == rho_of(1.0 / 0.5, 1.0 / 2.0));
  CHECK(rho_of(0.0, 0.0) == 0.0);
  CHECK_THROWS_AS(sample_reciprocal_conv(FamilySpec::kendall(1.0), 0.0, 1.0, rng), DomainError);
}

TEST_CASE("fixed-point sampler is deterministic per seed") {
  for (const auto& f : {FamilySpec::kendall(1.0), FamilySpec::kucharczak(0.5, 1.0), FamilySpec::kingman(0.5)}) {
    const ConvSampler s(f, 0.5, 1.0);
    Rng a(42, 1), b(42, 1), c(43, 1);
    bool differ = false;
    for (int i = 0; i < 1000; ++i) {
      const double x = s(a);
      CHECK(x == s(b));
      differ |= x != s(c);
    }
    CHECK(differ);
  }
}

TEST_CASE("sampling random arguments matches mixing the point-mass rules") {
  Rng rng(10);
  const MixtureMeasure m1 = mix({{0.5, MixtureMeasure::delta(1.0)}, {0.5, laws::pareto(3.0)}});
  const MixtureMeasure m2 = laws::pow_law(2.0);
  const std::size_t n = 20000;
  for (const auto& f : {FamilySpec::kendall(1.0), FamilySpec::stable(0.6), FamilySpec::kingman(0.5)}) {
    CAPTURE(to_string(f.family));
    const auto rep = draw(n, [&] {
      return sample_family(f, sample_base(m1, 1, rng).values[0], sample_base(m2, 1, rng).values[0], rng);
    });
    const auto mixed = draw(n, [&] {
      const double a = sample_base(m1, 1, rng).values[0], b = sample_base(m2, 1, rng).values[0];
      return sample_base(delta_conv(f, a, b), 1, rng).values[0];
    });
    CHECK(ks_two_sample(rep, mixed, kSig).pass);
  }
}

TEST_CASE("three-fold convolutions bracket either way") {
  Rng rng(11);
  // Random arguments: with fixed points the stable rule is deterministic and
  // the two bracketings differ only by rounding, which KS cannot tolerate.
  const auto x1 = [&] { return sample_base(laws::pareto(3.0), 1, rng).values[0]; };
  const auto x2 = [&] { return sample_base(laws::pow_law(2.0), 1, rng).values[0]; };
  const auto x3 = [&] { return rng.exponential(); };
  for (const auto& f : {FamilySpec::kendall(1.0), FamilySpec::stable(2.0)}) {
    const auto left = draw(kN, [&] {
      const double a = x1(), b = x2();
      return sample_family(f, sample_family(f, a, b, rng), x3(), rng);
    });
    const auto right = draw(kN, [&] {
      const double a = x1(), b = x2();
      return sample_family(f, a, sample_family(f, b, x3(), rng), rng);
    });
    CHECK(ks_two_sample(left, right, kSig).pass);
    const auto swapped = draw(kN, [&] {
      const double a = x1(), b = x2();
      return sample_family(f, x3(), sample_family(f, b, a, rng), rng);
    });
    CHECK(ks_two_sample(left, swapped, kSig).pass);
  }
  const double l = sample_family(FamilySpec::stable(2.0), sample_family(FamilySpec::stable(2.0), 1.0, 0.5, rng), 0.3, rng);
  const double r = sample_family(FamilySpec::stable(2.0), 1.0, sample_family(FamilySpec::stable(2.0), 0.5, 0.3, rng), rng);
  CHECK(l == doctest::Approx(r).epsilon(1e-15));
}

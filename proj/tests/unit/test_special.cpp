#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "genconv/error.hpp"
#include "genconv/special.hpp"

using namespace genconv;

TEST_CASE("incomplete gamma matches Boost on a grid") {
  for (double a : {0.1, 0.5, 1.0, 2.5, 10.0, 40.0}) {
    for (double z : {1e-3, 0.3, 1.0, 2.0, 3.5, 10.0, 30.0, 80.0}) {
      CAPTURE(a);
      CAPTURE(z);
      const double p = boost::math::gamma_p(a, z);
      const double q = boost::math::gamma_q(a, z);
      CHECK(special::gamma_p(a, z) == doctest::Approx(p).epsilon(1e-12));
      if (q > 1e-300) CHECK(special::gamma_q(a, z) == doctest::Approx(q).epsilon(1e-11));
    }
  }
}

TEST_CASE("incomplete gamma edge values") {
  CHECK(special::gamma_q(0.5, 0.0) == 1.0);
  CHECK(special::gamma_p(0.5, 0.0) == 0.0);
  CHECK(special::gamma_q(1.0, 2.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
}

TEST_CASE("incomplete beta matches Boost on a grid") {
  for (double a : {0.5, 1.0, 2.0, 3.7, 12.0}) {
    for (double b : {0.5, 1.0, 4.0, 9.5}) {
      for (double x : {0.0, 1e-4, 0.1, 0.35, 0.5, 0.8, 0.999, 1.0}) {
        CAPTURE(a);
        CAPTURE(b);
        CAPTURE(x);
        CHECK(special::beta_inc(a, b, x) ==
              doctest::Approx(boost::math::ibeta(a, b, x)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("kingman phi at s = 1/2 is sin(t)/t across the series switch") {
  CHECK(special::kingman_phi(0.5, 0.0) == 1.0);
  for (double t = 0.05; t < 60.0; t += 0.37) {
    CAPTURE(t);
    CHECK(std::abs(special::kingman_phi(0.5, t) - std::sin(t) / t) < 1e-10);
  }
}

TEST_CASE("kingman phi agrees with the Boost Bessel function") {
  for (double s : {0.0, 0.3, 1.0, 2.5}) {
    for (double t : {0.1, 1.0, 5.0, 12.0, 24.0, 26.0, 40.0}) {
      CAPTURE(s);
      CAPTURE(t);
      const double ref = std::tgamma(s + 1.0) * std::pow(t / 2.0, -s) *
                         boost::math::cyl_bessel_j(s, t);
      CHECK(std::abs(special::kingman_phi(s, t) - ref) < 1e-10);
    }
  }
}

TEST_CASE("binomial coefficients") {
  CHECK(special::binomial(5, 2) == 10.0);
  CHECK(special::binomial(7, 0) == 1.0);
  CHECK(special::binomial(7, 7) == 1.0);
  CHECK(special::binomial(30, 15) == 155117520.0);
}

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "genconv/measures.hpp"
#include "genconv/samplers.hpp"
#include "genconv/weak_stable.hpp"

namespace genconv {

struct KsReport {
  double statistic = 0.0;
  std::size_t n = 0;
  std::size_t m = 0;  // 0 for the one-sample test
  double critical_value = 0.0;
  double significance = 0.01;
  bool pass = false;
};

/// Asymptotic Kolmogorov constant: 1.63 at 1%, 1.36 at 5%, sqrt(-ln(sig/2)/2) otherwise.
double ks_constant(double significance);

double ecdf(const SampleBatch& batch, double t);
double ecdf(const std::vector<double>& values, double t);

/// Sup distance between the empirical CDF and F, evaluating F and its left
/// limit at every distinct sample value. Without F_left, F is taken continuous.
KsReport ks_one_sample(const std::vector<double>& values, const std::function<double(double)>& F,
                       double significance = 0.01,
                       const std::function<double(double)>& F_left = nullptr);
KsReport ks_one_sample(const SampleBatch& batch, const MixtureMeasure& law,
                       double significance = 0.01);

KsReport ks_two_sample(const std::vector<double>& a, const std::vector<double>& b,
                       double significance = 0.01);
KsReport ks_two_sample(const SampleBatch& a, const SampleBatch& b, double significance = 0.01);

struct BinomialCheck {
  std::size_t successes = 0;
  std::size_t trials = 0;
  double p = 0.0;
  double z = 0.0;  // (successes - np) / sqrt(np(1-p))
  bool pass = false;  // |z| <= 3
};

BinomialCheck binomial_check(std::size_t successes, std::size_t trials, double p);

/// ∫_ℝ g(t) cos(xt) dt for an even integrable density g, over half-period
/// blocks with averaged partial sums.
double cosine_transform(const std::function<double(double)>& g, double x,
                        const QuadratureConfig& cfg = default_quadrature());
double cosine_transform(const WeakStableDensity& g, double x,
                        const QuadratureConfig& cfg = default_quadrature());
/// E cos(xY) where `folded` is the law of |Y| for a symmetric Y; atoms exact.
double cosine_transform(const MixtureMeasure& folded, double x,
                        const QuadratureConfig& cfg = default_quadrature());

}  // namespace genconv

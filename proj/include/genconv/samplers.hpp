#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "genconv/families.hpp"
#include "genconv/measures.hpp"
#include "genconv/rng.hpp"

namespace genconv {

struct SampleBatch {
  std::vector<double> values;
  std::uint64_t seed = 0;
  std::string law_descriptor;  // JSON text
};

/// n independent draws from `law`.
SampleBatch sample_base(const MixtureMeasure& law, std::size_t n, Rng& rng);

/// k-th smallest of n i.i.d. draws from `base`.
double sample_order_stat(const MixtureMeasure& base, int k, int n, Rng& rng);

/// min/max, 0 when both are 0.
double rho_of(double theta1, double theta2);

double sample_kendall_conv(double theta1, double theta2, double alpha, Rng& rng);
double sample_kendall_alt(double theta1, double theta2, double alpha, Rng& rng);
double sample_convex_comb(const FamilySpec& fam, double theta1, double theta2, Rng& rng);
double sample_ku_conv(double theta1, double theta2, double alpha, int n, Rng& rng);
double sample_kingman_conv(double theta1, double theta2, double s, Rng& rng);
double sample_family(const FamilySpec& fam, double theta1, double theta2, Rng& rng);
double sample_reciprocal_conv(const FamilySpec& fam, double theta1, double theta2, Rng& rng);

/// Draws from δ_x ◇ δ_y for fixed (x, y); families without a random
/// variable representation are sampled from a tabulated delta_conv.
class ConvSampler {
 public:
  ConvSampler(const FamilySpec& fam, double x, double y);
  double operator()(Rng& rng) const;

 private:
  FamilySpec fam_;
  double x_, y_;
  std::optional<MixtureMeasure> table_;
};

}  // namespace genconv

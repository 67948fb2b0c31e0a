#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "genconv/kernels.hpp"
#include "genconv/measures.hpp"

namespace genconv {

/// δ_x ◇ δ_y. Throws UnsupportedFamily for kendall_type.
MixtureMeasure delta_conv(const FamilySpec& fam, double x, double y);

bool is_monotonic(const FamilySpec& fam);

/// The law with the lack-of-memory property, CDF 1 - Ω(t).
MixtureMeasure lom_law(const FamilySpec& fam);

/// The mixing law θ with CDF Ω(1/t).
MixtureMeasure max_weak_rep_mixing_law(const FamilySpec& fam);

/// δ_x ◇ δ_1 = Σ_k weights[k](x) components[k]. A component is nullopt when
/// only its weight is known.
struct ConvexDecomposition {
  int n = 0;
  std::vector<std::function<double(double)>> weights;
  std::vector<std::optional<MixtureMeasure>> components;
};

ConvexDecomposition convex_decomposition(const FamilySpec& fam);

struct KendallTypeCase {
  bool admissible = false;
  int case_index = 0;  // 1..5, 0 when not admissible
};

KendallTypeCase is_admissible_kendall_type(double c, double alpha, double p);

/// |P̂{X > x◇y} - P{X > x} P{X > y}| with X ~ lom_law and n Monte Carlo draws.
double lom_residual(const FamilySpec& fam, double x, double y, std::size_t n, std::uint64_t seed);

/// Fraction of n draws of x◇y that fall strictly below max(x, y).
double monotonicity_witness(const FamilySpec& fam, double x, double y, std::size_t n,
                            std::uint64_t seed);

}  // namespace genconv

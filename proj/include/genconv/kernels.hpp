#pragma once

#include <optional>
#include <string>
#include <vector>

#include "genconv/measures.hpp"
#include "genconv/weak_stable.hpp"

namespace genconv {

enum class Family {
  classical,
  symmetric,
  stable,
  kendall,
  max,
  kucharczak,
  ku,
  diamond,
  kendall_type,
  kingman,
};

std::string to_string(Family f);
Family family_from_string(const std::string& name);

/// A convolution family with its parameters. Only the fields relevant to
/// `family` are read:
///   stable, kendall: alpha      kucharczak: a, r      ku: alpha, n
///   diamond: p, alpha           kendall_type: c, alpha, p      kingman: s
struct KernelSpec {
  Family family = Family::classical;
  double alpha = 1.0;
  double a = 0.5;
  double r = 1.0;
  int n = 1;
  double p = 0.5;
  double c = 0.0;
  double s = 0.5;

  static KernelSpec classical();
  static KernelSpec symmetric();
  static KernelSpec stable(double alpha);
  static KernelSpec kendall(double alpha);
  static KernelSpec max();
  static KernelSpec kucharczak(double a, double r);
  static KernelSpec ku(double alpha, int n);
  static KernelSpec diamond(double p, double alpha);
  static KernelSpec kendall_type(double c, double alpha, double p);
  static KernelSpec kingman(double s);

  void validate() const;
  /// Kernel vanishes on (1, inf).
  bool compact() const;
  /// Parameters relevant to the family, in the order listed above.
  std::vector<double> params() const;

  bool operator==(const KernelSpec&) const = default;
};

using FamilySpec = KernelSpec;

double kernel_eval(const KernelSpec& spec, double t);

/// ∫ Ω(st) m(ds).
double gen_char_fn(const KernelSpec& spec, const MixtureMeasure& m, double t,
                   const QuadratureConfig& cfg = default_quadrature());

struct ProductFormulaReport {
  double x = 0.0;
  double y = 0.0;
  std::vector<double> grid;
  std::vector<double> per_point;
  double max_residual = 0.0;
};

/// 50 points on [0, 3 / max(x, y, 1)].
std::vector<double> default_product_grid(double x, double y);

ProductFormulaReport product_formula_residual(const KernelSpec& spec, double x, double y,
                                              const std::vector<double>& grid,
                                              const QuadratureConfig& cfg = default_quadrature());

struct PolyaReport {
  bool ok = true;
  std::string reason;       // empty when ok
  std::vector<double> witness;  // offending t values
};

/// Grid from 0 past the point where the kernel drops below 1e-7.
std::vector<double> default_polya_grid(const KernelSpec& spec);

PolyaReport polya_check(const KernelSpec& spec, const std::vector<double>& grid);

}  // namespace genconv

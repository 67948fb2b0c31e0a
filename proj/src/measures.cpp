#include "genconv/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "genconv/error.hpp"

namespace genconv {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kWeightTol = 1e-12;

}  // namespace

MixtureMeasure MixtureMeasure::delta(double loc) {
  if (!(loc >= 0.0) || !std::isfinite(loc)) {
    throw DomainError("measures", "atom location must be finite and non-negative");
  }
  return {{Atom{loc, 1.0}}, {}};
}

MixtureMeasure MixtureMeasure::of(ContinuousComponent c) {
  c.w = 1.0;
  c.validate();
  return {{}, {std::move(c)}};
}

double MixtureMeasure::total_weight() const {
  double s = 0.0;
  for (const Atom& a : atoms) s += a.w;
  for (const auto& c : continuous) s += c.w;
  return s;
}

void MixtureMeasure::validate() const {
  for (const Atom& a : atoms) {
    if (!(a.loc >= 0.0) || !std::isfinite(a.loc)) {
      throw DomainError("measures", "atom location must be finite and non-negative");
    }
    if (!(a.w >= 0.0 && a.w <= 1.0)) throw DomainError("measures", "atom weight outside [0, 1]");
  }
  for (const auto& c : continuous) c.validate();
  if (std::abs(total_weight() - 1.0) > kWeightTol) {
    throw DomainError("measures", "mixture weights do not sum to 1");
  }
}

Support MixtureMeasure::support() const {
  Support s{kInf, 0.0};
  for (const Atom& a : atoms) {
    if (a.w <= 0.0) continue;
    s.lo = std::min(s.lo, a.loc);
    s.hi = std::max(s.hi, a.loc);
  }
  for (const auto& c : continuous) {
    if (c.w <= 0.0) continue;
    const Support cs = c.support();
    s.lo = std::min(s.lo, cs.lo);
    s.hi = std::max(s.hi, cs.hi);
  }
  if (s.lo > s.hi) s = {0.0, 0.0};
  return s;
}

namespace laws {
MixtureMeasure pareto(double beta) {
  return MixtureMeasure::of(make_component(DensityId::pareto, {beta}));
}
MixtureMeasure pow_law(double alpha) {
  return MixtureMeasure::of(make_component(DensityId::pow, {alpha}));
}
MixtureMeasure frechet_like(double alpha) {
  return MixtureMeasure::of(make_component(DensityId::frechet_like, {alpha}));
}
MixtureMeasure weibull_kernel(double a, double r) {
  return MixtureMeasure::of(make_component(DensityId::weibull_kernel, {a, r}));
}
MixtureMeasure exponential() { return weibull_kernel(1.0, 1.0); }
MixtureMeasure ku_orderstat(double alpha, int k, int n) {
  return MixtureMeasure::of(make_component(
      DensityId::ku_orderstat, {alpha, static_cast<double>(k), static_cast<double>(n)}));
}
}  // namespace laws

double cdf(const MixtureMeasure& m, double t) {
  if (t < 0.0 || std::isnan(t)) return 0.0;
  double s = 0.0;
  for (const Atom& a : m.atoms) {
    if (a.loc <= t) s += a.w;
  }
  for (const auto& c : m.continuous) s += c.w * c.cdf(t);
  return std::clamp(s, 0.0, 1.0);
}

double cdf_left(const MixtureMeasure& m, double t) {
  if (t <= 0.0 || std::isnan(t)) return 0.0;
  double s = 0.0;
  for (const Atom& a : m.atoms) {
    if (a.loc < t) s += a.w;
  }
  for (const auto& c : m.continuous) s += c.w * c.cdf(t);
  return std::clamp(s, 0.0, 1.0);
}

double quantile(const MixtureMeasure& m, double u) {
  if (!(u >= 0.0 && u <= 1.0)) throw DomainError("measures", "quantile level outside [0, 1]");
  const Support sup = m.support();
  if (u == 1.0) {
    if (std::isinf(sup.hi)) throw UnboundedQuantile("measures", "quantile(1) of unbounded law");
    return sup.hi;
  }
  if (m.atoms.empty() && m.continuous.size() == 1) return m.continuous[0].quantile(u);
  if (m.continuous.empty() && m.atoms.size() == 1) return m.atoms[0].loc;

  double lo = sup.lo;
  if (cdf(m, lo) >= u) return lo;
  double hi = sup.hi;
  if (std::isinf(hi)) {
    hi = std::max(1.0, 2.0 * lo);
    while (cdf(m, hi) < u) {
      lo = hi;
      hi *= 2.0;
      if (hi > 1e300) throw UnboundedQuantile("measures", "quantile bracket overflow");
    }
  }
  for (int i = 0; i < 300 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (cdf(m, mid) >= u ? hi : lo) = mid;
  }
  return hi;
}

MixtureMeasure dilate(const MixtureMeasure& m, double a) {
  if (!(a >= 0.0) || !std::isfinite(a)) {
    throw DomainError("measures", "dilation factor must be finite and non-negative");
  }
  if (a == 0.0) return MixtureMeasure::delta(0.0);
  if (a == 1.0) return m;
  MixtureMeasure out = m;
  for (Atom& at : out.atoms) at.loc *= a;
  for (auto& c : out.continuous) c.scale *= a;
  return out;
}

MixtureMeasure mix(const std::vector<std::pair<double, MixtureMeasure>>& parts) {
  double wsum = 0.0;
  for (const auto& [w, m] : parts) {
    if (!(w >= 0.0)) throw DomainError("measures", "mixture weights must be non-negative");
    wsum += w;
  }
  if (std::abs(wsum - 1.0) > kWeightTol) {
    throw DomainError("measures", "mixture weights do not sum to 1");
  }
  MixtureMeasure out;
  for (const auto& [w, m] : parts) {
    if (w == 0.0) continue;
    for (const Atom& a : m.atoms) {
      if (a.w * w == 0.0) continue;
      auto it = std::find_if(out.atoms.begin(), out.atoms.end(),
                             [&](const Atom& b) { return b.loc == a.loc; });
      if (it != out.atoms.end()) {
        it->w += a.w * w;
      } else {
        out.atoms.push_back({a.loc, a.w * w});
      }
    }
    for (const auto& c : m.continuous) {
      if (c.w * w == 0.0) continue;
      auto it = std::find_if(out.continuous.begin(), out.continuous.end(), [&](const auto& d) {
        return d.id == c.id && d.params == c.params && d.scale == c.scale;
      });
      if (it != out.continuous.end()) {
        it->w += c.w * w;
      } else {
        auto cc = c;
        cc.w = c.w * w;
        out.continuous.push_back(std::move(cc));
      }
    }
  }
  std::stable_sort(out.atoms.begin(), out.atoms.end(),
                   [](const Atom& a, const Atom& b) { return a.loc < b.loc; });
  for (Atom& a : out.atoms) a.w = std::min(a.w, 1.0);
  for (auto& c : out.continuous) c.w = std::min(c.w, 1.0);
  return out;
}

double integrate(const MixtureMeasure& m, const Integrand& g, const QuadratureConfig& cfg,
                 const std::vector<double>& breaks) {
  double s = 0.0;
  for (const Atom& a : m.atoms) s += a.w * g(a.loc);
  for (const auto& c : m.continuous) s += c.w * c.integrate(g, cfg, breaks);
  return s;
}

double mass(const MixtureMeasure& m, const QuadratureConfig& cfg) {
  double s = 0.0;
  for (const Atom& a : m.atoms) s += a.w;
  for (const auto& c : m.continuous) s += c.w * c.mass(cfg);
  return s;
}

double sample(const MixtureMeasure& m, Rng& rng) {
  const std::size_t parts = m.atoms.size() + m.continuous.size();
  if (parts == 0) throw DomainError("measures", "cannot sample an empty measure");
  std::size_t pick = 0;
  if (parts > 1) {
    const double u = rng.uniform() * m.total_weight();
    double acc = 0.0;
    pick = parts - 1;
    for (std::size_t i = 0; i < parts; ++i) {
      acc += i < m.atoms.size() ? m.atoms[i].w : m.continuous[i - m.atoms.size()].w;
      if (u <= acc) {
        pick = i;
        break;
      }
    }
  }
  if (pick < m.atoms.size()) return m.atoms[pick].loc;
  return m.continuous[pick - m.atoms.size()].sample(rng);
}

MixtureMeasure tabulate(const MixtureMeasure& m, const QuadratureConfig& cfg) {
  MixtureMeasure out = m;
  for (auto& c : out.continuous) c = tabulate(c, cfg);
  return out;
}

}  // namespace genconv

#include "genconv/suites.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numbers>
#include <sstream>

#include "genconv/error.hpp"
#include "genconv/families.hpp"
#include "genconv/samplers.hpp"
#include "genconv/special.hpp"
#include "genconv/stats.hpp"
#include "genconv/weak_stable.hpp"
#include "genconv/williamson.hpp"

namespace genconv {
namespace {

std::string label(const FamilySpec& f) {
  std::ostringstream os;
  os << to_string(f.family);
  const auto p = f.params();
  if (!p.empty()) {
    os << '(';
    for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
    os << ')';
  }
  return os.str();
}

class Runner {
 public:
  Runner(std::string name, std::uint64_t seed) : seed_(seed) { report_.suite = std::move(name); }

  // Seed reserved for the next case.
  std::uint64_t seed() const { return seed_ + report_.cases.size(); }

  void add(std::string id, double statistic, double threshold, bool pass) {
    report_.cases.push_back({std::move(id), statistic, threshold, pass});
    report_.pass = report_.pass && pass;
  }
  void at_most(std::string id, double statistic, double threshold) {
    add(std::move(id), statistic, threshold, statistic <= threshold);
  }
  void ks(std::string id, const KsReport& r) {
    add(std::move(id), r.statistic, r.critical_value, r.pass);
  }

  SuiteReport take() { return std::move(report_); }

 private:
  std::uint64_t seed_;
  SuiteReport report_;
};

std::vector<FamilySpec> pick(const SuiteOptions& o, std::vector<FamilySpec> defaults) {
  if (o.family) return {*o.family};
  return defaults;
}

std::vector<FamilySpec> all_families() {
  return {FamilySpec::classical(),       FamilySpec::symmetric(),     FamilySpec::stable(2.0),
          FamilySpec::kendall(1.0),      FamilySpec::max(),           FamilySpec::kucharczak(0.5, 1.0),
          FamilySpec::ku(1.0, 2),        FamilySpec::diamond(0.5, 1.0), FamilySpec::kingman(0.5)};
}

std::vector<FamilySpec> monotonic_families() {
  return {FamilySpec::classical(),         FamilySpec::stable(2.0), FamilySpec::kendall(1.0),
          FamilySpec::max(),               FamilySpec::kucharczak(0.5, 1.0), FamilySpec::ku(1.0, 2),
          FamilySpec::diamond(0.5, 1.0),   FamilySpec::diamond(0.2, 2.0)};
}

bool has_pointwise_sampler(const FamilySpec& f) {
  return f.family != Family::kucharczak && f.family != Family::kendall_type;
}

void axioms(Runner& run, const SuiteOptions& o) {
  const MixtureMeasure l1 = laws::pareto(3.0), l2 = laws::pow_law(2.0), l3 = laws::exponential();
  for (const FamilySpec& f : pick(o, all_families())) {
    const std::string tag = label(f);
    int mismatches = 0;
    for (auto [x, y] : {std::pair{0.3, 0.7}, {0.5, 1.0}, {1.5, 0.2}, {2.0, 2.0}}) {
      if (!(delta_conv(f, x, y) == delta_conv(f, y, x))) ++mismatches;
    }
    run.at_most("commutativity/" + tag, mismatches, 0.0);

    mismatches = 0;
    for (double x : {0.0, 0.5, 1.0, 2.0}) {
      if (!(delta_conv(f, x, 0.0) == MixtureMeasure::delta(x))) ++mismatches;
      if (!(delta_conv(f, 0.0, x) == MixtureMeasure::delta(x))) ++mismatches;
    }
    run.at_most("neutral/" + tag, mismatches, 0.0);

    double worst = 0.0;
    for (double a : {0.5, 3.0}) {
      const double x = 0.5, y = 1.0;
      const MixtureMeasure scaled = delta_conv(f, a * x, a * y);
      const MixtureMeasure base = delta_conv(f, x, y);
      const double h = 3.0 * a * (x + y) / 40.0;
      for (int i = 0; i < 40; ++i) {
        const double t = (i + 0.37) * h;
        worst = std::max(worst, std::abs(cdf(scaled, t) - cdf(base, t / a)));
      }
    }
    run.at_most("homogeneity/" + tag, worst, 1e-9);

    if (has_pointwise_sampler(f)) {
      Rng rl(run.seed(), 0), rr(run.seed(), 1);
      std::vector<double> left(o.n), right(o.n);
      for (std::size_t i = 0; i < o.n; ++i) {
        const double a = sample(l1, rl), b = sample(l2, rl), c = sample(l3, rl);
        left[i] = sample_family(f, sample_family(f, a, b, rl), c, rl);
        const double a2 = sample(l1, rr), b2 = sample(l2, rr), c2 = sample(l3, rr);
        right[i] = sample_family(f, a2, sample_family(f, b2, c2, rr), rr);
      }
      run.ks("associativity/" + tag, ks_two_sample(left, right, 0.01));
    }

    const std::size_t m = std::min<std::size_t>(o.n, 10000);
    const double below = monotonicity_witness(f, 1.0, 1.0, m, run.seed());
    if (is_monotonic(f)) {
      run.at_most("monotonicity/" + tag, below, 0.0);
    } else {
      // Non-monotonic rules put mass below max(x, y); the observed share must
      // match the law's own mass there.
      const double p = cdf_left(delta_conv(f, 1.0, 1.0), 1.0);
      const auto hits = static_cast<std::size_t>(std::llround(below * static_cast<double>(m)));
      const BinomialCheck b = binomial_check(hits, m, p);
      run.add("monotonicity/" + tag + "/expected-false", below,
              3.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(m)), b.pass && below > 0.0);
    }
  }
}

void kendall_exact(Runner& run, const SuiteOptions& o, const QuadratureConfig& cfg) {
  for (auto [t1, t2, alpha] : {std::tuple{1.0, 1.0, 1.0}, {0.5, 1.0, 1.0}, {0.3, 0.7, 2.0}}) {
    const CdfPair pair = kendall_convolve(kendall_pair_of(MixtureMeasure::delta(t1), alpha, cfg),
                                          kendall_pair_of(MixtureMeasure::delta(t2), alpha, cfg));
    Rng rng(run.seed(), 0);
    std::vector<double> v(o.n);
    for (double& x : v) x = sample_kendall_conv(t1, t2, alpha, rng);
    std::ostringstream id;
    id << "ks/theta=(" << t1 << "," << t2 << ")/alpha=" << alpha;
    run.ks(id.str(), ks_one_sample(v, pair.F, 0.01, pair.F_left));
  }

  for (double alpha : {0.5, 1.0, 2.0}) {
    const CdfPair one = kendall_pair_of(MixtureMeasure::delta(1.0), alpha, cfg);
    const CdfPair pair = kendall_convolve(one, one);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      const double t = 1.0 + 49.0 * i / 199.0;
      worst = std::max(worst, std::abs(pair.F(t) - (1.0 - std::pow(t, -2.0 * alpha))));
    }
    std::ostringstream id;
    id << "pareto-square/alpha=" << alpha;
    run.at_most(id.str(), worst, 1e-9);
  }

  for (double alpha : {0.5, 1.0, 2.0}) {
    std::vector<std::pair<std::string, MixtureMeasure>> laws_;
    for (double a : {0.5, 1.0, 3.0}) {
      std::ostringstream n;
      n << "delta(" << a << ")";
      laws_.emplace_back(n.str(), MixtureMeasure::delta(a));
    }
    laws_.emplace_back("pow", laws::pow_law(alpha));
    for (const auto& [name, m] : laws_) {
      const Evaluator G = [&m, alpha, &cfg](double t) { return williamson(m, alpha, 1.0 / t, cfg); };
      double worst = 0.0;
      int used = 0;
      for (int i = 0; used < 200; ++i) {
        const double t = 0.013 + 0.029 * i;
        const double jump = m.is_atomic() ? m.atoms.front().loc : 1.0;
        if (std::abs(t - jump) < 1e-3) continue;
        ++used;
        worst = std::max(worst, std::abs(williamson_invert(G, alpha, t) - cdf(m, t)));
      }
      std::ostringstream id;
      id << "round-trip/" << name << "/alpha=" << alpha;
      run.at_most(id.str(), worst, 1e-6);
    }
  }
}

void lom(Runner& run, const SuiteOptions& o) {
  const double grid[] = {0.3, 0.7, 1.5};
  const double thr = 4.0 / std::sqrt(static_cast<double>(o.n));
  for (const FamilySpec& f : pick(o, monotonic_families())) {
    for (double x : grid) {
      for (double y : grid) {
        std::ostringstream id;
        id << label(f) << "/x=" << x << "/y=" << y;
        run.at_most(id.str(), lom_residual(f, x, y, o.n, run.seed()), thr);
      }
    }
    if (f.family == Family::classical) {
      double worst = 0.0;
      for (double x : grid) {
        for (double y : grid) {
          worst = std::max(worst, std::abs(std::exp(-(x + y)) - std::exp(-x) * std::exp(-y)));
        }
      }
      run.at_most("classical/analytic", worst, 4.0 * DBL_EPSILON);
    }
  }
}

void maxrep(Runner& run, const SuiteOptions& o) {
  const MixtureMeasure l1 = laws::pareto(3.0), l2 = laws::pow_law(2.0);
  const std::vector<FamilySpec> defaults = {FamilySpec::classical(), FamilySpec::stable(2.0),
                                            FamilySpec::kendall(1.0), FamilySpec::ku(1.0, 2),
                                            FamilySpec::max()};
  for (const FamilySpec& f : pick(o, defaults)) {
    if (!has_pointwise_sampler(f)) {
      throw UnsupportedFamily("suites", "maxrep needs a pointwise sampler for " + label(f));
    }
    const MixtureMeasure theta = max_weak_rep_mixing_law(f);
    Rng rl(run.seed(), 0), rr(run.seed(), 1);
    std::vector<double> left(o.n), right(o.n);
    for (std::size_t i = 0; i < o.n; ++i) {
      const double x1 = sample(l1, rl), x2 = sample(l2, rl);
      left[i] = std::max(sample(theta, rl) * x1, sample(theta, rl) * x2);
      const double y1 = sample(l1, rr), y2 = sample(l2, rr);
      right[i] = sample(theta, rr) * sample_family(f, y1, y2, rr);
    }
    run.ks("ks/" + label(f), ks_two_sample(left, right, 0.01));
  }
}

void weakstable(Runner& run, const QuadratureConfig& cfg) {
  for (double alpha : {0.5, 1.0}) {
    std::ostringstream tag;
    tag << "alpha=" << alpha;
    // The normalizing constant is known in closed form; quadrature must agree.
    const WeakStableDensity g(alpha, alpha / std::numbers::pi);
    run.at_most("mass/" + tag.str(), std::abs(2.0 * g.constant() * g.half_mass(cfg) - 1.0), 1e-6);
    for (int i = 0; i <= 8; ++i) {
      const double x = 0.25 * i;
      const double expected = std::max(0.0, 1.0 - std::pow(x, alpha));
      std::ostringstream id;
      id << "cosine/" << tag.str() << "/x=" << x;
      run.at_most(id.str(), std::abs(g.cosine_transform(x, cfg) - expected), 1e-3);
    }
  }
  for (double alpha : {0.25, 0.5, 1.0, 1.25, 2.0}) {
    const FamilySpec k = FamilySpec::kendall(alpha);
    const bool ok = polya_check(k, default_polya_grid(k)).ok;
    const bool expected = alpha <= 1.0;
    std::ostringstream id;
    id << "polya/alpha=" << alpha << (expected ? "" : "/expected-false");
    run.add(id.str(), ok ? 1.0 : 0.0, expected ? 1.0 : 0.0, ok == expected);
  }
}

void orderstat(Runner& run, const SuiteOptions& o) {
  for (auto [alpha, k, n] : {std::tuple{1.0, 1, 1}, {1.0, 2, 3}, {2.0, 3, 3}}) {
    const MixtureMeasure base = laws::pareto(alpha);
    const MixtureMeasure law = laws::ku_orderstat(alpha, k, n);
    Rng rng(run.seed(), 0);
    std::vector<double> v(o.n);
    for (double& x : v) x = sample_order_stat(base, k, n + k, rng);
    std::ostringstream id;
    id << "ks/alpha=" << alpha << "/k=" << k << "/n=" << n;
    run.ks(id.str(), ks_one_sample(v, [&law](double t) { return cdf(law, t); }, 0.01));
  }
}

void normalization(Runner& run, const QuadratureConfig& cfg) {
  for (double p : {0.2, 0.5, 0.9}) {
    for (double alpha : {0.5, 1.0, 2.0}) {
      std::ostringstream id;
      id << "diamond_tail/p=" << p << "/alpha=" << alpha;
      const ContinuousComponent c = make_component(DensityId::diamond_tail, {p, alpha});
      run.at_most(id.str(), std::abs(c.mass(cfg) - 1.0), 1e-9);
    }
  }
  const ContinuousComponent kuch = make_component(DensityId::kucharczak, {0.5, 1.0, 1.0, 1.0});
  run.at_most("kucharczak/a=0.5/r=1/x=1/y=1", std::abs(kuch.mass(cfg) - 1.0), 1e-6);

  const double p = 2.0, alpha = 1.0;
  for (double c : {1.0, 1.0 / 3.0, 0.0, 0.5, 5.0 / 12.0}) {
    const KendallTypeCase kc = is_admissible_kendall_type(c, alpha, p);
    const ConvexDecomposition d = convex_decomposition(FamilySpec::kendall_type(c, alpha, p));
    double worst = 0.0;
    for (int i = 0; i <= 100; ++i) {
      const double x = i / 100.0;
      double s = 0.0;
      for (const auto& w : d.weights) s += w(x);
      worst = std::max(worst, std::abs(s - 1.0));
    }
    std::ostringstream id;
    id << "kendall_type-weights/case=" << kc.case_index << "/c=" << c;
    run.add(id.str(), worst, 1e-12, kc.admissible && worst <= 1e-12);
  }

  const std::vector<std::pair<DensityId, std::vector<double>>> densities = {
      {DensityId::pareto, {2.5}},
      {DensityId::pow, {0.7}},
      {DensityId::frechet_like, {1.5}},
      {DensityId::weibull_kernel, {0.5, 2.0}},
      {DensityId::inv_weibull_kernel, {0.5, 1.0}},
      {DensityId::ku_orderstat, {1.0, 2.0, 3.0}},
      {DensityId::ku_lom, {1.5, 3.0}},
      {DensityId::pareto_max, {1.0, 2.0}},
      {DensityId::kingman_radial, {0.7, 0.5, 1.0}},
      {DensityId::kendall_type_lom, {5.0 / 12.0, 1.0, 2.0}},
      {DensityId::kendall_type_maxrep, {5.0 / 12.0, 1.0, 2.0}},
  };
  for (const auto& [id, params] : densities) {
    const ContinuousComponent c = make_component(id, params);
    run.at_most("unit-mass/" + to_string(id), std::abs(c.mass(cfg) - 1.0), 1e-6);
  }
}

}  // namespace

std::vector<std::string> SuiteReport::failing() const {
  std::vector<std::string> out;
  for (const auto& c : cases) {
    if (!c.pass) out.push_back(c.id);
  }
  return out;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"axioms",    "kendall-exact", "lom",
                                                 "maxrep",    "weakstable",    "orderstat",
                                                 "normalization"};
  return names;
}

SuiteReport run_suite(const std::string& name, const SuiteOptions& opts,
                      const QuadratureConfig& cfg) {
  if (opts.n == 0) throw DomainError("suites", "sample count must be positive");
  if (opts.family) opts.family->validate();
  Runner run(name, opts.seed);
  if (name == "axioms") {
    axioms(run, opts);
  } else if (name == "kendall-exact") {
    kendall_exact(run, opts, cfg);
  } else if (name == "lom") {
    lom(run, opts);
  } else if (name == "maxrep") {
    maxrep(run, opts);
  } else if (name == "weakstable") {
    weakstable(run, cfg);
  } else if (name == "orderstat") {
    orderstat(run, opts);
  } else if (name == "normalization") {
    normalization(run, cfg);
  } else {
    throw DomainError("suites", "unknown suite '" + name + "'");
  }
  return run.take();
}

io::Json to_json(const SuiteReport& r) {
  io::Json cases = io::Json::array();
  for (const auto& c : r.cases) {
    cases.push_back(io::Json{
        {"id", c.id}, {"statistic", c.statistic}, {"threshold", c.threshold}, {"pass", c.pass}});
  }
  return io::Json{{"suite", r.suite}, {"cases", cases}, {"pass", r.pass}};
}

}  // namespace genconv

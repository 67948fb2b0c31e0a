#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "genconv/error.hpp"
#include "genconv/families.hpp"
#include "genconv/io.hpp"
#include "genconv/kernels.hpp"
#include "genconv/samplers.hpp"
#include "genconv/stats.hpp"
#include "genconv/suites.hpp"
#include "genconv/williamson.hpp"

namespace {

using genconv::io::Json;
using namespace genconv;

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

struct FamilyFlags {
  std::string name;
  double alpha = 1.0;
  double a = 0.5;
  double r = 1.0;
  int ku_n = 1;
  double p = 0.5;
  double c = 0.0;
  double s = 0.5;

  FamilySpec build() const {
    FamilySpec f;
    f.family = family_from_string(name);
    f.alpha = alpha;
    f.a = a;
    f.r = r;
    f.n = ku_n;
    f.p = p;
    f.c = c;
    f.s = s;
    f.validate();
    return f;
  }
};

void add_family_flags(CLI::App* app, FamilyFlags& f, bool required) {
  auto* opt = app->add_option("--family", f.name,
                              "classical|symmetric|stable|kendall|max|kucharczak|ku|diamond|"
                              "kendall_type|kingman");
  if (required) opt->required();
  app->add_option("--alpha", f.alpha, "index alpha (stable, kendall, ku, diamond, kendall_type)");
  app->add_option("--a", f.a, "Kucharczak shape a in (0, 1]");
  app->add_option("--r", f.r, "Kucharczak power r > 0");
  app->add_option("--ku-n", f.ku_n, "Kucharczak-Urbanik order n >= 1");
  app->add_option("--p", f.p, "diamond p in [0, 1] or kendall_type p >= 2");
  app->add_option("--c", f.c, "kendall_type constant c");
  app->add_option("--s", f.s, "Kingman index s > -1/2");
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cli", "cannot write '" + path + "'");
  out << text;
}

Json family_json(const FamilySpec& f) { return io::to_json(f); }

Json check_json(const FamilySpec& f, double statistic, double threshold, bool pass) {
  Json j = family_json(f);
  j["statistic"] = statistic;
  j["threshold"] = threshold;
  j["pass"] = pass;
  return j;
}

std::string grid_csv(const Json& descriptor, const std::vector<double>& ts,
                     const std::vector<std::vector<double>>& columns) {
  std::ostringstream os;
  os << "# genconv v1 " << io::dump(descriptor) << '\n';
  for (std::size_t i = 0; i < ts.size(); ++i) {
    os << io::format_double(ts[i]);
    for (const auto& col : columns) os << ',' << io::format_double(col[i]);
    os << '\n';
  }
  return os.str();
}

bool looks_like_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cli", "cannot open '" + path + "'");
  char ch = 0;
  in >> std::ws >> ch;
  return ch == '{';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized convolutions of probability measures on [0, inf)"};
  app.require_subcommand(1);
  std::string out;
  int status = kOk;

  // conv
  FamilyFlags conv_f;
  double conv_x = 0.0, conv_y = 0.0;
  auto* conv = app.add_subcommand("conv", "Write delta_x <> delta_y as a measure JSON file");
  add_family_flags(conv, conv_f, true);
  conv->add_option("--x", conv_x, "first point mass")->required();
  conv->add_option("--y", conv_y, "second point mass")->required();
  conv->add_option("--out", out, "output path (stdout when omitted)");
  conv->callback([&] {
    const FamilySpec f = conv_f.build();
    emit(out, io::to_json(delta_conv(f, conv_x, conv_y)).dump(2) + "\n");
  });

  // sample
  FamilyFlags sample_f;
  double theta1 = 0.0, theta2 = 0.0;
  std::size_t n = 1000;
  std::uint64_t seed = 0;
  std::string measure_path;
  auto* samp = app.add_subcommand("sample", "Draw theta1 <> theta2 or a measure file law to CSV");
  add_family_flags(samp, sample_f, false);
  samp->add_option("--theta1", theta1, "first point mass");
  samp->add_option("--theta2", theta2, "second point mass");
  samp->add_option("--measure", measure_path, "measure JSON to sample instead of a convolution");
  samp->add_option("--n", n, "number of draws")->check(CLI::PositiveNumber);
  samp->add_option("--seed", seed, "master seed");
  samp->add_option("--out", out, "output path (stdout when omitted)");
  samp->callback([&] {
    SampleBatch batch;
    batch.seed = seed;
    Rng rng(seed, 0);
    Json d;
    if (!measure_path.empty()) {
      const MixtureMeasure m = io::read_measure_file(measure_path);
      batch = sample_base(m, n, rng);
      d = Json{{"measure", io::to_json(m)}};
    } else {
      if (sample_f.name.empty()) throw DomainError("cli", "sample needs --family or --measure");
      const FamilySpec f = sample_f.build();
      const ConvSampler draw(f, theta1, theta2);
      batch.values.resize(n);
      for (double& v : batch.values) v = draw(rng);
      d = family_json(f);
      d["theta1"] = theta1;
      d["theta2"] = theta2;
    }
    d["n"] = n;
    d["seed"] = seed;
    batch.seed = seed;
    batch.law_descriptor = io::dump(d);
    std::ostringstream os;
    io::write_sample_csv(os, batch);
    emit(out, os.str());
  });

  // cdf-grid
  FamilyFlags grid_f;
  double grid_x = 0.0, grid_y = 0.0;
  std::string grid_text;
  auto* cdfg = app.add_subcommand("cdf-grid", "Tabulate a CDF as t,F rows");
  add_family_flags(cdfg, grid_f, false);
  cdfg->add_option("--measure", measure_path, "measure JSON file");
  cdfg->add_option("--x", grid_x, "first point mass (with --family)");
  cdfg->add_option("--y", grid_y, "second point mass (with --family)");
  cdfg->add_option("--grid", grid_text, "start:stop:points")->required();
  cdfg->add_option("--out", out, "output path (stdout when omitted)");
  cdfg->callback([&] {
    const io::Grid g = io::parse_grid(grid_text);
    MixtureMeasure m;
    if (!measure_path.empty()) {
      m = io::read_measure_file(measure_path);
    } else {
      if (grid_f.name.empty()) throw DomainError("cli", "cdf-grid needs --measure or --family");
      m = delta_conv(grid_f.build(), grid_x, grid_y);
    }
    const auto ts = g.values();
    std::vector<double> F;
    for (double t : ts) F.push_back(cdf(m, t));
    emit(out, grid_csv(Json{{"measure", io::to_json(m)}, {"grid", grid_text}}, ts, {F}));
  });

  // kernel
  FamilyFlags kern_f;
  auto* kernel = app.add_subcommand("kernel", "Probability kernel queries");
  kernel->require_subcommand(1);
  auto* keval = kernel->add_subcommand("eval", "Tabulate the kernel as t,Omega rows");
  add_family_flags(keval, kern_f, true);
  keval->add_option("--grid", grid_text, "start:stop:points")->required();
  keval->add_option("--out", out, "output path (stdout when omitted)");
  keval->callback([&] {
    const FamilySpec f = kern_f.build();
    const auto ts = io::parse_grid(grid_text).values();
    std::vector<double> om;
    for (double t : ts) om.push_back(kernel_eval(f, t));
    emit(out, grid_csv(family_json(f), ts, {om}));
  });
  auto* kpolya = kernel->add_subcommand("polya", "Test the kernel for Polya-type convexity");
  add_family_flags(kpolya, kern_f, true);
  kpolya->add_option("--out", out, "output path (stdout when omitted)");
  kpolya->callback([&] {
    const FamilySpec f = kern_f.build();
    const PolyaReport r = polya_check(f, default_polya_grid(f));
    Json j = family_json(f);
    j["polya"] = io::to_json(r);
    emit(out, j.dump(2) + "\n");
  });
  double pr_x = 1.0, pr_y = 1.0, pr_tol = 1e-6;
  auto* kprod = kernel->add_subcommand("product-residual",
                                       "Max |Omega(xt)Omega(yt) - Phi_{x<>y}(t)| on a grid");
  add_family_flags(kprod, kern_f, true);
  kprod->add_option("--x", pr_x, "first point mass");
  kprod->add_option("--y", pr_y, "second point mass");
  kprod->add_option("--tol", pr_tol, "pass threshold for the maximum residual");
  kprod->add_option("--out", out, "output path (stdout when omitted)");
  kprod->callback([&] {
    const FamilySpec f = kern_f.build();
    const ProductFormulaReport r =
        product_formula_residual(f, pr_x, pr_y, default_product_grid(pr_x, pr_y));
    Json j = check_json(f, r.max_residual, pr_tol, r.max_residual < pr_tol);
    j["report"] = io::to_json(r);
    emit(out, j.dump(2) + "\n");
    if (r.max_residual >= pr_tol) status = kCheckFailed;
  });

  // kendall
  auto* kendall = app.add_subcommand("kendall", "Exact Kendall convolution of two measures");
  kendall->require_subcommand(1);
  double k_alpha = 1.0;
  std::string lhs, rhs;
  auto* kcdf = kendall->add_subcommand("cdf", "Tabulate t,F,G of lhs Kendall-convolved with rhs");
  kcdf->add_option("--alpha", k_alpha, "Kendall index alpha > 0")->required();
  kcdf->add_option("--lhs", lhs, "measure JSON file")->required();
  kcdf->add_option("--rhs", rhs, "measure JSON file")->required();
  kcdf->add_option("--grid", grid_text, "start:stop:points")->required();
  kcdf->add_option("--out", out, "output path (stdout when omitted)");
  kcdf->callback([&] {
    const io::Grid g = io::parse_grid(grid_text);
    const MixtureMeasure a = io::read_measure_file(lhs), b = io::read_measure_file(rhs);
    const CdfPair pair = kendall_convolve(kendall_pair_of(a, k_alpha), kendall_pair_of(b, k_alpha));
    const auto ts = g.values();
    std::vector<double> F, G;
    for (double t : ts) {
      F.push_back(pair.F(t));
      G.push_back(pair.G(t));
    }
    const Json d{{"alpha", k_alpha}, {"lhs", io::to_json(a)}, {"rhs", io::to_json(b)},
                 {"grid", grid_text}};
    emit(out, grid_csv(d, ts, {F, G}));
  });

  // check
  auto* check = app.add_subcommand("check", "Statistical property checks");
  check->require_subcommand(1);
  FamilyFlags chk_f;
  double cx = 0.5, cy = 1.0;
  std::size_t cn = 100000;
  double significance = 0.01;
  for (const char* name : {"lom", "monotone"}) {
    auto* sub = check->add_subcommand(
        name, std::string(name) == "lom" ? "Lack-of-memory residual" : "Mass below max(x, y)");
    add_family_flags(sub, chk_f, true);
    sub->add_option("--x", cx, "first point mass");
    sub->add_option("--y", cy, "second point mass");
    sub->add_option("--n", cn, "number of draws")->check(CLI::PositiveNumber);
    sub->add_option("--seed", seed, "master seed");
    sub->add_option("--out", out, "output path (stdout when omitted)");
  }
  check->get_subcommand("lom")->callback([&] {
    const FamilySpec f = chk_f.build();
    const double res = lom_residual(f, cx, cy, cn, seed);
    const double thr = 4.0 / std::sqrt(static_cast<double>(cn));
    emit(out, check_json(f, res, thr, res < thr).dump(2) + "\n");
    if (!(res < thr)) status = kCheckFailed;
  });
  check->get_subcommand("monotone")->callback([&] {
    const FamilySpec f = chk_f.build();
    const double below = monotonicity_witness(f, cx, cy, cn, seed);
    emit(out, check_json(f, below, 0.0, below == 0.0).dump(2) + "\n");
    if (below != 0.0) status = kCheckFailed;
  });
  auto* cmax = check->add_subcommand("maxrep", "Two-sample KS of the max-representation identity");
  add_family_flags(cmax, chk_f, true);
  cmax->add_option("--lhs", lhs, "law of X1 as measure JSON (default pareto(3))");
  cmax->add_option("--rhs", rhs, "law of X2 as measure JSON (default pow(2))");
  cmax->add_option("--n", cn, "number of draws")->check(CLI::PositiveNumber);
  cmax->add_option("--seed", seed, "master seed");
  cmax->add_option("--significance", significance, "KS significance level");
  cmax->add_option("--out", out, "output path (stdout when omitted)");
  cmax->callback([&] {
    const FamilySpec f = chk_f.build();
    const MixtureMeasure l1 = lhs.empty() ? laws::pareto(3.0) : io::read_measure_file(lhs);
    const MixtureMeasure l2 = rhs.empty() ? laws::pow_law(2.0) : io::read_measure_file(rhs);
    const MixtureMeasure theta = max_weak_rep_mixing_law(f);
    Rng rl(seed, 0), rr(seed, 1);
    std::vector<double> left(cn), right(cn);
    for (std::size_t i = 0; i < cn; ++i) {
      const double x1 = sample(l1, rl), x2 = sample(l2, rl);
      left[i] = std::max(sample(theta, rl) * x1, sample(theta, rl) * x2);
      const double y1 = sample(l1, rr), y2 = sample(l2, rr);
      right[i] = sample(theta, rr) * sample_family(f, y1, y2, rr);
    }
    const KsReport r = ks_two_sample(left, right, significance);
    emit(out, check_json(f, r.statistic, r.critical_value, r.pass).dump(2) + "\n");
    if (!r.pass) status = kCheckFailed;
  });
  auto* cks = check->add_subcommand("ks", "Kolmogorov-Smirnov test of a sample file");
  cks->add_option("--lhs", lhs, "sample CSV")->required();
  cks->add_option("--rhs", rhs, "sample CSV (two-sample) or measure JSON (one-sample)")->required();
  cks->add_option("--significance", significance, "KS significance level");
  cks->add_option("--out", out, "output path (stdout when omitted)");
  cks->callback([&] {
    const SampleBatch a = io::read_sample_file(lhs);
    KsReport r;
    Json j{{"check", "ks"}};
    if (looks_like_json(rhs)) {
      const MixtureMeasure law = io::read_measure_file(rhs);
      r = ks_one_sample(a, law, significance);
      j["law"] = io::to_json(law);
    } else {
      r = ks_two_sample(a, io::read_sample_file(rhs), significance);
    }
    j["statistic"] = r.statistic;
    j["threshold"] = r.critical_value;
    j["pass"] = r.pass;
    j["report"] = io::to_json(r);
    emit(out, j.dump(2) + "\n");
    if (!r.pass) status = kCheckFailed;
  });

  // suite
  FamilyFlags suite_f;
  std::string suite_name;
  std::size_t suite_n = 100000;
  auto* suite = app.add_subcommand("suite", "Run a named property suite and print its JSON report");
  suite->add_option("--name", suite_name, "axioms|kendall-exact|lom|maxrep|weakstable|orderstat|"
                                           "normalization")
      ->required()
      ->check(CLI::IsMember(suite_names()));
  add_family_flags(suite, suite_f, false);
  suite->add_option("--seed", seed, "master seed; case i uses seed + i");
  suite->add_option("--n", suite_n, "draws per Monte Carlo case")->check(CLI::PositiveNumber);
  suite->add_option("--out", out, "output path (stdout when omitted)");
  suite->callback([&] {
    SuiteOptions o;
    o.seed = seed;
    o.n = suite_n;
    if (!suite_f.name.empty()) o.family = suite_f.build();
    const SuiteReport r = run_suite(suite_name, o);
    emit(out, to_json(r).dump(2) + "\n");
    if (!r.pass) {
      status = kCheckFailed;
      for (const auto& id : r.failing()) std::cerr << "failing case: " << id << '\n';
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  } catch (const std::exception& e) {
    // Library errors already lead with the module that raised them.
    std::cerr << "genconv: " << e.what() << '\n';
    return kUsage;
  }
  return status;
}

#include "genconv/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "genconv/error.hpp"

namespace genconv::io {
namespace {

Json number(double v) {
  if (std::isinf(v)) return nullptr;
  return v;
}

double as_number(const Json& j, const char* what) {
  if (j.is_null()) return INFINITY;
  if (!j.is_number()) throw FormatError("io", std::string("expected a number for ") + what);
  return j.get<double>();
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string out = buf;
  if (std::isfinite(v) && out.find_first_of(".e") == std::string::npos) out += ".0";
  return out;
}

std::vector<double> Grid::values() const {
  std::vector<double> v(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) v[i] = start + (stop - start) * i / (points - 1);
  v.back() = stop;
  return v;
}

Grid parse_grid(const std::string& text) {
  Grid g;
  char tail = 0;
  if (std::sscanf(text.c_str(), "%lf:%lf:%d%c", &g.start, &g.stop, &g.points, &tail) != 3) {
    throw FormatError("io", "grid must look like start:stop:points, got '" + text + "'");
  }
  if (!std::isfinite(g.start) || !std::isfinite(g.stop) || g.points < 2) {
    throw FormatError("io", "grid needs finite ends and at least 2 points");
  }
  return g;
}

std::string dump(const Json& j) { return j.dump(); }

Json to_json(const MixtureMeasure& m) {
  Json atoms = Json::array();
  for (const Atom& a : m.atoms) atoms.push_back(Json{{"loc", a.loc}, {"w", a.w}});
  Json cont = Json::array();
  for (const auto& c : m.continuous) {
    const Support s = c.support();
    cont.push_back(Json{{"id", to_string(c.id)},
                        {"params", c.params},
                        {"scale", c.scale},
                        {"w", c.w},
                        {"support", Json::array({number(s.lo), number(s.hi)})}});
  }
  return Json{{"atoms", atoms}, {"continuous", cont}};
}

MixtureMeasure measure_from_json(const Json& j) {
  if (!j.is_object()) throw FormatError("io", "measure must be a JSON object");
  MixtureMeasure m;
  try {
    if (j.contains("atoms")) {
      for (const auto& a : j.at("atoms")) {
        m.atoms.push_back({as_number(a.at("loc"), "loc"), as_number(a.at("w"), "w")});
      }
    }
    if (j.contains("continuous")) {
      for (const auto& c : j.at("continuous")) {
        ContinuousComponent cc;
        cc.id = density_from_string(c.at("id").get<std::string>());
        for (const auto& p : c.at("params")) cc.params.push_back(as_number(p, "params"));
        cc.scale = c.contains("scale") ? as_number(c.at("scale"), "scale") : 1.0;
        cc.w = as_number(c.at("w"), "w");
        m.continuous.push_back(std::move(cc));
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("io", std::string("malformed measure: ") + e.what());
  }
  try {
    m.validate();
  } catch (const DomainError& e) {
    throw FormatError("io", std::string("invalid measure: ") + e.what());
  }
  return m;
}

MixtureMeasure read_measure_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("io", "cannot open measure file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("io", "'" + path + "' is not valid JSON: " + e.what());
  }
  return measure_from_json(j);
}

void write_measure_file(const std::string& path, const MixtureMeasure& m) {
  std::ofstream out(path);
  if (!out) throw FormatError("io", "cannot write '" + path + "'");
  out << to_json(m).dump(2) << '\n';
}

Json to_json(const KernelSpec& spec) {
  Json params = Json::object();
  switch (spec.family) {
    case Family::stable:
    case Family::kendall:
      params["alpha"] = spec.alpha;
      break;
    case Family::kucharczak:
      params["a"] = spec.a;
      params["r"] = spec.r;
      break;
    case Family::ku:
      params["alpha"] = spec.alpha;
      params["n"] = spec.n;
      break;
    case Family::diamond:
      params["p"] = spec.p;
      params["alpha"] = spec.alpha;
      break;
    case Family::kendall_type:
      params["c"] = spec.c;
      params["alpha"] = spec.alpha;
      params["p"] = spec.p;
      break;
    case Family::kingman:
      params["s"] = spec.s;
      break;
    default:
      break;
  }
  return Json{{"family", to_string(spec.family)}, {"params", params}};
}

Json to_json(const KsReport& r) {
  return Json{{"statistic", r.statistic},       {"n", r.n},
              {"m", r.m},                       {"critical_value", r.critical_value},
              {"significance", r.significance}, {"pass", r.pass}};
}

Json to_json(const ProductFormulaReport& r) {
  return Json{{"x", r.x},
              {"y", r.y},
              {"grid", r.grid},
              {"per_point", r.per_point},
              {"max_residual", r.max_residual}};
}

Json to_json(const PolyaReport& r) {
  return Json{{"ok", r.ok}, {"reason", r.reason}, {"witness", r.witness}};
}

void write_sample_csv(std::ostream& out, const SampleBatch& batch) {
  out << "# genconv v1 " << (batch.law_descriptor.empty() ? "{}" : batch.law_descriptor) << '\n';
  for (double v : batch.values) out << format_double(v) << '\n';
}

SampleBatch read_sample_csv(std::istream& in) {
  SampleBatch b;
  std::string line;
  if (!std::getline(in, line) || line.rfind("# genconv v1", 0) != 0) {
    throw FormatError("io", "sample file lacks the '# genconv v1' header");
  }
  b.law_descriptor = line.size() > 13 ? line.substr(13) : "{}";
  try {
    const Json d = Json::parse(b.law_descriptor);
    if (d.contains("seed") && d.at("seed").is_number_unsigned()) b.seed = d.at("seed").get<std::uint64_t>();
  } catch (const nlohmann::json::exception&) {
    throw FormatError("io", "sample header descriptor is not valid JSON");
  }
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ss(line);
    double v = 0.0;
    ss >> v;
    if (!ss || !(ss >> std::ws).eof()) {
      throw FormatError("io", "bad sample value on line " + std::to_string(lineno));
    }
    b.values.push_back(v);
  }
  if (b.values.empty()) throw FormatError("io", "sample file holds no values");
  return b;
}

SampleBatch read_sample_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("io", "cannot open sample file '" + path + "'");
  return read_sample_csv(in);
}

}  // namespace genconv::io

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "genconv/kernels.hpp"
#include "genconv/measures.hpp"
#include "genconv/samplers.hpp"
#include "genconv/stats.hpp"

namespace genconv::io {

using Json = nlohmann::ordered_json;

/// 17 significant digits; integral values keep a trailing ".0".
std::string format_double(double v);

Json to_json(const MixtureMeasure& m);
MixtureMeasure measure_from_json(const Json& j);
MixtureMeasure read_measure_file(const std::string& path);
void write_measure_file(const std::string& path, const MixtureMeasure& m);

Json to_json(const KernelSpec& spec);
Json to_json(const KsReport& r);
Json to_json(const ProductFormulaReport& r);
Json to_json(const PolyaReport& r);

/// `# genconv v1 <descriptor>` followed by one value per line.
void write_sample_csv(std::ostream& out, const SampleBatch& batch);
SampleBatch read_sample_csv(std::istream& in);
SampleBatch read_sample_file(const std::string& path);

struct Grid {
  double start = 0.0;
  double stop = 0.0;
  int points = 2;
  std::vector<double> values() const;
};

/// Parses `start:stop:points` with points >= 2.
Grid parse_grid(const std::string& text);

/// Compact single-line JSON with deterministic key order.
std::string dump(const Json& j);

}  // namespace genconv::io

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "genconv/io.hpp"
#include "genconv/kernels.hpp"

namespace genconv {

struct SuiteCase {
  std::string id;
  double statistic = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

struct SuiteReport {
  std::string suite;
  std::vector<SuiteCase> cases;
  bool pass = true;

  std::vector<std::string> failing() const;
};

struct SuiteOptions {
  std::optional<FamilySpec> family;  // restricts family-indexed suites
  std::uint64_t seed = 0;
  std::size_t n = 100000;  // Monte Carlo draws per case
};

const std::vector<std::string>& suite_names();

/// Case i draws from seed + i. Throws DomainError for an unknown name.
SuiteReport run_suite(const std::string& name, const SuiteOptions& opts,
                      const QuadratureConfig& cfg = default_quadrature());

io::Json to_json(const SuiteReport& r);

}  // namespace genconv

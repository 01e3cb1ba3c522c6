#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace isocx {

using json = nlohmann::ordered_json;

inline const std::vector<std::string> kSuites{"main", "gamma", "bar", "groups", "appendix"};

struct SuiteConfig {
  std::vector<std::string> suites = kSuites;
  std::vector<std::uint32_t> primes{2, 3, 5};
  unsigned r_max = 4;
  std::size_t trunc = 16;
  unsigned ext = 2;
  // ambient (Z/p^M)^2 for the groups suite; unset means M = max(r, 1) per case
  std::optional<unsigned> torsion;
  unsigned m_max = 6;
  int jobs = 1;
  std::uint64_t seed = 20261019;
  bool timing = false;
};

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
// throws ConfigError; runs before any case is built
void validate_config(const SuiteConfig& c);

struct CaseOutcome {
  json dims = json::array();
  json computed = json::object();
};

/// One verification case. `expected` is fixed when the case is built.
struct SuiteCase {
  std::string suite;
  json params;
  json expected;
  std::function<CaseOutcome()> run;
};

struct CaseRecord {
  std::string suite;
  json params, dims, expected, computed;
  bool pass = false;
  std::optional<double> millis;
};

// deterministic order: suites as listed in kSuites, then generation order
std::vector<SuiteCase> build_cases(const SuiteConfig& c);
// case-level OpenMP parallelism; exceptions become failing records
std::vector<CaseRecord> run_cases(const std::vector<SuiteCase>& cases, int jobs, bool timing);

json report_json(const std::vector<CaseRecord>& records);
std::string report_csv(const std::vector<CaseRecord>& records);
bool all_pass(const std::vector<CaseRecord>& records);

}  // namespace isocx

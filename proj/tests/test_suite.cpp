#include <doctest.h>

#include "isocx/suite.hpp"

using namespace isocx;

TEST_CASE("config validation rejects bad input before building cases") {
  SuiteConfig c;
  CHECK_NOTHROW(validate_config(c));
  auto bad = [&](auto edit) {
    SuiteConfig d = c;
    edit(d);
    CHECK_THROWS_AS(build_cases(d), ConfigError);
  };
  bad([](SuiteConfig& d) { d.primes = {4}; });
  bad([](SuiteConfig& d) { d.primes = {}; });
  bad([](SuiteConfig& d) { d.r_max = 6; });
  bad([](SuiteConfig& d) { d.trunc = 6; });  // p = 5 needs 7
  bad([](SuiteConfig& d) { d.ext = 3; });
  bad([](SuiteConfig& d) { d.torsion = 2; });
  bad([](SuiteConfig& d) { d.suites = {"nope"}; });
  SuiteConfig ok = c;
  ok.torsion = 4;
  CHECK_NOTHROW(validate_config(ok));
}

TEST_CASE("case order is fixed and duplicate primes collapse") {
  SuiteConfig a;
  a.suites = {"bar", "main"};
  a.primes = {3, 2, 3};
  SuiteConfig b = a;
  b.suites = {"main", "bar"};
  b.primes = {2, 3};
  const auto ca = build_cases(a), cb = build_cases(b);
  REQUIRE(ca.size() == cb.size());
  for (std::size_t i = 0; i < ca.size(); ++i) CHECK(ca[i].params == cb[i].params);
  CHECK(ca.front().suite == "main");
}

TEST_CASE("runner turns exceptions into failing records") {
  std::vector<SuiteCase> cases{
      {"x", {{"i", 0}}, {{"v", 1}}, [] { return CaseOutcome{json::array(), {{"v", 1}}}; }},
      {"x", {{"i", 1}}, {{"v", 1}}, []() -> CaseOutcome { throw std::runtime_error("boom"); }},
  };
  const auto rec = run_cases(cases, 2, false);
  CHECK(rec[0].pass);
  CHECK_FALSE(rec[1].pass);
  CHECK(rec[1].computed["error"] == "boom");
  CHECK_FALSE(all_pass(rec));
  CHECK(report_json(rec)[0]["millis"].is_null());
  const auto csv = report_csv(rec);
  CHECK(csv.rfind("suite,params,dims,expected,computed,pass,millis\n", 0) == 0);
  CHECK(csv.find("\"{\"\"i\"\":0}\"") != std::string::npos);
}

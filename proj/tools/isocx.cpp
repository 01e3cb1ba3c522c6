// isocx verify <suite>: run verification cases and write a JSON or CSV report.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "isocx/suite.hpp"

int main(int argc, char** argv) {
  using namespace isocx;
  CLI::App app{"Exact verification suites for the isogeny complexes"};
  app.require_subcommand(1);
  auto* verify = app.add_subcommand("verify", "run the verification suites");

  SuiteConfig cfg;
  std::string which = "all";
  std::vector<std::uint32_t> primes;
  unsigned torsion = 0;
  std::string out, format = "json";
  verify->add_option("suite", which, "main, gamma, bar, groups, appendix or all")
      ->check(CLI::IsMember({"main", "gamma", "bar", "groups", "appendix", "all"}));
  verify->add_option("--p", primes, "prime (repeatable); default 2 3 5");
  verify->add_option("--rmax", cfg.r_max, "largest isogeny degree exponent")->capture_default_str();
  verify->add_option("--trunc", cfg.trunc, "power series truncation")->capture_default_str();
  verify->add_option("--ext", cfg.ext, "specialization field degree (1 or 2)")->capture_default_str();
  verify->add_option("--torsion", torsion, "ambient torsion level M for the groups suite; default M = r");
  verify->add_option("--mmax", cfg.m_max, "largest m for the closure check")->capture_default_str();
  verify->add_option("--jobs", cfg.jobs, "cases run in parallel")->envname("ISOCX_JOBS")->capture_default_str();
  verify->add_option("--seed", cfg.seed, "seed for randomized cases")->capture_default_str();
  verify->add_option("--out", out, "report path; stdout if omitted");
  verify->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  verify->add_flag("--timing", cfg.timing, "record elapsed milliseconds (breaks byte-identical reports)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (which != "all") cfg.suites = {which};
  if (!primes.empty()) cfg.primes = primes;
  if (verify->count("--torsion")) cfg.torsion = torsion;

  std::vector<SuiteCase> cases;
  try {
    cases = build_cases(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  }

  const auto records = run_cases(cases, cfg.jobs, cfg.timing);
  const std::string text = format == "csv" ? report_csv(records) : report_json(records).dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out, std::ios::binary);
    if (!f) {
      std::cerr << "cannot write " << out << '\n';
      return 2;
    }
    f << text;
  }
  std::size_t failed = 0;
  for (const auto& r : records) failed += !r.pass;
  std::cerr << records.size() - failed << '/' << records.size() << " cases pass\n";
  return failed ? 1 : 0;
}

#include "isocx/suite.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <sstream>

#include "isocx/bar_complex.hpp"
#include "isocx/field.hpp"
#include "isocx/fm_polynomials.hpp"
#include "isocx/gamma.hpp"
#include "isocx/isogeny_ring.hpp"
#include "isocx/modular_complex.hpp"
#include "isocx/subgroup_complex.hpp"

namespace isocx {

namespace {

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t out = 1;
  while (e--) out *= b;
  return out;
}

// the table every concentration case is checked against: rank of the top group for r = 0, 1, 2, >= 3
std::uint64_t top_rank(std::uint32_t p, unsigned r) { return r == 0 ? 1 : r == 1 ? p + 1 : r == 2 ? p : 0; }

json profile_table(std::uint32_t p, unsigned r) {
  json out = json::array();
  for (unsigned q = 0; q <= r; ++q) out.push_back({q, q == r ? top_rank(p, r) : 0});
  return out;
}

json profile_json(const HomologyProfile& h) {
  json out = json::array();
  for (auto [d, n] : h.ranks) out.push_back({d, n});
  return out;
}

template <class T>
json dims_json(const std::vector<T>& v) {
  json out = json::array();
  for (auto x : v) out.push_back(std::uint64_t(x));
  return out;
}

// coefficient of T^r in (f - 1)^q, f = 1 / ((1 - T)(1 - pT)), for r, q <= n
std::vector<std::vector<std::int64_t>> bookkeeping_table(std::uint32_t p, unsigned n) {
  std::vector<std::int64_t> g(n + 1, 0);  // f - 1
  for (unsigned k = 1; k <= n; ++k) g[k] = std::int64_t((ipow(p, k + 1) - 1) / (p - 1));
  std::vector<std::vector<std::int64_t>> pw(n + 1, std::vector<std::int64_t>(n + 1, 0));
  pw[0][0] = 1;
  for (unsigned q = 1; q <= n; ++q)
    for (unsigned a = 0; a <= n; ++a)
      for (unsigned b = 1; a + b <= n; ++b) pw[q][a + b] += pw[q - 1][a] * g[b];
  // table[r][q]
  std::vector<std::vector<std::int64_t>> t(n + 1, std::vector<std::int64_t>(n + 1, 0));
  for (unsigned r = 0; r <= n; ++r)
    for (unsigned q = 0; q <= r; ++q) t[r][q] = pw[q][r];
  return t;
}

unsigned cap_r(const SuiteConfig& c, std::uint32_t p, unsigned hard) {
  unsigned r = std::min(c.r_max, hard);
  return p >= 5 ? std::min(r, hard - 1) : r;
}

void main_cases(const SuiteConfig& c, std::vector<SuiteCase>& out) {
  for (std::uint32_t p : c.primes) {
    for (unsigned r = 0; r <= cap_r(c, p, 5); ++r)
      out.push_back({"main", {{"case", "closed_point"}, {"p", p}, {"r", r}}, {{"profile", profile_table(p, r)}},
                     [p, r] {
                       auto cx = build_complex(p, r);
                       check_complex(cx);
                       return CaseOutcome{dims_json(cx.dims), {{"profile", profile_json(cohomology(cx))}}};
                     }});
    // every point of F_p, or of F_{p^2} when ext = 2
    const Field k = c.ext == 2 ? Field::quadratic(p) : Field::prime(p);
    for (unsigned r = 1; r <= cap_r(c, p, 3); ++r)
      for (Fq a : k.elements())
        out.push_back({"main",
                       {{"case", "specialization"}, {"p", p}, {"r", r}, {"ext", c.ext}, {"a", k.to_string(a)}},
                       {{"profile", profile_table(p, r)}},
                       [p, r, k, a] {
                         auto cx = build_complex(p, r, Specialization::field_point(a), k.spec());
                         check_complex(cx);
                         return CaseOutcome{dims_json(cx.dims), {{"profile", profile_json(cohomology(cx))}}};
                       }});
    {
      constexpr unsigned n = 5;
      const auto t = bookkeeping_table(p, n);
      json want = json::array();
      for (unsigned r = 0; r <= n; ++r)
        want.push_back(std::vector<std::int64_t>(t[r].begin(), t[r].begin() + r + 1));
      out.push_back({"main", {{"case", "rank_bookkeeping"}, {"p", p}, {"r_max", n}}, {{"dims", want}}, [p] {
                       json got = json::array();
                       for (unsigned r = 0; r <= n; ++r) got.push_back(dims_json(complex_dims(p, r)));
                       return CaseOutcome{json::array(), {{"dims", got}}};
                     }});
    }
    out.push_back({"main",
                   {{"case", "h2_cokernel"}, {"p", p}},
                   {{"coker_u1", p}, {"coker_s", p}, {"induced_iso", true}, {"square_commutes", true}},
                   [p] {
                     auto h = h2_cokernel_check(p);
                     return CaseOutcome{json::array(),
                                        {{"coker_u1", h.coker_u1},
                                         {"coker_s", h.coker_s},
                                         {"induced_iso", h.induced_iso},
                                         {"square_commutes", h.square_commutes}}};
                   }});
    for (unsigned r = 1; r <= std::min(c.r_max, 3u); ++r)
      out.push_back({"main", {{"case", "socle"}, {"p", p}, {"r", r}}, {{"injective_rank", sigma_pr(p, r + 1)}},
                     [p, r] {
                       auto s = socle_check(r, p);
                       return CaseOutcome{json::array({s.rows, s.cols}), {{"injective_rank", s.rank}}};
                     }});
    out.push_back({"main",
                   {{"case", "relations"}, {"p", p}},
                   {{"rank_u1", sigma_pr(p, 2)},
                    {"dim_a11", (p + 1) * (p + 1)},
                    {"coker_u1", p},
                    {"coker_s", p},
                    {"square_commutes", true},
                    {"vbar_kills_image", true},
                    {"induced_iso", true}},
                   [p] {
                     auto s = relations_sequence_check(p);
                     return CaseOutcome{json::array(),
                                        {{"rank_u1", s.rank_u1},
                                         {"dim_a11", s.dim_a11},
                                         {"coker_u1", s.coker_u1},
                                         {"coker_s", s.coker_s},
                                         {"square_commutes", s.square_commutes},
                                         {"vbar_kills_image", s.vbar_kills_image},
                                         {"induced_iso", s.induced_iso}}};
                   }});
  }
}

void gamma_cases(const SuiteConfig& c, std::vector<SuiteCase>& out) {
  for (std::uint32_t p : c.primes) {
    const unsigned top = cap_r(c, p, 4);
    for (unsigned r = 0; r <= top; ++r)
      out.push_back({"gamma",
                     {{"case", "admissible_basis"}, {"p", p}, {"r", r}},
                     {{"basis_size", sigma_pr(p, r)}, {"pairing_rank", sigma_pr(p, r)}},
                     [p, r] {
                       auto m = pairing_matrix(p, r, Field::prime(p));
                       return CaseOutcome{json::array({m.rows(), m.cols()}),
                                          {{"basis_size", admissible_basis(p, r).size()}, {"pairing_rank", rank_fq(m)}}};
                     }});
    const std::size_t trunc = c.trunc;
    for (unsigned n = 0; n <= top; ++n)
      for (unsigned r = 0; r <= n; ++r)
        out.push_back({"gamma",
                       {{"case", "duality"}, {"p", p}, {"r", r}, {"r2", n - r}},
                       {{"mismatches", 0}, {"ok", true}},
                       [p, r, n, trunc] {
                         GammaRing g(Field::prime(p), trunc);
                         auto d = duality_check(g, r, n - r);
                         return CaseOutcome{json::array({d.pairs, d.monomials}),
                                            {{"mismatches", d.mismatches}, {"ok", d.ok}}};
                       }});
    // 1000 triples per prime, split across F_p and F_{p^2} when ext = 2.
    // Exact coefficients: a truncated inner product loses x-adic precision once it moves left through a word.
    const std::size_t total = 1000;
    for (unsigned m = 1; m <= c.ext; ++m) {
      const std::size_t count = total / c.ext;
      const std::uint64_t seed = c.seed + 1000003ull * p + m;
      out.push_back({"gamma",
                     {{"case", "associativity"}, {"p", p}, {"ext", m}, {"seed", seed}, {"max_grade", top}},
                     {{"triples", count}, {"mismatches", 0}, {"order_violations", 0}},
                     [p, m, count, seed, top] {
                       GammaRing g(m == 2 ? Field::quadratic(p) : Field::prime(p), GammaRing::kExact);
                       auto a = associativity_check(g, top, count, seed);
                       return CaseOutcome{json::array(),
                                          {{"triples", a.triples},
                                           {"mismatches", a.mismatches},
                                           {"order_violations", a.order_violations}}};
                     }});
    }
  }
}

void bar_cases(const SuiteConfig& c, std::vector<SuiteCase>& out) {
  for (std::uint32_t p : c.primes)
    for (unsigned r = 0; r <= cap_r(c, p, 4); ++r)
      out.push_back({"bar",
                     {{"case", "bar_homology"}, {"p", p}, {"r", r}},
                     {{"profile", profile_table(p, r)}, {"dual", true}, {"gr_total", top_rank(p, r)}, {"gr_failed", 0}},
                     [p, r] {
                       auto bar = bar_complex(p, r);
                       auto h = bar_homology(bar);
                       auto d = bar_duality_check(bar);
                       auto g = gr_summary(bar);
                       return CaseOutcome{dims_json(bar.dims),
                                          {{"profile", profile_json(h)},
                                           {"dual", d.ok},
                                           {"gr_total", g.gr_total},
                                           {"gr_failed", g.failed_words}}};
                     }});
}

json support_json(const ReducedHomology& h) {
  json out = json::array();
  for (auto [d, n] : h.support()) out.push_back({d, n});
  return out;
}

void groups_cases(const SuiteConfig& c, std::vector<SuiteCase>& out) {
  for (std::uint32_t p : c.primes) {
    const std::vector<std::vector<unsigned>> types{{2}, {3}, {2, 1}, {2, 2}, {1, 1}, {1, 1, 1}};
    for (const auto& t : types) {
      const bool elementary = std::all_of(t.begin(), t.end(), [](unsigned e) { return e == 1; });
      const unsigned rank = unsigned(t.size());
      json support = json::array();
      if (elementary) support.push_back({int(rank) - 2, ipow(p, rank * (rank - 1) / 2)});
      out.push_back({"groups",
                     {{"case", "order_complex"}, {"p", p}, {"type", t}},
                     {{"support", support}, {"torsion_free", true}},
                     [p, t] {
                       auto x = order_complex({p, t});
                       auto h = reduced_homology(x);
                       json dims = json::array();
                       for (int d = 0; d <= x.dimension(); ++d) dims.push_back(x.count(d));
                       return CaseOutcome{dims, {{"support", support_json(h)}, {"torsion_free", h.torsion_free()}}};
                     }});
    }
    for (unsigned r = 0; r <= std::min(c.r_max, 3u); ++r) {
      const unsigned m = c.torsion ? *c.torsion : std::max(r, 1u);
      out.push_back({"groups",
                     {{"case", "group_complex"}, {"p", p}, {"r", r}, {"M", m}},
                     {{"profile", profile_table(p, r)}, {"product_decomposition", true}},
                     [p, r, m] {
                       auto gc = build_group_complex(p, r, m);
                       auto pd = product_decomposition_check(p, r, m);
                       return CaseOutcome{dims_json(gc.complex.dims),
                                          {{"profile", profile_json(cohomology(gc.complex))},
                                           {"product_decomposition", pd.ok}}};
                     }});
    }
  }
}

void appendix_cases(const SuiteConfig& c, std::vector<SuiteCase>& out) {
  for (std::uint64_t m = 1; m <= 16; ++m)
    for (std::uint64_t n = 1; m * n <= 16; ++n)
      out.push_back({"appendix", {{"case", "ideal_membership"}, {"m", m}, {"n", n}}, {{"member", true}}, [m, n] {
                       auto res = ideal_membership(m, n);
                       return CaseOutcome{json::array(), {{"member", res.member}}};
                     }});
  std::vector<std::function<FiniteRing()>> rings;
  for (std::uint32_t n = 2; n <= 30; ++n) rings.push_back([n] { return FiniteRing::integers_mod(n); });
  for (std::uint32_t q : {4u, 8u, 9u}) rings.push_back([q] { return FiniteRing::galois(q); });
  rings.push_back([] { return FiniteRing::truncated(2, 3); });
  const unsigned mmax = c.m_max;
  for (const auto& make : rings)
    out.push_back({"appendix",
                   {{"case", "category_closure"}, {"ring", make().name()}, {"m_max", mmax}},
                   {{"counterexamples", 0}},
                   [make, mmax] {
                     auto rep = category_closure_check(make(), mmax);
                     return CaseOutcome{json::array({rep.triples, rep.composable}),
                                        {{"counterexamples", rep.counterexamples}}};
                   }});
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

void validate_config(const SuiteConfig& c) {
  if (c.suites.empty()) throw ConfigError("no suite selected");
  for (const auto& s : c.suites)
    if (std::find(kSuites.begin(), kSuites.end(), s) == kSuites.end()) throw ConfigError("unknown suite: " + s);
  if (c.primes.empty()) throw ConfigError("need at least one --p");
  for (std::uint32_t p : c.primes) {
    if (!is_prime(p)) throw ConfigError("p = " + std::to_string(p) + " is not prime");
    if (c.trunc < p + 2) throw ConfigError("--trunc must be at least p + 2 (p = " + std::to_string(p) + ")");
  }
  if (c.r_max > 5) throw ConfigError("--rmax must be at most 5");
  if (c.ext != 1 && c.ext != 2) throw ConfigError("--ext must be 1 or 2");
  if (c.torsion) {
    if (*c.torsion < c.r_max) throw ConfigError("--torsion must be at least --rmax");
    if (*c.torsion == 0 || 2 * *c.torsion > 9) throw ConfigError("--torsion must lie in 1..4");
  }
  if (c.m_max < 1) throw ConfigError("--mmax must be positive");
  if (c.jobs < 1) throw ConfigError("--jobs must be positive");
}

std::vector<SuiteCase> build_cases(const SuiteConfig& c) {
  validate_config(c);
  std::vector<std::uint32_t> primes = c.primes;
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  SuiteConfig cfg = c;
  cfg.primes = primes;
  std::vector<SuiteCase> out;
  for (const auto& s : kSuites) {
    if (std::find(c.suites.begin(), c.suites.end(), s) == c.suites.end()) continue;
    if (s == "main") main_cases(cfg, out);
    if (s == "gamma") gamma_cases(cfg, out);
    if (s == "bar") bar_cases(cfg, out);
    if (s == "groups") groups_cases(cfg, out);
    if (s == "appendix") appendix_cases(cfg, out);
  }
  return out;
}

std::vector<CaseRecord> run_cases(const std::vector<SuiteCase>& cases, int jobs, bool timing) {
  std::vector<CaseRecord> out(cases.size());
  const auto n = std::ptrdiff_t(cases.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(std::max(jobs, 1))
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const SuiteCase& sc = cases[std::size_t(i)];
    CaseRecord& rec = out[std::size_t(i)];
    rec.suite = sc.suite;
    rec.params = sc.params;
    rec.expected = sc.expected;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      CaseOutcome o = sc.run();
      rec.dims = std::move(o.dims);
      rec.computed = std::move(o.computed);
    } catch (const std::exception& e) {
      rec.dims = json::array();
      rec.computed = {{"error", e.what()}};
    }
    const auto t1 = std::chrono::steady_clock::now();
    rec.pass = rec.expected == rec.computed;
    if (timing) rec.millis = std::chrono::duration<double, std::milli>(t1 - t0).count();
  }
  return out;
}

json report_json(const std::vector<CaseRecord>& records) {
  json out = json::array();
  for (const auto& r : records)
    out.push_back({{"suite", r.suite},
                   {"params", r.params},
                   {"dims", r.dims},
                   {"expected", r.expected},
                   {"computed", r.computed},
                   {"pass", r.pass},
                   {"millis", r.millis ? json(*r.millis) : json(nullptr)}});
  return out;
}

std::string report_csv(const std::vector<CaseRecord>& records) {
  std::ostringstream os;
  os << "suite,params,dims,expected,computed,pass,millis\n";
  for (const auto& r : records) {
    os << csv_field(r.suite) << ',' << csv_field(r.params.dump()) << ',' << csv_field(r.dims.dump()) << ','
       << csv_field(r.expected.dump()) << ',' << csv_field(r.computed.dump()) << ',' << (r.pass ? "true" : "false")
       << ',' << (r.millis ? json(*r.millis).dump() : std::string()) << '\n';
  }
  return os.str();
}

bool all_pass(const std::vector<CaseRecord>& records) {
  return std::all_of(records.begin(), records.end(), [](const CaseRecord& r) { return r.pass; });
}

}  // namespace isocx

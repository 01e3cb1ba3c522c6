// One PASS/FAIL line per acceptance criterion. Exit status is the number of failures.
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "isocx/bar_complex.hpp"
#include "isocx/fm_polynomials.hpp"
#include "isocx/gamma.hpp"
#include "isocx/isogeny_ring.hpp"
#include "isocx/modular_complex.hpp"
#include "isocx/subgroup_complex.hpp"
#include "isocx/suite.hpp"

using namespace isocx;

namespace {

using Support = std::vector<std::pair<int, std::size_t>>;

std::size_t h_top(std::uint32_t p, unsigned r) { return r == 0 ? 1 : r == 1 ? p + 1 : r == 2 ? p : 0; }

Support concentrated(std::uint32_t p, unsigned r) {
  if (h_top(p, r) == 0) return {};
  return {{int(r), h_top(p, r)}};
}

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t v = 1;
  while (e--) v *= b;
  return v;
}

bool c1_main_theorem(std::string& note) {
  for (std::uint32_t p : {2u, 3u, 5u})
    for (unsigned r = 0; r <= (p == 5 ? 3u : 4u); ++r)
      if (cohomology(build_complex(p, r)).support() != concentrated(p, r)) {
        note = "p=" + std::to_string(p) + " r=" + std::to_string(r);
        return false;
      }
  return true;
}

bool c2_specialization(std::string& note) {
  std::size_t points = 0;
  for (std::uint32_t p : {2u, 3u})
    for (const Field& k : {Field::prime(p), Field::quadratic(p)})
      for (unsigned r = 0; r <= 3; ++r)
        for (Fq a : k.elements()) {
          ++points;
          if (cohomology(build_complex(p, r, Specialization::field_point(a), k.spec())).support() != concentrated(p, r)) {
            note = "p=" + std::to_string(p) + " r=" + std::to_string(r) + " a=" + k.to_string(a);
            return false;
          }
        }
  note = std::to_string(points) + " specializations";
  return true;
}

bool c3_bookkeeping(std::string& note) {
  for (std::uint32_t p : {2u, 3u}) {
    // (f - 1)^q with f = sum_n (1 + p + .. + p^n) T^n
    constexpr unsigned n = 5;
    std::vector<std::vector<std::int64_t>> pw(n + 1, std::vector<std::int64_t>(n + 1, 0));
    pw[0][0] = 1;
    for (unsigned q = 1; q <= n; ++q)
      for (unsigned a = 0; a <= n; ++a)
        for (unsigned b = 1; a + b <= n; ++b) pw[q][a + b] += pw[q - 1][a] * std::int64_t(sigma_pr(p, b));
    for (unsigned r = 0; r <= n; ++r) {
      const auto dims = complex_dims(p, r);
      for (unsigned q = 0; q <= r; ++q)
        if (std::int64_t(dims[q]) != pw[q][r]) {
          note = "p=" + std::to_string(p) + " r=" + std::to_string(r) + " q=" + std::to_string(q);
          return false;
        }
    }
  }
  return true;
}

bool c4_cokernel(std::string& note) {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    auto h = h2_cokernel_check(p);
    if (!h.ok || !h.induced_iso || h.coker_u1 != p || h.coker_s != p) {
      note = "p=" + std::to_string(p);
      return false;
    }
  }
  return true;
}

bool c5_gamma(std::string& note) {
  std::size_t triples = 0;
  for (std::uint32_t p : {2u, 3u}) {
    const Field k = Field::prime(p);
    for (unsigned r = 0; r <= 4; ++r) {
      if (admissible_basis(p, r).size() != sigma_pr(p, r) || rank_fq(pairing_matrix(p, r, k)) != sigma_pr(p, r)) {
        note = "basis/pairing p=" + std::to_string(p) + " r=" + std::to_string(r);
        return false;
      }
    }
    GammaRing g(k, 16);
    for (unsigned n = 0; n <= 4; ++n)
      for (unsigned r = 0; r <= n; ++r)
        if (!duality_check(g, r, n - r).ok) {
          note = "duality p=" + std::to_string(p) + " r=" + std::to_string(r) + " r'=" + std::to_string(n - r);
          return false;
        }
    for (const Field& f : {Field::prime(p), Field::quadratic(p)}) {
      auto a = associativity_check(GammaRing(f, GammaRing::kExact), 4, 260, 7 + p + f.degree());
      triples += a.triples;
      if (!a.ok) {
        note = "associativity p=" + std::to_string(p);
        return false;
      }
    }
  }
  note = std::to_string(triples) + " triples";
  return triples >= 1000;
}

bool c6_bar(std::string& note) {
  for (std::uint32_t p : {2u, 3u})
    for (unsigned r = 0; r <= 4; ++r) {
      auto bar = bar_complex(p, r);
      auto gr = gr_summary(bar);
      if (bar_homology(bar).support() != concentrated(p, r) || !gr.ok || gr.gr_total != h_top(p, r) ||
          !bar_duality_check(bar).ok) {
        note = "p=" + std::to_string(p) + " r=" + std::to_string(r);
        return false;
      }
    }
  return true;
}

bool c7_solomon_tits(std::string& note) {
  for (std::uint32_t p : {2u, 3u}) {
    for (auto t : {std::vector<unsigned>{2}, {3}, {2, 1}, {2, 2}}) {
      auto h = reduced_homology(order_complex({p, t}));
      if (!h.support().empty() || !h.torsion_free()) {
        note = "non-elementary p=" + std::to_string(p);
        return false;
      }
    }
    for (unsigned r : {2u, 3u}) {
      auto h = reduced_homology(order_complex({p, std::vector<unsigned>(r, 1)}));
      if (h.support() != Support{{int(r) - 2, ipow(p, r * (r - 1) / 2)}} || !h.torsion_free()) {
        note = "elementary p=" + std::to_string(p) + " r=" + std::to_string(r);
        return false;
      }
    }
  }
  return true;
}

bool c8_group_complex(std::string& note) {
  for (std::uint32_t p : {2u, 3u})
    for (unsigned r = 0; r <= 3; ++r) {
      auto pd = product_decomposition_check(p, r, std::max(r, 1u));
      if (!pd.ok || pd.total.support() != concentrated(p, r)) {
        note = "p=" + std::to_string(p) + " r=" + std::to_string(r);
        return false;
      }
    }
  return true;
}

bool c9_appendix(std::string& note) {
  for (std::uint64_t m = 1; m <= 16; ++m)
    for (std::uint64_t n = 1; m * n <= 16; ++n)
      if (!ideal_membership(m, n).member) {
        note = "membership m=" + std::to_string(m) + " n=" + std::to_string(n);
        return false;
      }
  for (std::uint32_t n = 2; n <= 30; ++n) {
    auto rep = category_closure_check(FiniteRing::integers_mod(n), 6);
    if (!rep.ok || rep.counterexamples) {
      note = "closure Z/" + std::to_string(n);
      return false;
    }
  }
  return true;
}

bool c10_lemmas(std::string& note) {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (unsigned r = 1; r <= 3; ++r)
      if (!socle_check(r, p).ok) {
        note = "socle p=" + std::to_string(p) + " r=" + std::to_string(r);
        return false;
      }
    if (!relations_sequence_check(p).ok) {
      note = "relations p=" + std::to_string(p);
      return false;
    }
  }
  return true;
}

bool c11_determinism(std::string& note) {
  SuiteConfig cfg;
  const auto cases = build_cases(cfg);
  const auto a = report_json(run_cases(cases, 8, false)).dump(2);
  const auto b = report_json(run_cases(build_cases(cfg), 2, false)).dump(2);
  note = std::to_string(cases.size()) + " cases";
  return a == b;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<bool(std::string&)>>> criteria{
      {"main theorem concentration at the closed point", c1_main_theorem},
      {"specialization sweep over F_p and F_{p^2}", c2_specialization},
      {"rank bookkeeping against (f(T)-1)^q", c3_bookkeeping},
      {"coker(u_1) -> coker(s) isomorphism of dimension p", c4_cokernel},
      {"Gamma basis, pairing, duality, associativity", c5_gamma},
      {"bar homology and gr pieces", c6_bar},
      {"order complexes of p-groups over Z", c7_solomon_tits},
      {"group complex and product decomposition", c8_group_complex},
      {"ideal membership and category closure", c9_appendix},
      {"socle and relations sequence", c10_lemmas},
      {"byte-identical reports across job counts", c11_determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    std::string note;
    bool ok = false;
    try {
      ok = criteria[i].second(note);
    } catch (const std::exception& e) {
      note = std::string("exception: ") + e.what();
    }
    failed += !ok;
    std::printf("criterion %zu: %s  %s%s%s\n", i + 1, ok ? "PASS" : "FAIL", criteria[i].first.c_str(),
                note.empty() ? "" : "  [", note.empty() ? "" : (note + "]").c_str());
    std::fflush(stdout);
  }
  return failed;
}

#include <doctest.h>

#include "isocx/fm_polynomials.hpp"
#include "isocx/isogeny_ring.hpp"

using namespace isocx;

namespace {

IntBivarPoly from_list(std::initializer_list<std::tuple<unsigned, unsigned, int>> ts) {
  IntBivarPoly f;
  for (auto [i, j, c] : ts) f.terms[{i, j}] = c;
  return f;
}

}  // namespace

TEST_CASE("f_m examples") {
  CHECK(f_m(1) == from_list({{1, 0, 1}, {0, 1, -1}}));
  CHECK(f_m(2) == from_list({{3, 0, 1}, {2, 2, -1}, {1, 1, -1}, {0, 3, 1}}));
  // (x - y^4)(x^2 - y^2)(x^4 - y), expanded with sympy
  CHECK(f_m(4) == from_list({{7, 0, 1}, {6, 4, -1}, {5, 2, -1}, {4, 6, 1}, {3, 1, -1}, {2, 5, 1}, {1, 3, 1}, {0, 7, -1}}));
  CHECK_THROWS_AS(f_m(0), std::invalid_argument);
}

TEST_CASE("f_m degrees and unit leading coefficients") {
  for (std::uint64_t m = 1; m <= 16; ++m) {
    const auto f = f_m(m);
    CHECK(f.deg_x() == sigma(m));
    CHECK(f.deg_y() == sigma(m));
    CHECK(f.terms.size() <= (std::size_t(1) << num_divisors(m)));
    const BigInt sign = num_divisors(m) % 2 ? -1 : 1;
    std::size_t top_y = 0, top_x = 0;
    for (const auto& [e, c] : f.terms) {
      if (e.second == sigma(m)) {
        ++top_y;
        CHECK(e.first == 0);
        CHECK(c == sign);
      }
      if (e.first == sigma(m)) {
        ++top_x;
        CHECK(e.second == 0);
        CHECK(c == 1);
      }
    }
    CHECK(top_x == 1);
    CHECK(top_y == 1);
  }
}

TEST_CASE("f_m at p^r reduces to the isogeny polynomial") {
  for (std::uint32_t p : {2u, 3u, 5u})
    for (unsigned r = 0; r <= (p == 5 ? 2u : 3u); ++r) {
      std::uint64_t m = 1;
      for (unsigned i = 0; i < r; ++i) m *= p;
      std::map<std::pair<unsigned, unsigned>, BigInt> reduced;
      for (const auto& [e, c] : f_m(m).terms) {
        BigInt v = c % p;
        if (v < 0) v += p;
        if (v != 0) reduced[e] = v;
      }
      std::map<std::pair<unsigned, unsigned>, BigInt> want;
      for (const auto& t : f_poly(p, r).terms) {
        BigInt v = t.sign % BigInt(p);
        if (v < 0) v += p;
        want[{unsigned(t.u_exp), unsigned(t.v_exp)}] = v;
      }
      CHECK(reduced == want);
    }
}

TEST_CASE("ideal membership for mn <= 16") {
  CHECK(ideal_membership(1, 1).member);
  CHECK(ideal_membership(2, 1).member);
  CHECK(ideal_membership(2, 2).member);
  for (std::uint64_t m = 1; m <= 16; ++m)
    for (std::uint64_t n = 1; m * n <= 16; ++n) CHECK(ideal_membership(m, n).member);
  CHECK_THROWS_AS(ideal_membership(16, 16, 1000), std::length_error);
}

TEST_CASE("finite rings") {
  auto z4 = FiniteRing::integers_mod(4);
  CHECK(eval_f(z4, f_m(2), 2, 2) == 0);
  CHECK(eval_f(z4, f_m(4), 2, 2) == 0);
  CHECK(eval_f_product(z4, 2, 2, 2) == 0);
  auto f4 = FiniteRing::galois(4);
  CHECK(f4.size() == 4);
  // every nonzero element is a unit
  for (std::uint32_t a = 1; a < 4; ++a) {
    bool unit = false;
    for (std::uint32_t b = 1; b < 4; ++b) unit |= f4.mul(a, b) == f4.one();
    CHECK(unit);
  }
  for (std::uint32_t q : {8u, 9u}) {
    auto f = FiniteRing::galois(q);
    for (std::uint32_t a = 1; a < q; ++a) CHECK(f.pow(a, q - 1) == f.one());
  }
  auto t3 = FiniteRing::truncated(2, 3);
  CHECK(t3.size() == 8);
  CHECK(t3.pow(2, 3) == 0);  // t^3 = 0
  CHECK(t3.pow(2, 2) != 0);
  CHECK_THROWS_AS(FiniteRing::galois(6), std::invalid_argument);
  CHECK_THROWS_AS(FiniteRing::truncated(4, 2), std::invalid_argument);
}

TEST_CASE("expanded and factored evaluation agree") {
  for (const auto& r : {FiniteRing::integers_mod(12), FiniteRing::galois(9), FiniteRing::truncated(3, 2)})
    for (std::uint64_t m = 1; m <= 12; ++m) {
      const auto f = f_m(m);
      for (std::uint32_t a = 0; a < r.size(); ++a)
        for (std::uint32_t b = 0; b < r.size(); ++b) CHECK(eval_f(r, f, a, b) == eval_f_product(r, m, a, b));
    }
}

TEST_CASE("composition closes over Z/n, F_q and F_2[t]/(t^3)") {
  for (std::uint32_t n = 2; n <= 30; ++n) {
    auto rep = category_closure_check(FiniteRing::integers_mod(n), 6);
    CHECK_MESSAGE(rep.ok, rep.ring);
    CHECK(rep.composable > 0);
  }
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) CHECK(category_closure_check(FiniteRing::galois(q), 6).ok);
  CHECK(category_closure_check(FiniteRing::truncated(2, 3), 6).ok);
}

TEST_CASE("parallel closure check matches the serial reference") {
  for (const auto& r : {FiniteRing::integers_mod(8), FiniteRing::integers_mod(18), FiniteRing::galois(4)}) {
    auto a = category_closure_check(r, 4), b = category_closure_check_serial(r, 4);
    CHECK(a.composable == b.composable);
    CHECK(a.counterexamples == b.counterexamples);
    CHECK(a.triples == b.triples);
  }
  CHECK_THROWS_AS(category_closure_check(FiniteRing::integers_mod(30), 6, 1000), std::length_error);
}

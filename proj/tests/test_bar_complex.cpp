#include <doctest.h>

#include "isocx/bar_complex.hpp"

using namespace isocx;

TEST_CASE("bar complex dimensions") {
  auto b22 = bar_complex(2, 2);
  CHECK(b22.dims == std::vector<std::size_t>{0, 7, 9});
  auto b1 = bar_complex(3, 1);
  CHECK(b1.dims == std::vector<std::size_t>{0, 4});
  CHECK(bar_homology(b1).support() == std::vector<std::pair<int, std::size_t>>{{1, 4}});
  auto b23 = bar_complex(2, 3);
  CHECK(b23.dims[3] == 27);
  for (std::uint32_t p : {2u, 3u})
    for (unsigned r = 0; r <= 4; ++r) {
      auto dims = complex_dims(p, r);
      auto bar = bar_complex(p, r);
      for (unsigned q = 0; q <= r; ++q) CHECK(bar.dims[q] == dims[q]);
    }
}

TEST_CASE("bar homology examples") {
  CHECK(bar_homology(2, 2).support() == std::vector<std::pair<int, std::size_t>>{{2, 2}});
  CHECK(bar_homology(2, 4).support().empty());
  CHECK(bar_homology(2, 0).support() == std::vector<std::pair<int, std::size_t>>{{0, 1}});
}

TEST_CASE("bar homology matches the modular complex") {
  for (std::uint32_t p : {2u, 3u}) {
    const std::vector<std::size_t> want{1, p + 1, p, 0, 0};
    for (unsigned r = 1; r <= 4; ++r) {
      auto bar = bar_complex(p, r);
      auto h = bar_homology(bar);
      auto c = cohomology(build_complex(p, r));
      for (unsigned q = 0; q <= r; ++q) {
        CHECK(h.rank(int(q)) == (q == r ? want[r] : 0));
        CHECK(h.rank(int(q)) == c.rank(int(q)));
      }
    }
  }
}

TEST_CASE("bar boundary is dual to the modular coboundary") {
  for (std::uint32_t p : {2u, 3u})
    for (unsigned r = 1; r <= (p == 2 ? 4u : 3u); ++r) {
      auto rep = bar_duality_check(bar_complex(p, r));
      CHECK(rep.ok);
    }
  const Field k4 = Field::quadratic(2);
  CHECK(bar_duality_check(bar_complex(2, 3, k4)).ok);
}

TEST_CASE("gr pieces follow the face model") {
  // all zeros: every splitting is admissible, C(r-1, q-1) of them, acyclic
  auto z = gr_piece_check(2, 3, {0, 0, 0});
  CHECK(z.ok);
  CHECK(z.dims == std::vector<std::size_t>{0, 1, 2, 1});
  CHECK(z.model_rank == 0);
  // (1,0): the descent must be cut, so only the two-segment splitting survives
  auto d = gr_piece_check(2, 2, {1, 0});
  CHECK(d.ok);
  CHECK(d.dims == std::vector<std::size_t>{0, 0, 1});
  CHECK(d.ranks == std::vector<std::size_t>{0, 0, 1});
  auto single = gr_piece_check(3, 1, {2});
  CHECK(single.ok);
  CHECK(single.ranks == std::vector<std::size_t>{0, 1});
  CHECK_THROWS_AS(gr_piece_check(2, 2, {1}), std::invalid_argument);
}

TEST_CASE("gr ranks sum to the bar homology") {
  for (std::uint32_t p : {2u, 3u})
    for (unsigned r = 1; r <= 4; ++r) {
      auto s = gr_summary(bar_complex(p, r));
      CHECK(s.ok);
      CHECK(s.failed_words == 0);
      CHECK(s.gr_total == s.bar_total);
    }
}

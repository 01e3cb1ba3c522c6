#pragma once

#include <cstdint>
#include <vector>

#include "isocx/field.hpp"
#include "isocx/gamma.hpp"
#include "isocx/matrix.hpp"
#include "isocx/modular_complex.hpp"

namespace isocx {

// one tensor factor per segment
using BarTuple = std::vector<Word>;

/// Normalized bar complex of Gamma in total length r, reduced mod x on the left.
struct BarComplexOverK {
  std::uint32_t p = 2;
  unsigned r = 0;
  Field field;
  // basis[q]: tuples of admissible words, compositions in lex order
  std::vector<std::vector<BarTuple>> basis;
  std::vector<std::size_t> dims;
  // bd[q]: K_q -> K_{q-1}, shape dims[q-1] x dims[q]; bd[0] is empty
  std::vector<MatrixFq> bd;
};

Word concat(const BarTuple& t);

BarComplexOverK bar_complex(std::uint32_t p, unsigned r, const Field& k);
BarComplexOverK bar_complex(std::uint32_t p, unsigned r);

// degrees 0..r; throws std::logic_error if a boundary squares to nonzero
HomologyProfile bar_homology(const BarComplexOverK& bar);
HomologyProfile bar_homology(std::uint32_t p, unsigned r);

// Pi_q[b][m] = <b, m> at x = 0, b a bar tuple, m a monomial of the dual modular complex
MatrixFq bar_pairing(const BarComplexOverK& bar, unsigned q);

struct BarDualityReport {
  bool ok = false;
  std::vector<bool> pairing_invertible;  // per q
  std::vector<bool> boundary_dual;       // per q >= 2
};
BarDualityReport bar_duality_check(const BarComplexOverK& bar);

struct GrPieceReport {
  Word word;
  std::size_t descents = 0;  // |T|
  std::vector<std::size_t> dims, model_dims;  // per q = 0..r
  std::vector<std::size_t> ranks;             // gr homology per q
  std::size_t model_rank = 0;                  // in degree r
  bool filtered = true;  // boundary never raises the concatenated word
  bool ok = false;
};
GrPieceReport gr_piece_check(const BarComplexOverK& bar, const Word& word);
GrPieceReport gr_piece_check(std::uint32_t p, unsigned r, const Word& word);

struct GrSummary {
  bool ok = false;
  std::size_t words = 0;
  std::size_t gr_total = 0;
  std::size_t bar_total = 0;
  std::size_t failed_words = 0;
};
// every word of length r, plus sum of gr ranks against the total
GrSummary gr_summary(const BarComplexOverK& bar);

}  // namespace isocx

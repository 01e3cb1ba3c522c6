#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <deque>
#include <mutex>
#include <vector>

#include "isocx/field.hpp"
#include "isocx/isogeny_ring.hpp"
#include "isocx/matrix.hpp"
#include "isocx/series.hpp"

namespace isocx {

using Word = std::vector<unsigned>;

bool is_admissible(const Word& w);
// I < J iff the last differing letter of I is larger; throws on length mismatch
std::strong_ordering order_compare(const Word& a, const Word& b);
struct OrderLess {
  bool operator()(const Word& a, const Word& b) const { return order_compare(a, b) < 0; }
};

// all admissible words of length r, ascending in the monomial order
std::vector<Word> admissible_basis(std::uint32_t p, unsigned r);

/// Left-A combination of admissible words of one length.
struct GammaElement {
  Field field;
  std::uint32_t p = 2;
  unsigned grade = 0;
  std::size_t trunc = 16;
  std::map<Word, TruncSeries> coeffs;

  TruncSeries coeff(const Word& w) const;
  friend bool operator==(const GammaElement& a, const GammaElement& b) {
    return a.p == b.p && a.grade == b.grade && a.trunc == b.trunc && a.field == b.field && a.coeffs == b.coeffs;
  }
};

// words of arbitrary admissibility with exact polynomial coefficients
using RawGamma = std::map<Word, TruncSeries>;

struct NormalizeStats {
  std::uint64_t rewrites = 0;
  std::uint64_t order_violations = 0;
};

/// Arithmetic in Gamma over a fixed field.
///
/// Coefficients are handled as exact polynomials (the stored representatives);
/// results are truncated to trunc() only when an element is produced.
class GammaRing {
 public:
  static constexpr std::size_t kExact = std::size_t(1) << 40;

  GammaRing(const Field& field, std::size_t trunc);

  const Field& field() const { return field_; }
  std::uint32_t p() const { return p_; }
  std::size_t trunc() const { return trunc_; }

  GammaElement unit() const;
  GammaElement scalar(const TruncSeries& f) const;
  GammaElement generator(unsigned i) const;
  // the normalized monomial P_I
  GammaElement monomial(const Word& w) const;
  GammaElement from_terms(unsigned grade, const std::map<Word, TruncSeries>& terms) const;

  // row i of X: P_i x = sum_j X_ij P_j
  std::vector<TruncSeries> right_mult_row(unsigned i) const;
  // P_i f as coefficients on P_0..P_p
  std::vector<TruncSeries> right_mult_letter(unsigned i, const TruncSeries& f) const;
  // P_w f as a raw combination of words of the same length
  RawGamma right_mult_word(const Word& w, const TruncSeries& f) const;
  GammaElement right_mult(const GammaElement& e, const TruncSeries& f) const;

  GammaElement normalize(const RawGamma& raw, unsigned grade, NormalizeStats* stats = nullptr) const;
  RawGamma normalize_raw(const RawGamma& raw, NormalizeStats* stats = nullptr) const;
  GammaElement gamma_mul(const GammaElement& a, const GammaElement& b, NormalizeStats* stats = nullptr) const;

  TruncSeries exact(const TruncSeries& f) const { return f.with_trunc(kExact); }

 private:
  const std::vector<std::vector<TruncSeries>>& x_power(std::size_t n) const;
  const RawGamma& word_times_x_power(const Word& w, std::size_t n) const;

  Field field_;
  std::uint32_t p_;
  std::size_t trunc_;
  mutable std::recursive_mutex mu_;
  mutable std::deque<std::vector<std::vector<TruncSeries>>> xpow_;
  mutable std::map<std::pair<Word, std::size_t>, RawGamma> word_cache_;
};

// <P_I, g> for g in A_{r_1..r_q} with sum r_i = |I|, via u-maps into A_{1,..,1}
TruncSeries pairing(const Word& w, const IsogRingElement& g);

// rows: admissible words of length r; columns: monomials of A_r; x_0 -> 0
MatrixFq pairing_matrix(std::uint32_t p, unsigned r, const Field& k);

struct DualityReport {
  bool ok = false;
  std::size_t pairs = 0;
  std::size_t monomials = 0;
  std::size_t mismatches = 0;
  std::size_t pairing_rank = 0;
  std::size_t basis_size = 0;
};
// mu dual to u_1, compared mod x^precision, exhaustive over basis pairs and monomials of A_{r+r2}
DualityReport duality_check(const GammaRing& ring, unsigned r, unsigned r2, std::size_t precision = 2);

}  // namespace isocx

namespace isocx {

struct AssociativityReport {
  bool ok = false;
  std::size_t triples = 0;
  std::size_t mismatches = 0;
  std::uint64_t rewrites = 0;
  std::uint64_t order_violations = 0;
};
// (ab)c = a(bc) on seeded random triples with total grade <= max_grade
AssociativityReport associativity_check(const GammaRing& ring, unsigned max_grade, std::size_t triples,
                                        std::uint64_t seed);

}  // namespace isocx

#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "isocx/field.hpp"
#include "isocx/matrix.hpp"
#include "isocx/series.hpp"

namespace isocx {

/// F_{p^r}(u,v) = prod_{i+j=r} (u^{p^i} - v^{p^j}) with coefficients +-1.
struct FIsogPoly {
  struct Term {
    std::uint64_t u_exp;
    std::uint64_t v_exp;
    int sign;
  };
  std::uint32_t p = 2;
  unsigned r = 0;
  std::vector<Term> terms;  // sorted by (v_exp desc, u_exp asc)

  std::uint64_t v_degree() const { return terms.front().v_exp; }
  int leading_sign() const { return terms.front().sign; }
};

FIsogPoly f_poly(std::uint32_t p, unsigned r);

struct ChainShape {
  std::uint32_t p = 2;
  std::vector<unsigned> rs;
  std::size_t trunc = 16;

  std::size_t q() const { return rs.size(); }
  // sigma(p^{r_i}) for i = 1..q (1-based)
  std::uint64_t bound(std::size_t i) const { return sigma_pr(p, rs.at(i - 1)); }
  std::uint64_t fiber_dim() const;

  friend bool operator==(const ChainShape&, const ChainShape&) = default;
};

void validate_shape(const ChainShape& shape, const Field& field);

// shape with entries k and k+1 (1-based) replaced by their sum
std::vector<unsigned> merge_shape(const std::vector<unsigned>& rs, std::size_t k);

using Exponents = std::vector<std::uint32_t>;

/// Polynomial in x_0..x_{nvars-1} over k; exponent vectors include x_0.
struct RawPoly {
  std::size_t nvars = 1;
  std::map<Exponents, Fq> terms;

  void add_term(const Field& f, const Exponents& e, Fq c);
};

/// Reduced element of A_{r_1..r_q}: exponents (a_1..a_q) -> x_0-series.
struct IsogRingElement {
  Field field;
  ChainShape shape;
  std::map<Exponents, TruncSeries> coeffs;

  bool is_zero() const { return coeffs.empty(); }
  TruncSeries coeff(const Exponents& a) const;
  friend bool operator==(const IsogRingElement& a, const IsogRingElement& b) {
    return a.shape == b.shape && a.field == b.field && a.coeffs == b.coeffs;
  }
};

IsogRingElement ring_one(const ChainShape& shape, const Field& field);
// x_j for j in 0..q
IsogRingElement ring_variable(std::size_t j, const ChainShape& shape, const Field& field);
IsogRingElement ring_add(const IsogRingElement& a, const IsogRingElement& b);

// Backward pass x_q, x_{q-1}, ..., x_1 with exact x_0; result still has exact x_0-degrees.
RawPoly reduce_exact(const RawPoly& raw, const ChainShape& shape, const Field& field);
// Normal form; x_0 powers are absorbed into truncated series at the end.
IsogRingElement reduce(const RawPoly& raw, const ChainShape& shape, const Field& field);
// Normal form with x_0 -> a, as a dense vector in the monomial basis (x_1 most significant).
std::vector<Fq> reduce_at(const RawPoly& raw, const ChainShape& shape, const Field& field, Fq a);

RawPoly to_raw(const IsogRingElement& e);

IsogRingElement ring_mul(const IsogRingElement& a, const IsogRingElement& b);
// u_k: source has shape merge_shape(target.rs, k); x_i -> x_i (i < k), x_i -> x_{i+1} (i >= k)
IsogRingElement u_map(std::size_t k, const IsogRingElement& source, const ChainShape& target);
// s_k(f) = f^{(p^{r_1+..+r_k})}(x_k)
IsogRingElement s_map(std::size_t k, const TruncSeries& f, const ChainShape& shape);

struct SocleReport {
  bool ok = false;
  std::size_t rank = 0;
  std::size_t expected = 0;
  std::size_t rows = 0, cols = 0;
};
// u_1 : A_{r+1} (x) k -> A_{1,r} (x) k is injective
SocleReport socle_check(unsigned r, std::uint32_t p);

struct RelationsReport {
  bool ok = false;
  bool square_commutes = false;
  std::size_t rank_u1 = 0;
  std::size_t dim_a11 = 0;
  std::size_t rank_vbar = 0;
  std::size_t coker_u1 = 0;
  std::size_t coker_s = 0;
  bool vbar_kills_image = false;
  // coker(u_1) -> coker(s) restricted to a monomial complement of im u_1 is invertible
  bool induced_iso = false;
};
// over k = F_p at x_0 = 0: 0 -> A_2 -> A_{1,1} -> A_1/s(A) -> 0
RelationsReport relations_sequence_check(std::uint32_t p);

}  // namespace isocx

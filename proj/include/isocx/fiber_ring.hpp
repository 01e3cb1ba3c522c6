#pragma once

// Multiplication-table engine for A_{r_1..r_q}.  Instead of reducing raw
// polynomials, it keeps the action of each x_j on the monomial basis and
// builds images of basis monomials incrementally.  Coefficients are either
// field elements (x_0 specialized to a point) or truncated x_0-series.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "isocx/isogeny_ring.hpp"

namespace isocx {

/// x_0 -> a, coefficients in k.
struct PointCoefs {
  using Coef = Fq;
  Field field;
  Fq a;

  Coef zero() const { return {}; }
  Coef one() const { return field.one(); }
  Coef x0() const { return a; }
  bool is_zero(const Coef& c) const { return c.is_zero(); }
  Coef add(const Coef& x, const Coef& y) const { return field.add(x, y); }
  Coef sub(const Coef& x, const Coef& y) const { return field.sub(x, y); }
  Coef mul(const Coef& x, const Coef& y) const { return field.mul(x, y); }
  Coef mul_x0(const Coef& c) const { return field.mul(c, a); }
  Coef scalar(Fq c) const { return c; }
  Coef from_series(const TruncSeries& s) const { return s.evaluate(a); }
};

/// Coefficients in k[[x_0]]/(x_0^T).
struct SeriesCoefs {
  using Coef = TruncSeries;
  Field field;
  std::size_t trunc;

  Coef zero() const { return TruncSeries(field, trunc); }
  Coef one() const { return TruncSeries::constant(field, trunc, field.one()); }
  Coef x0() const { return TruncSeries::monomial(field, trunc, field.one(), 1); }
  bool is_zero(const Coef& c) const { return c.is_zero(); }
  Coef add(const Coef& x, const Coef& y) const { return x + y; }
  Coef sub(const Coef& x, const Coef& y) const { return x - y; }
  Coef mul(const Coef& x, const Coef& y) const { return x * y; }
  Coef mul_x0(const Coef& c) const { return c.shifted(1); }
  Coef scalar(Fq c) const { return TruncSeries::constant(field, trunc, c); }
  Coef from_series(const TruncSeries& s) const { return s.with_trunc(trunc); }
};

template <class Coefs>
class FiberRing {
 public:
  using Coef = typename Coefs::Coef;
  using Vec = std::vector<Coef>;
  using Sparse = std::vector<std::pair<std::size_t, Coef>>;

  FiberRing(std::uint32_t p, std::vector<unsigned> rs, Coefs coefs)
      : p_(p), rs_(std::move(rs)), c_(std::move(coefs)) {
    const std::size_t q = rs_.size();
    bounds_.assign(q + 1, 1);
    for (std::size_t i = 1; i <= q; ++i) bounds_[i] = sigma_pr(p_, rs_[i - 1]);
    // stride_[i] for x_i, i = 1..q; stride_[0] = dim
    stride_.assign(q + 1, 1);
    for (std::size_t i = q; i >= 2; --i) stride_[i - 1] = stride_[i] * bounds_[i];
    dim_ = q == 0 ? 1 : stride_[1] * bounds_[1];
    stride_[0] = dim_;
    overflow_.resize(q + 1);
    for (std::size_t j = 1; j <= q; ++j) build_overflow(j);
  }

  std::size_t q() const { return rs_.size(); }
  std::size_t dim() const { return dim_; }
  std::uint64_t bound(std::size_t i) const { return bounds_[i]; }
  std::size_t stride(std::size_t i) const { return stride_[i]; }
  const Coefs& coefs() const { return c_; }
  const std::vector<unsigned>& rs() const { return rs_; }

  std::size_t index(const Exponents& a) const {
    std::size_t idx = 0;
    for (std::size_t i = 1; i <= q(); ++i) idx += a[i - 1] * stride_[i];
    return idx;
  }
  Exponents exponents(std::size_t idx) const {
    Exponents a(q());
    for (std::size_t i = 1; i <= q(); ++i) a[i - 1] = std::uint32_t((idx / stride_[i]) % bounds_[i]);
    return a;
  }
  std::size_t digit(std::size_t idx, std::size_t i) const { return (idx / stride_[i]) % bounds_[i]; }

  Vec zero_vec() const { return Vec(dim_, c_.zero()); }
  Vec basis(std::size_t idx) const {
    Vec v = zero_vec();
    v[idx] = c_.one();
    return v;
  }
  Vec unit() const { return basis(0); }
  Vec x0_vec() const {
    Vec v = zero_vec();
    v[0] = c_.x0();
    return v;
  }
  Vec variable(std::size_t j) const { return j == 0 ? x0_vec() : mul_var(j, unit()); }

  Vec mul_var(std::size_t j, const Vec& v) const {
    Vec out = zero_vec();
    if (j == 0) {
      for (std::size_t i = 0; i < dim_; ++i)
        if (!c_.is_zero(v[i])) out[i] = c_.mul_x0(v[i]);
      return out;
    }
    const std::size_t top = bounds_[j] - 1;
    for (std::size_t idx = 0; idx < dim_; ++idx) {
      if (c_.is_zero(v[idx])) continue;
      if (digit(idx, j) < top) {
        out[idx + stride_[j]] = c_.add(out[idx + stride_[j]], v[idx]);
        continue;
      }
      const std::size_t lower = idx / stride_[j - 1];
      const std::size_t higher = idx % stride_[j];
      for (const auto& [t, coef] : overflow_[j][lower])
        out[t + higher] = c_.add(out[t + higher], c_.mul(v[idx], coef));
    }
    return out;
  }

  Vec mul(const Vec& a, const Vec& b) const {
    Vec acc = zero_vec();
    for (std::size_t g = 0; g < dim_; ++g) {
      if (c_.is_zero(b[g])) continue;
      Vec t = a;
      for (std::size_t j = 1; j <= q(); ++j)
        for (std::size_t e = digit(g, j); e > 0; --e) t = mul_var(j, t);
      for (std::size_t i = 0; i < dim_; ++i)
        if (!c_.is_zero(t[i])) acc[i] = c_.add(acc[i], c_.mul(b[g], t[i]));
    }
    return acc;
  }

  /// Matrix (as columns) of the x_0-fixing ring map source -> *this with
  /// x_i -> images[i-1].  var_targets[i-1] >= 0 marks images that are a plain
  /// variable x_t, which takes the fast path.
  std::vector<Vec> map_matrix(const FiberRing& source, const std::vector<Vec>& images,
                              const std::vector<int>& var_targets) const {
    if (images.size() != source.q() || var_targets.size() != source.q())
      throw std::invalid_argument("map_matrix: one image per source variable");
    std::vector<Vec> cols(source.dim());
    cols[0] = unit();
    for (std::size_t idx = 1; idx < source.dim(); ++idx) {
      std::size_t i = source.q();
      while (source.digit(idx, i) == 0) --i;
      const Vec& parent = cols[idx - source.stride(i)];
      cols[idx] = var_targets[i - 1] >= 0 ? mul_var(std::size_t(var_targets[i - 1]), parent)
                                          : mul(parent, images[i - 1]);
    }
    return cols;
  }

  // u_k into *this from the ring of shape merge_shape(rs, k)
  std::vector<Vec> u_matrix(std::size_t k, const FiberRing& source) const {
    if (k < 1 || k >= q() || source.rs() != merge_shape(rs_, k))
      throw std::invalid_argument("u_matrix: shape mismatch");
    std::vector<Vec> images;
    std::vector<int> targets;
    for (std::size_t i = 1; i <= source.q(); ++i) {
      std::size_t t = i < k ? i : i + 1;
      images.push_back(variable(t));
      targets.push_back(int(t));
    }
    return map_matrix(source, images, targets);
  }

 private:
  void build_overflow(std::size_t j) {
    const FIsogPoly f = f_poly(p_, rs_[j - 1]);
    const int lc = f.leading_sign();
    const std::size_t nlower = j == 1 ? 1 : dim_ / stride_[j - 1];
    overflow_[j].assign(nlower, {});
    if (j == 1) {
      // x_1^{sigma} = sum_t c_t x_0^{a_t} x_1^{b_t}
      Vec col = zero_vec();
      for (std::size_t t = 1; t < f.terms.size(); ++t) {
        const auto& term = f.terms[t];
        Coef c = c_.scalar(c_.field.from_int(-lc * term.sign));
        for (std::uint64_t e = 0; e < term.u_exp; ++e) c = c_.mul_x0(c);
        const std::size_t at = term.v_exp * stride_[1];
        col[at] = c_.add(col[at], c);
      }
      overflow_[1][0] = to_sparse(col);
      return;
    }
    std::uint64_t max_u = 0;
    for (const auto& term : f.terms) max_u = std::max(max_u, term.u_exp);
    for (std::size_t lower = 0; lower < nlower; ++lower) {
      // W_a = x_{j-1}^a * x^{lower}, with x_j and higher at 0
      Vec w = basis(lower * stride_[j - 1]);
      std::vector<Vec> pows;
      pows.reserve(max_u + 1);
      pows.push_back(w);
      for (std::uint64_t a = 1; a <= max_u; ++a) pows.push_back(mul_var(j - 1, pows.back()));
      Vec col = zero_vec();
      for (std::size_t t = 1; t < f.terms.size(); ++t) {
        const auto& term = f.terms[t];
        const Coef c = c_.scalar(c_.field.from_int(-lc * term.sign));
        const Vec& src = pows[term.u_exp];
        const std::size_t shift = term.v_exp * stride_[j];
        for (std::size_t i = 0; i < dim_; ++i)
          if (!c_.is_zero(src[i])) col[i + shift] = c_.add(col[i + shift], c_.mul(c, src[i]));
      }
      overflow_[j][lower] = to_sparse(col);
    }
  }

  Sparse to_sparse(const Vec& v) const {
    Sparse s;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (!c_.is_zero(v[i])) s.emplace_back(i, v[i]);
    return s;
  }

  std::uint32_t p_;
  std::vector<unsigned> rs_;
  Coefs c_;
  std::vector<std::uint64_t> bounds_;
  std::vector<std::size_t> stride_;
  std::size_t dim_ = 1;
  std::vector<std::vector<Sparse>> overflow_;
};

// columns -> MatrixFq (rows = target dim)
inline MatrixFq to_matrix(const Field& field, const std::vector<std::vector<Fq>>& cols, std::size_t rows) {
  MatrixFq m(field, rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  return m;
}

std::vector<TruncSeries> to_series_vector(const IsogRingElement& e, const FiberRing<SeriesCoefs>& ring);
IsogRingElement from_series_vector(const std::vector<TruncSeries>& v, const FiberRing<SeriesCoefs>& ring,
                                   const ChainShape& shape);

}  // namespace isocx

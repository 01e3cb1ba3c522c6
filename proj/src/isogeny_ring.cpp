#include "isocx/isogeny_ring.hpp"

#include <algorithm>
#include <stdexcept>

#include "isocx/fiber_ring.hpp"

namespace isocx {

FIsogPoly f_poly(std::uint32_t p, unsigned r) {
  if (!is_prime(p)) throw std::invalid_argument("f_poly: p must be prime");
  FIsogPoly out;
  out.p = p;
  out.r = r;
  std::vector<std::uint64_t> pw(r + 1, 1);
  for (unsigned i = 1; i <= r; ++i) pw[i] = pw[i - 1] * p;
  // subset S of factors contributes u^{p^i}; the others contribute -v^{p^{r-i}}.
  // Distinct subsets give distinct monomials (base-p digits), so no cancellation.
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << (r + 1)); ++mask) {
    FIsogPoly::Term t{0, 0, 1};
    for (unsigned i = 0; i <= r; ++i) {
      if (mask >> i & 1) {
        t.u_exp += pw[i];
      } else {
        t.v_exp += pw[r - i];
        t.sign = -t.sign;
      }
    }
    out.terms.push_back(t);
  }
  std::sort(out.terms.begin(), out.terms.end(), [](const auto& a, const auto& b) {
    return a.v_exp != b.v_exp ? a.v_exp > b.v_exp : a.u_exp < b.u_exp;
  });
  return out;
}

std::uint64_t ChainShape::fiber_dim() const {
  std::uint64_t d = 1;
  for (std::size_t i = 1; i <= q(); ++i) d *= bound(i);
  return d;
}

void validate_shape(const ChainShape& shape, const Field& field) {
  if (shape.p != field.characteristic()) throw std::invalid_argument("shape/field characteristic mismatch");
  for (unsigned r : shape.rs)
    if (r == 0) throw std::invalid_argument("chain shape entries must be positive");
  if (shape.trunc == 0) throw std::invalid_argument("truncation order must be positive");
}

std::vector<unsigned> merge_shape(const std::vector<unsigned>& rs, std::size_t k) {
  if (k < 1 || k >= rs.size()) throw std::out_of_range("merge_shape: index out of range");
  std::vector<unsigned> out(rs.begin(), rs.begin() + long(k - 1));
  out.push_back(rs[k - 1] + rs[k]);
  out.insert(out.end(), rs.begin() + long(k + 1), rs.end());
  return out;
}

void RawPoly::add_term(const Field& f, const Exponents& e, Fq c) {
  if (e.size() != nvars) throw std::invalid_argument("exponent vector length");
  if (c.is_zero()) return;
  auto [it, fresh] = terms.emplace(e, c);
  if (fresh) return;
  it->second = f.add(it->second, c);
  if (it->second.is_zero()) terms.erase(it);
}

TruncSeries IsogRingElement::coeff(const Exponents& a) const {
  auto it = coeffs.find(a);
  return it == coeffs.end() ? TruncSeries(field, shape.trunc) : it->second;
}

IsogRingElement ring_one(const ChainShape& shape, const Field& field) {
  validate_shape(shape, field);
  IsogRingElement e{field, shape, {}};
  e.coeffs.emplace(Exponents(shape.q(), 0), TruncSeries::constant(field, shape.trunc, field.one()));
  return e;
}

IsogRingElement ring_variable(std::size_t j, const ChainShape& shape, const Field& field) {
  if (j > shape.q()) throw std::out_of_range("ring_variable: index out of range");
  RawPoly raw{shape.q() + 1, {}};
  Exponents e(shape.q() + 1, 0);
  e[j] = 1;
  raw.add_term(field, e, field.one());
  return reduce(raw, shape, field);
}

IsogRingElement ring_add(const IsogRingElement& a, const IsogRingElement& b) {
  if (!(a.shape == b.shape) || !(a.field == b.field)) throw std::invalid_argument("ring_add: shape mismatch");
  IsogRingElement out = a;
  for (const auto& [ex, c] : b.coeffs) {
    auto [it, fresh] = out.coeffs.emplace(ex, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) out.coeffs.erase(it);
    }
  }
  return out;
}

RawPoly reduce_exact(const RawPoly& raw, const ChainShape& shape, const Field& field) {
  validate_shape(shape, field);
  const std::size_t q = shape.q();
  if (raw.nvars != q + 1) throw std::invalid_argument("reduce: variable count does not match shape");
  std::map<Exponents, Fq> cur = raw.terms;
  for (std::size_t j = q; j >= 1; --j) {
    const FIsogPoly f = f_poly(shape.p, shape.rs[j - 1]);
    const std::uint64_t sigma = f.v_degree();
    const int lc = f.leading_sign();
    std::uint64_t maxdeg = 0;
    for (const auto& [e, c] : cur) maxdeg = std::max<std::uint64_t>(maxdeg, e[j]);
    if (maxdeg < sigma) continue;
    std::vector<std::map<Exponents, Fq>> buckets(maxdeg + 1);
    for (const auto& [e, c] : cur) buckets[e[j]].emplace(e, c);
    for (std::uint64_t d = maxdeg; d >= sigma; --d) {
      for (const auto& [e, c] : buckets[d]) {
        if (c.is_zero()) continue;
        // x_j^d = x_j^{d-sigma} * sum_t (-lc*sign_t) x_{j-1}^{a_t} x_j^{b_t}
        for (std::size_t t = 1; t < f.terms.size(); ++t) {
          const auto& term = f.terms[t];
          Exponents ne = e;
          ne[j] = std::uint32_t(d - sigma + term.v_exp);
          ne[j - 1] += std::uint32_t(term.u_exp);
          const Fq nc = field.mul(c, field.from_int(-lc * term.sign));
          auto [it, fresh] = buckets[ne[j]].emplace(ne, nc);
          if (!fresh) it->second = field.add(it->second, nc);
        }
      }
      buckets[d].clear();
    }
    cur.clear();
    for (std::uint64_t d = 0; d < sigma && d <= maxdeg; ++d)
      for (const auto& [e, c] : buckets[d])
        if (!c.is_zero()) cur.emplace(e, c);
  }
  return RawPoly{q + 1, std::move(cur)};
}

IsogRingElement reduce(const RawPoly& raw, const ChainShape& shape, const Field& field) {
  RawPoly red = reduce_exact(raw, shape, field);
  IsogRingElement out{field, shape, {}};
  for (const auto& [e, c] : red.terms) {
    if (e[0] >= shape.trunc) continue;
    Exponents a(e.begin() + 1, e.end());
    TruncSeries s = TruncSeries::monomial(field, shape.trunc, c, e[0]);
    auto [it, fresh] = out.coeffs.emplace(a, s);
    if (!fresh) {
      it->second += s;
      if (it->second.is_zero()) out.coeffs.erase(it);
    }
  }
  return out;
}

std::vector<Fq> reduce_at(const RawPoly& raw, const ChainShape& shape, const Field& field, Fq a) {
  RawPoly red = reduce_exact(raw, shape, field);
  std::vector<std::size_t> stride(shape.q() + 1, 1);
  for (std::size_t i = shape.q(); i >= 2; --i) stride[i - 1] = stride[i] * shape.bound(i);
  std::vector<Fq> out(shape.fiber_dim());
  for (const auto& [e, c] : red.terms) {
    std::size_t idx = 0;
    for (std::size_t i = 1; i <= shape.q(); ++i) idx += e[i] * stride[i];
    out[idx] = field.add(out[idx], field.mul(c, field.pow(a, e[0])));
  }
  return out;
}

RawPoly to_raw(const IsogRingElement& e) {
  RawPoly raw{e.shape.q() + 1, {}};
  for (const auto& [a, s] : e.coeffs)
    for (std::size_t n = 0; n < s.coeffs().size(); ++n) {
      if (s.coeffs()[n].is_zero()) continue;
      Exponents ex{std::uint32_t(n)};
      ex.insert(ex.end(), a.begin(), a.end());
      raw.add_term(e.field, ex, s.coeffs()[n]);
    }
  return raw;
}

IsogRingElement ring_mul(const IsogRingElement& a, const IsogRingElement& b) {
  if (!(a.shape == b.shape) || !(a.field == b.field)) throw std::invalid_argument("ring_mul: shape mismatch");
  const Field& f = a.field;
  RawPoly raw{a.shape.q() + 1, {}};
  // exact product of the polynomial representatives
  for (const auto& [ea, sa] : a.coeffs)
    for (const auto& [eb, sb] : b.coeffs) {
      Exponents ex(a.shape.q() + 1);
      for (std::size_t i = 0; i < a.shape.q(); ++i) ex[i + 1] = ea[i] + eb[i];
      for (std::size_t i = 0; i < sa.coeffs().size(); ++i) {
        if (sa.coeffs()[i].is_zero()) continue;
        for (std::size_t j = 0; j < sb.coeffs().size(); ++j) {
          if (sb.coeffs()[j].is_zero()) continue;
          ex[0] = std::uint32_t(i + j);
          raw.add_term(f, ex, f.mul(sa.coeffs()[i], sb.coeffs()[j]));
        }
      }
    }
  return reduce(raw, a.shape, f);
}

IsogRingElement u_map(std::size_t k, const IsogRingElement& source, const ChainShape& target) {
  if (k < 1 || k >= target.q()) throw std::out_of_range("u_map: index out of range");
  if (source.shape.rs != merge_shape(target.rs, k) || source.shape.p != target.p ||
      source.shape.trunc != target.trunc)
    throw std::invalid_argument("u_map: source shape is not the merge of the target");
  RawPoly raw = to_raw(source);
  RawPoly relabeled{target.q() + 1, {}};
  for (const auto& [e, c] : raw.terms) {
    Exponents ne(target.q() + 1, 0);
    ne[0] = e[0];
    for (std::size_t i = 1; i <= source.shape.q(); ++i) ne[i < k ? i : i + 1] = e[i];
    relabeled.add_term(source.field, ne, c);
  }
  return reduce(relabeled, target, source.field);
}

IsogRingElement s_map(std::size_t k, const TruncSeries& f, const ChainShape& shape) {
  if (k > shape.q()) throw std::out_of_range("s_map: index out of range");
  if (f.trunc() != shape.trunc) throw std::invalid_argument("s_map: truncation mismatch");
  unsigned twist = 0;
  for (std::size_t i = 0; i < k; ++i) twist += shape.rs[i];
  const TruncSeries g = frobenius_twist(f, twist);
  RawPoly raw{shape.q() + 1, {}};
  for (std::size_t n = 0; n < g.coeffs().size(); ++n) {
    Exponents e(shape.q() + 1, 0);
    e[k] = std::uint32_t(n);
    raw.add_term(f.field(), e, g.coeffs()[n]);
  }
  return reduce(raw, shape, f.field());
}

SocleReport socle_check(unsigned r, std::uint32_t p) {
  if (r < 1) throw std::invalid_argument("socle_check: r >= 1 required");
  const Field k = Field::prime(p);
  const PointCoefs c{k, k.zero()};
  FiberRing<PointCoefs> src(p, {r + 1}, c), dst(p, {1, r}, c);
  const MatrixFq m = to_matrix(k, dst.u_matrix(1, src), dst.dim());
  SocleReport rep;
  rep.rows = m.rows();
  rep.cols = m.cols();
  rep.rank = rank_fq(m);
  rep.expected = sigma_pr(p, r + 1);
  rep.ok = rep.rank == rep.expected;
  return rep;
}

RelationsReport relations_sequence_check(std::uint32_t p) {
  const Field k = Field::prime(p);
  const PointCoefs c{k, k.zero()};
  FiberRing<PointCoefs> a2(p, {2}, c), a11(p, {1, 1}, c), a1(p, {1}, c), a(p, {}, c);
  RelationsReport rep;

  const MatrixFq u1 = to_matrix(k, a11.u_matrix(1, a2), a11.dim());
  // v: x_1 -> x_1, x_2 -> x_0
  const MatrixFq v = to_matrix(k, a1.map_matrix(a11, {a1.variable(1), a1.x0_vec()}, {1, -1}), a1.dim());
  // w: x_1 -> x
  const MatrixFq w = to_matrix(k, a.map_matrix(a2, {a.x0_vec()}, {-1}), a.dim());
  // s: the structural map A -> A_1; on A (x) k it sends 1 to 1
  MatrixFq s(k, a1.dim(), 1);
  s(0, 0) = k.one();

  rep.square_commutes = v * u1 == s * w;
  rep.rank_u1 = rank_fq(u1);
  rep.dim_a11 = a11.dim();
  rep.coker_u1 = rep.dim_a11 - rep.rank_u1;
  rep.coker_s = a1.dim() - rank_fq(s);

  // projection A_1 -> A_1/s(A) drops the coordinate of the monomial 1
  MatrixFq proj(k, a1.dim() - 1, a1.dim());
  for (std::size_t i = 1; i < a1.dim(); ++i) proj(i - 1, i) = k.one();
  const MatrixFq vbar = proj * v;
  rep.rank_vbar = rank_fq(vbar);
  rep.vbar_kills_image = (vbar * u1).is_zero();

  // pick a monomial complement of im u_1 greedily and restrict vbar to it
  std::vector<std::size_t> complement;
  MatrixFq span = u1.transpose();
  std::size_t cur = rank_fq(span);
  for (std::size_t idx = 0; idx < a11.dim() && complement.size() < rep.coker_u1; ++idx) {
    MatrixFq ext(k, span.rows() + 1, span.cols());
    for (std::size_t i = 0; i < span.rows(); ++i)
      for (std::size_t j = 0; j < span.cols(); ++j) ext(i, j) = span(i, j);
    ext(span.rows(), idx) = k.one();
    std::size_t nr = rank_fq(ext);
    if (nr > cur) {
      span = ext;
      cur = nr;
      complement.push_back(idx);
    }
  }
  if (complement.size() == rep.coker_u1 && rep.coker_u1 == rep.coker_s) {
    MatrixFq sq(k, rep.coker_s, rep.coker_s);
    for (std::size_t i = 0; i < rep.coker_s; ++i)
      for (std::size_t j = 0; j < complement.size(); ++j) sq(i, j) = vbar(i, complement[j]);
    rep.induced_iso = !determinant(sq).is_zero();
  }

  rep.ok = rep.square_commutes && rep.rank_u1 == sigma_pr(p, 2) && rep.coker_u1 == p && rep.coker_s == p &&
           rep.rank_vbar == p && rep.vbar_kills_image && rep.induced_iso;
  return rep;
}

std::vector<TruncSeries> to_series_vector(const IsogRingElement& e, const FiberRing<SeriesCoefs>& ring) {
  std::vector<TruncSeries> v = ring.zero_vec();
  for (const auto& [a, s] : e.coeffs) v[ring.index(a)] = s;
  return v;
}

IsogRingElement from_series_vector(const std::vector<TruncSeries>& v, const FiberRing<SeriesCoefs>& ring,
                                   const ChainShape& shape) {
  IsogRingElement e{ring.coefs().field, shape, {}};
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) e.coeffs.emplace(ring.exponents(i), v[i]);
  return e;
}

}  // namespace isocx

#include "isocx/bar_complex.hpp"

#include <map>
#include <stdexcept>

#include "isocx/fiber_ring.hpp"

namespace isocx {

Word concat(const BarTuple& t) {
  Word w;
  for (const Word& s : t) w.insert(w.end(), s.begin(), s.end());
  return w;
}

namespace {

std::vector<BarTuple> tuples_for(std::uint32_t p, const std::vector<unsigned>& comp) {
  std::vector<BarTuple> out{{}};
  for (unsigned ri : comp) {
    std::vector<BarTuple> next;
    const auto words = admissible_basis(p, ri);
    for (const auto& t : out)
      for (const Word& w : words) {
        BarTuple u = t;
        u.push_back(w);
        next.push_back(std::move(u));
      }
    out = std::move(next);
  }
  return out;
}

using Prefixed = std::map<BarTuple, Fq>;

class Assembler {
 public:
  Assembler(std::uint32_t p, const Field& k) : p_(p), k_(k), ring_(k, GammaRing::kExact) {}

  // c * P_{t[0]} ... P_{t[j-1]} written with coefficients moved to the far left, mod x
  Prefixed migrate(const BarTuple& t, std::size_t j, const TruncSeries& c) {
    Prefixed out;
    if (c.is_zero()) return out;
    if (j == 0) {
      if (!c.coeff(0).is_zero()) out[{}] = c.coeff(0);
      return out;
    }
    if (c.degree() == 0) {
      // scalars pass through with a Frobenius twist
      Fq s = c.coeff(0);
      for (std::size_t i = 0; i < j; ++i) s = k_.frobenius(s, unsigned(t[i].size()));
      out[BarTuple(t.begin(), t.begin() + std::ptrdiff_t(j))] = s;
      return out;
    }
    const RawGamma moved = ring_.normalize_raw(ring_.right_mult_word(t[j - 1], c));
    for (const auto& [w, h] : moved)
      for (const auto& [pre, v] : migrate(t, j - 1, h)) {
        BarTuple u = pre;
        u.push_back(w);
        Fq& slot = out[u];
        slot = k_.add(slot, v);
      }
    return out;
  }

  const RawGamma& product(const Word& a, const Word& b) {
    auto key = std::make_pair(a, b);
    auto it = prod_.find(key);
    if (it != prod_.end()) return it->second;
    Word w = a;
    w.insert(w.end(), b.begin(), b.end());
    const TruncSeries one = TruncSeries::constant(k_, GammaRing::kExact, k_.one());
    return prod_.emplace(key, ring_.normalize_raw({{w, one}})).first->second;
  }

 private:
  std::uint32_t p_;
  Field k_;
  GammaRing ring_;
  std::map<std::pair<Word, Word>, RawGamma> prod_;
};

MatrixFq rows_cols(const MatrixFq& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  MatrixFq out(m.field(), rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = m(rows[i], cols[j]);
  return out;
}

std::uint64_t binom(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  std::uint64_t c = 1;
  for (std::int64_t i = 1; i <= k; ++i) c = c * std::uint64_t(n - k + i) / std::uint64_t(i);
  return c;
}

}  // namespace

BarComplexOverK bar_complex(std::uint32_t p, unsigned r, const Field& k) {
  if (k.characteristic() != p) throw std::invalid_argument("bar_complex: field characteristic differs from p");
  BarComplexOverK bar;
  bar.p = p;
  bar.r = r;
  bar.field = k;
  bar.basis.resize(r + 1);
  bar.dims.assign(r + 1, 0);
  for (unsigned q = 0; q <= r; ++q)
    for (const auto& comp : compositions(r, q))
      for (auto& t : tuples_for(p, comp)) bar.basis[q].push_back(std::move(t));
  for (unsigned q = 0; q <= r; ++q) bar.dims[q] = bar.basis[q].size();

  bar.bd.assign(r + 1, MatrixFq());
  if (r >= 1) bar.bd[1] = MatrixFq(k, bar.dims[0], bar.dims[1]);
  Assembler as(p, k);
  for (unsigned q = 2; q <= r; ++q) {
    std::map<BarTuple, std::size_t> target;
    for (std::size_t i = 0; i < bar.basis[q - 1].size(); ++i) target[bar.basis[q - 1][i]] = i;
    MatrixFq m(k, bar.dims[q - 1], bar.dims[q]);
    for (std::size_t col = 0; col < bar.basis[q].size(); ++col) {
      const BarTuple& t = bar.basis[q][col];
      for (std::size_t i = 0; i + 1 < q; ++i) {
        const Fq sign = (i + 1) % 2 ? k.from_int(-1) : k.one();
        for (const auto& [w, c] : as.product(t[i], t[i + 1]))
          for (const auto& [pre, v] : as.migrate(t, i, c)) {
            BarTuple img = pre;
            img.push_back(w);
            img.insert(img.end(), t.begin() + std::ptrdiff_t(i) + 2, t.end());
            m.add_to(target.at(img), col, k.mul(sign, v));
          }
      }
    }
    bar.bd[q] = std::move(m);
  }
  for (unsigned q = 3; q <= r; ++q)
    if (!(bar.bd[q - 1] * bar.bd[q]).is_zero()) throw std::logic_error("bar_complex: boundary squares to nonzero");
  return bar;
}

BarComplexOverK bar_complex(std::uint32_t p, unsigned r) { return bar_complex(p, r, Field::prime(p)); }

HomologyProfile bar_homology(const BarComplexOverK& bar) {
  const unsigned r = bar.r;
  std::vector<std::size_t> rk(r + 2, 0);  // rk[q] = rank of bd[q]
  for (unsigned q = 1; q <= r; ++q)
    if (bar.bd[q].rows() && bar.bd[q].cols()) rk[q] = rank_fq(bar.bd[q]);
  for (unsigned q = 3; q <= r; ++q)
    if (!(bar.bd[q - 1] * bar.bd[q]).is_zero()) throw std::logic_error("bar_homology: boundary squares to nonzero");
  HomologyProfile h;
  for (unsigned q = 0; q <= r; ++q) h.ranks.emplace_back(int(q), bar.dims[q] - rk[q] - rk[q + 1]);
  return h;
}

HomologyProfile bar_homology(std::uint32_t p, unsigned r) { return bar_homology(bar_complex(p, r)); }

MatrixFq bar_pairing(const BarComplexOverK& bar, unsigned q) {
  const Field& k = bar.field;
  const PointCoefs c{k, k.zero()};
  const auto comps = compositions(bar.r, q);
  std::size_t mod_dim = 0;
  for (const auto& comp : comps) {
    std::size_t d = 1;
    for (unsigned ri : comp) d *= sigma_pr(bar.p, ri);
    mod_dim += d;
  }
  MatrixFq m(k, bar.dims[q], mod_dim);
  FiberRing<PointCoefs> ones(bar.p, std::vector<unsigned>(bar.r, 1), c);
  std::size_t row = 0, col0 = 0;
  for (const auto& comp : comps) {
    FiberRing<PointCoefs> src(bar.p, comp, c);
    std::vector<FiberRing<PointCoefs>::Vec> images;
    std::vector<int> targets;
    unsigned acc = 0;
    for (unsigned ri : comp) {
      acc += ri;
      images.push_back(ones.variable(acc));
      targets.push_back(int(acc));
    }
    const auto cols = ones.map_matrix(src, images, targets);
    const std::size_t n = tuples_for(bar.p, comp).size();
    for (std::size_t b = 0; b < n; ++b, ++row) {
      const Word w = concat(bar.basis[q][row]);
      const std::size_t at = ones.index(Exponents(w.begin(), w.end()));
      for (std::size_t j = 0; j < cols.size(); ++j) m(row, col0 + j) = cols[j][at];
    }
    col0 += src.dim();
  }
  return m;
}

BarDualityReport bar_duality_check(const BarComplexOverK& bar) {
  BarDualityReport rep;
  const FieldComplex mod = build_complex(bar.p, bar.r, Specialization::closed_point(), bar.field.spec());
  std::vector<MatrixFq> pi(bar.r + 1);
  rep.ok = true;
  for (unsigned q = 0; q <= bar.r; ++q) {
    if (q == 0) {
      rep.pairing_invertible.push_back(true);
      continue;
    }
    pi[q] = bar_pairing(bar, q);
    const bool inv = pi[q].rows() == pi[q].cols() && rank_fq(pi[q]) == pi[q].rows();
    rep.pairing_invertible.push_back(inv);
    rep.ok = rep.ok && inv;
  }
  for (unsigned q = 2; q <= bar.r; ++q) {
    // <d b, m> = <b, delta m>
    const bool dual = bar.bd[q].transpose() * pi[q - 1] == pi[q] * mod.d[q - 1];
    rep.boundary_dual.push_back(dual);
    rep.ok = rep.ok && dual;
  }
  return rep;
}

GrPieceReport gr_piece_check(const BarComplexOverK& bar, const Word& word) {
  const unsigned r = bar.r;
  if (word.size() != r) throw std::invalid_argument("gr_piece_check: word length differs from r");
  GrPieceReport rep;
  rep.word = word;
  for (std::size_t i = 0; i + 1 < word.size(); ++i)
    if (word[i] != 0 && word[i + 1] == 0) ++rep.descents;

  std::vector<std::vector<std::size_t>> idx(r + 1);
  for (unsigned q = 0; q <= r; ++q) {
    for (std::size_t i = 0; i < bar.basis[q].size(); ++i)
      if (concat(bar.basis[q][i]) == word) idx[q].push_back(i);
    rep.dims.push_back(idx[q].size());
    const std::int64_t t = std::int64_t(rep.descents);
    rep.model_dims.push_back(r == 0 ? (q == 0) : binom(std::int64_t(r) - 1 - t, std::int64_t(q) - 1 - t));
  }
  // filtration: images of this piece stay at or below the word
  for (unsigned q = 2; q <= r; ++q)
    for (std::size_t col : idx[q])
      for (std::size_t row = 0; row < bar.bd[q].rows(); ++row)
        if (!bar.bd[q](row, col).is_zero() && order_compare(concat(bar.basis[q - 1][row]), word) > 0)
          rep.filtered = false;

  std::vector<std::size_t> rk(r + 2, 0);
  for (unsigned q = 2; q <= r; ++q)
    if (!idx[q].empty() && !idx[q - 1].empty()) rk[q] = rank_fq(rows_cols(bar.bd[q], idx[q - 1], idx[q]));
  for (unsigned q = 0; q <= r; ++q) rep.ranks.push_back(idx[q].size() - rk[q] - rk[q + 1]);
  rep.model_rank = (r == 0 || rep.descents + 1 == r) ? 1 : 0;

  bool ranks_ok = true;
  for (unsigned q = 0; q <= r; ++q) ranks_ok = ranks_ok && rep.ranks[q] == (q == r ? rep.model_rank : 0);
  rep.ok = rep.filtered && rep.dims == rep.model_dims && ranks_ok;
  return rep;
}

GrPieceReport gr_piece_check(std::uint32_t p, unsigned r, const Word& word) {
  if (r > 4) throw std::invalid_argument("gr_piece_check: r must be at most 4");
  for (unsigned l : word)
    if (l > p) throw std::invalid_argument("gr_piece_check: letter out of range");
  return gr_piece_check(bar_complex(p, r), word);
}

GrSummary gr_summary(const BarComplexOverK& bar) {
  GrSummary s;
  const HomologyProfile h = bar_homology(bar);
  for (const auto& [deg, rank] : h.ranks) s.bar_total += rank;
  Word w(bar.r, 0);
  for (;;) {
    const GrPieceReport rep = gr_piece_check(bar, w);
    ++s.words;
    for (std::size_t rank : rep.ranks) s.gr_total += rank;
    if (!rep.ok) ++s.failed_words;
    std::size_t i = 0;
    while (i < w.size() && w[i] == bar.p) w[i++] = 0;
    if (i == w.size()) break;
    ++w[i];
  }
  s.ok = s.failed_words == 0 && s.gr_total == s.bar_total;
  return s;
}

}  // namespace isocx

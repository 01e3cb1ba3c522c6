#include "isocx/gamma.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "isocx/fiber_ring.hpp"

namespace isocx {

bool is_admissible(const Word& w) {
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (w[i] != 0 && w[i + 1] == 0) return false;
  return true;
}

std::strong_ordering order_compare(const Word& a, const Word& b) {
  if (a.size() != b.size()) throw std::invalid_argument("order_compare: words of different length");
  for (std::size_t k = a.size(); k-- > 0;)
    if (a[k] != b[k]) return a[k] > b[k] ? std::strong_ordering::less : std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::vector<Word> admissible_basis(std::uint32_t p, unsigned r) {
  // zeros(z) followed by r - z nonzero letters
  std::vector<Word> out;
  for (unsigned z = 0; z <= r; ++z) {
    Word w(r, 0);
    std::size_t tail = r - z;
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < tail; ++i) count *= p;
    for (std::uint64_t c = 0; c < count; ++c) {
      std::uint64_t t = c;
      for (std::size_t i = 0; i < tail; ++i) {
        w[z + i] = unsigned(t % p) + 1;
        t /= p;
      }
      out.push_back(w);
    }
  }
  std::sort(out.begin(), out.end(), OrderLess{});
  return out;
}

TruncSeries GammaElement::coeff(const Word& w) const {
  auto it = coeffs.find(w);
  return it == coeffs.end() ? TruncSeries(field, trunc) : it->second;
}

GammaRing::GammaRing(const Field& field, std::size_t trunc)
    : field_(field), p_(field.characteristic()), trunc_(trunc) {
  if (trunc == 0) throw std::invalid_argument("GammaRing: truncation must be positive");
}

GammaElement GammaRing::from_terms(unsigned grade, const std::map<Word, TruncSeries>& terms) const {
  GammaElement e{field_, p_, grade, trunc_, {}};
  for (const auto& [w, c] : terms) {
    if (w.size() != grade) throw std::invalid_argument("GammaElement: word length differs from grade");
    for (unsigned l : w)
      if (l > p_) throw std::invalid_argument("GammaElement: letter out of range");
    if (!is_admissible(w)) throw std::invalid_argument("GammaElement: inadmissible word");
    TruncSeries t = c.with_trunc(trunc_);
    if (!t.is_zero()) e.coeffs[w] = t;
  }
  return e;
}

GammaElement GammaRing::unit() const { return scalar(TruncSeries::constant(field_, trunc_, field_.one())); }

GammaElement GammaRing::scalar(const TruncSeries& f) const { return from_terms(0, {{Word{}, f}}); }

GammaElement GammaRing::generator(unsigned i) const {
  if (i > p_) throw std::invalid_argument("generator: index exceeds p");
  return from_terms(1, {{Word{i}, TruncSeries::constant(field_, trunc_, field_.one())}});
}

GammaElement GammaRing::monomial(const Word& w) const {
  for (unsigned l : w)
    if (l > p_) throw std::invalid_argument("monomial: letter out of range");
  return normalize({{w, TruncSeries::constant(field_, kExact, field_.one())}}, unsigned(w.size()));
}

std::vector<TruncSeries> GammaRing::right_mult_row(unsigned i) const {
  if (i > p_) throw std::invalid_argument("right_mult_row: index exceeds p");
  const Fq one = field_.one();
  std::vector<TruncSeries> row(p_ + 1, TruncSeries(field_, kExact));
  if (i == 0) {
    row[p_] = TruncSeries::monomial(field_, kExact, field_.neg(one), p_ + 1);
  } else if (i == 1) {
    row[0] = TruncSeries::constant(field_, kExact, one);
    row[p_] = TruncSeries::monomial(field_, kExact, one, 1);
  } else if (i < p_) {
    row[i - 1] = TruncSeries::constant(field_, kExact, one);
  } else {
    row[p_ - 1] = TruncSeries::constant(field_, kExact, one);
    row[p_] = TruncSeries::monomial(field_, kExact, one, p_);
  }
  return row;
}

const std::vector<std::vector<TruncSeries>>& GammaRing::x_power(std::size_t n) const {
  std::lock_guard lock(mu_);
  if (xpow_.empty()) {
    std::vector<std::vector<TruncSeries>> id(p_ + 1, std::vector<TruncSeries>(p_ + 1, TruncSeries(field_, kExact)));
    for (unsigned i = 0; i <= p_; ++i) id[i][i] = TruncSeries::constant(field_, kExact, field_.one());
    xpow_.push_back(std::move(id));
  }
  if (xpow_.size() <= n) {
    std::vector<std::vector<TruncSeries>> x;
    for (unsigned i = 0; i <= p_; ++i) x.push_back(right_mult_row(i));
    while (xpow_.size() <= n) {
      const auto& prev = xpow_.back();
      std::vector<std::vector<TruncSeries>> next(p_ + 1, std::vector<TruncSeries>(p_ + 1, TruncSeries(field_, kExact)));
      for (unsigned i = 0; i <= p_; ++i)
        for (unsigned j = 0; j <= p_; ++j) {
          if (prev[i][j].is_zero()) continue;
          for (unsigned l = 0; l <= p_; ++l)
            if (!x[j][l].is_zero()) next[i][l] += prev[i][j] * x[j][l];
        }
      xpow_.push_back(std::move(next));
    }
  }
  return xpow_[n];
}

const RawGamma& GammaRing::word_times_x_power(const Word& w, std::size_t n) const {
  std::lock_guard lock(mu_);
  auto key = std::make_pair(w, n);
  if (auto it = word_cache_.find(key); it != word_cache_.end()) return it->second;
  RawGamma out;
  if (w.empty()) {
    out[Word{}] = TruncSeries::monomial(field_, kExact, field_.one(), n);
  } else {
    const Word prefix(w.begin(), w.end() - 1);
    const auto row = x_power(n)[w.back()];
    for (unsigned j = 0; j <= p_; ++j) {
      const auto& cs = row[j].coeffs();
      for (std::size_t m = 0; m < cs.size(); ++m) {
        if (cs[m].is_zero()) continue;
        // P_U (d x^m) = d^{p^|U|} P_U x^m
        const Fq d = field_.frobenius(cs[m], unsigned(prefix.size()));
        for (const auto& [u, h] : word_times_x_power(prefix, m)) {
          Word nw = u;
          nw.push_back(j);
          auto [it, fresh] = out.try_emplace(nw, TruncSeries(field_, kExact));
          it->second += h.scaled(d);
        }
      }
    }
    std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  }
  return word_cache_.emplace(std::move(key), std::move(out)).first->second;
}

RawGamma GammaRing::right_mult_word(const Word& w, const TruncSeries& f) const {
  RawGamma out;
  const auto& cs = f.coeffs();
  for (std::size_t n = 0; n < cs.size(); ++n) {
    if (cs[n].is_zero()) continue;
    const Fq c = field_.frobenius(cs[n], unsigned(w.size()));
    for (const auto& [u, h] : word_times_x_power(w, n)) {
      auto [it, fresh] = out.try_emplace(u, TruncSeries(field_, kExact));
      it->second += h.scaled(c);
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

std::vector<TruncSeries> GammaRing::right_mult_letter(unsigned i, const TruncSeries& f) const {
  if (i > p_) throw std::invalid_argument("right_mult_letter: index exceeds p");
  std::vector<TruncSeries> row(p_ + 1, TruncSeries(field_, kExact));
  for (const auto& [u, h] : right_mult_word(Word{i}, exact(f))) row[u[0]] = h;
  return row;
}

GammaElement GammaRing::right_mult(const GammaElement& e, const TruncSeries& f) const {
  RawGamma raw;
  for (const auto& [w, c] : e.coeffs)
    for (const auto& [u, h] : right_mult_word(w, exact(f))) {
      auto [it, fresh] = raw.try_emplace(u, TruncSeries(field_, kExact));
      it->second += exact(c) * h;
    }
  return normalize(raw, e.grade);
}

RawGamma GammaRing::normalize_raw(const RawGamma& raw, NormalizeStats* stats) const {
  std::map<Word, TruncSeries, OrderLess> work;
  for (const auto& [w, c] : raw) {
    if (c.is_zero()) continue;
    auto [it, fresh] = work.try_emplace(w, TruncSeries(field_, kExact));
    it->second += exact(c);
  }
  RawGamma out;
  while (!work.empty()) {
    auto last = std::prev(work.end());
    const Word w = last->first;
    const TruncSeries c = last->second;
    work.erase(last);
    if (c.is_zero()) continue;
    if (is_admissible(w)) {
      out.emplace(w, c);
      continue;
    }
    // rightmost pair (i, 0) with i != 0; P_i P_0 = -sum_{j>=1} x^j P_i P_j
    std::size_t k = w.size() - 1;
    while (!(w[k - 1] != 0 && w[k] == 0)) --k;
    --k;
    const Word prefix(w.begin(), w.begin() + std::ptrdiff_t(k));
    const Word suffix(w.begin() + std::ptrdiff_t(k) + 2, w.end());
    for (unsigned j = 1; j <= p_; ++j)
      for (const auto& [u, h] : word_times_x_power(prefix, j)) {
        Word nw = u;
        nw.push_back(w[k]);
        nw.push_back(j);
        nw.insert(nw.end(), suffix.begin(), suffix.end());
        if (order_compare(nw, w) >= 0) {
          if (stats) ++stats->order_violations;
          throw std::logic_error("normalize: rewrite did not decrease the word");
        }
        auto [it, fresh] = work.try_emplace(nw, TruncSeries(field_, kExact));
        it->second -= c * h;
      }
    if (stats) ++stats->rewrites;
  }
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

GammaElement GammaRing::normalize(const RawGamma& raw, unsigned grade, NormalizeStats* stats) const {
  return from_terms(grade, normalize_raw(raw, stats));
}

GammaElement GammaRing::gamma_mul(const GammaElement& a, const GammaElement& b, NormalizeStats* stats) const {
  if (!(a.field == field_) || !(b.field == field_) || a.p != p_ || b.p != p_)
    throw std::invalid_argument("gamma_mul: operands from a different ring");
  RawGamma raw;
  for (const auto& [i, f] : a.coeffs)
    for (const auto& [j, g] : b.coeffs)
      for (const auto& [u, h] : right_mult_word(i, exact(g))) {
        Word w = u;
        w.insert(w.end(), j.begin(), j.end());
        auto [it, fresh] = raw.try_emplace(w, TruncSeries(field_, kExact));
        it->second += exact(f) * h;
      }
  return normalize(raw, a.grade + b.grade, stats);
}

TruncSeries pairing(const Word& w, const IsogRingElement& g) {
  unsigned total = 0;
  for (unsigned ri : g.shape.rs) total += ri;
  if (total != w.size()) throw std::invalid_argument("pairing: word length differs from the chain length");
  IsogRingElement cur = g;
  for (;;) {
    auto& rs = cur.shape.rs;
    auto it = std::find_if(rs.begin(), rs.end(), [](unsigned ri) { return ri > 1; });
    if (it == rs.end()) break;
    const std::size_t i = std::size_t(it - rs.begin());
    ChainShape target = cur.shape;
    target.rs[i] = 1;
    target.rs.insert(target.rs.begin() + std::ptrdiff_t(i) + 1, rs[i] - 1);
    cur = u_map(i + 1, cur, target);
  }
  Exponents e(w.begin(), w.end());
  return cur.coeff(e);
}

namespace {

// columns: monomials of A_r, entries indexed by A_{1,..,1}
template <class Coefs>
std::vector<typename FiberRing<Coefs>::Vec> refine_columns(std::uint32_t p, unsigned r, const Coefs& c,
                                                           FiberRing<Coefs>& ones) {
  FiberRing<Coefs> ar(p, {r}, c);
  return ones.map_matrix(ar, {ones.variable(r)}, {int(r)});
}

std::vector<unsigned> ones_shape(unsigned r) { return std::vector<unsigned>(r, 1); }

Exponents as_exponents(const Word& w) { return Exponents(w.begin(), w.end()); }

}  // namespace

MatrixFq pairing_matrix(std::uint32_t p, unsigned r, const Field& k) {
  const PointCoefs c{k, k.zero()};
  FiberRing<PointCoefs> ones(p, ones_shape(r), c);
  const auto cols = refine_columns(p, r, c, ones);
  const auto basis = admissible_basis(p, r);
  MatrixFq m(k, basis.size(), cols.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const std::size_t row = ones.index(as_exponents(basis[i]));
    for (std::size_t j = 0; j < cols.size(); ++j) m(i, j) = cols[j][row];
  }
  return m;
}

DualityReport duality_check(const GammaRing& ring, unsigned r, unsigned r2, std::size_t precision) {
  const std::uint32_t p = ring.p();
  const Field& k = ring.field();
  if (precision == 0 || precision > ring.trunc())
    throw std::invalid_argument("duality_check: precision must lie in 1..trunc");
  DualityReport rep;
  const unsigned n = r + r2;
  rep.basis_size = admissible_basis(p, n).size();
  rep.pairing_rank = rank_fq(pairing_matrix(p, n, k));

  if (r == 0 || r2 == 0) {
    // unit laws
    const GammaElement one = ring.unit();
    for (const Word& w : admissible_basis(p, n)) {
      const GammaElement m = ring.monomial(w);
      ++rep.pairs;
      if (!(ring.gamma_mul(one, m) == m) || !(ring.gamma_mul(m, one) == m)) ++rep.mismatches;
    }
    rep.ok = rep.mismatches == 0 && rep.pairing_rank == rep.basis_size;
    return rep;
  }

  const SeriesCoefs sc{k, precision};
  auto pair_table = [&](unsigned len, const SeriesCoefs& c) {
    FiberRing<SeriesCoefs> ones(p, ones_shape(len), c);
    const auto cols = refine_columns(p, len, c, ones);
    std::vector<std::vector<TruncSeries>> t;  // [word][monomial]
    for (const Word& w : admissible_basis(p, len)) {
      const std::size_t row = ones.index(as_exponents(w));
      std::vector<TruncSeries> v;
      for (const auto& col : cols) v.push_back(col[row]);
      t.push_back(std::move(v));
    }
    return t;
  };

  const auto bn = admissible_basis(p, n);
  const auto br = admissible_basis(p, r);
  const auto br2 = admissible_basis(p, r2);
  const auto pi_n = pair_table(n, sc);
  const auto pi_r = pair_table(r, sc);
  // psi must be known to x^{precision * sigma(p^r)}: x_1^sigma lies in (x_0) inside A_r
  const std::size_t deep = precision * sigma_pr(p, r);
  const auto psi = pair_table(r2, SeriesCoefs{k, deep});

  FiberRing<SeriesCoefs> an(p, {n}, sc), ar(p, {r}, sc), arr(p, {r, r2}, sc);
  const auto u1 = arr.u_matrix(1, an);
  rep.monomials = an.dim();

  // e[J][beta][alpha][I] = < P_I, x_1^alpha * psi_{J,beta}^{(p^r)}(x_1) >
  std::vector<std::vector<std::vector<std::vector<TruncSeries>>>> e(br2.size());
  for (std::size_t j = 0; j < br2.size(); ++j) {
    e[j].resize(psi[j].size());
    for (std::size_t beta = 0; beta < psi[j].size(); ++beta) {
      const TruncSeries f = frobenius_twist(psi[j][beta], r);
      auto v = ar.zero_vec();
      for (long m = f.degree(); m >= 0; --m) {
        v = ar.mul_var(1, v);
        v[0] = v[0] + TruncSeries::constant(k, precision, f.coeff(std::size_t(m)));
      }
      for (std::size_t alpha = 0; alpha < ar.dim(); ++alpha) {
        std::vector<TruncSeries> vals;
        for (std::size_t i = 0; i < br.size(); ++i) {
          TruncSeries s(k, precision);
          for (std::size_t g = 0; g < ar.dim(); ++g)
            if (!v[g].is_zero()) s += v[g] * pi_r[i][g];
          vals.push_back(std::move(s));
        }
        e[j][beta].push_back(std::move(vals));
        v = ar.mul_var(1, v);
      }
    }
  }

  for (std::size_t i = 0; i < br.size(); ++i)
    for (std::size_t j = 0; j < br2.size(); ++j) {
      ++rep.pairs;
      const GammaElement prod = ring.gamma_mul(ring.monomial(br[i]), ring.monomial(br2[j]));
      for (std::size_t g = 0; g < an.dim(); ++g) {
        TruncSeries lhs(k, precision);
        for (std::size_t t = 0; t < bn.size(); ++t) {
          const TruncSeries c = prod.coeff(bn[t]).with_trunc(precision);
          if (!c.is_zero()) lhs += c * pi_n[t][g];
        }
        TruncSeries rhs(k, precision);
        for (std::size_t idx = 0; idx < arr.dim(); ++idx) {
          if (u1[g][idx].is_zero()) continue;
          const std::size_t alpha = arr.digit(idx, 1), beta = arr.digit(idx, 2);
          rhs += u1[g][idx] * e[j][beta][alpha][i];
        }
        if (!(lhs == rhs)) ++rep.mismatches;
      }
    }
  rep.ok = rep.mismatches == 0 && rep.pairing_rank == rep.basis_size;
  return rep;
}

}  // namespace isocx

namespace isocx {

namespace {

GammaElement random_gamma(const GammaRing& ring, unsigned grade, std::mt19937_64& rng) {
  const Field& k = ring.field();
  const auto basis = admissible_basis(ring.p(), grade);
  std::map<Word, TruncSeries> terms;
  const std::size_t nterms = 1 + rng() % 2;
  for (std::size_t t = 0; t < nterms; ++t) {
    std::vector<Fq> cs;
    for (int d = 0; d <= 2; ++d) cs.push_back(k.element(rng() % k.size()));
    terms[basis[rng() % basis.size()]] = TruncSeries(k, ring.trunc(), cs);
  }
  return ring.from_terms(grade, terms);
}

}  // namespace

AssociativityReport associativity_check(const GammaRing& ring, unsigned max_grade, std::size_t triples,
                                        std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  AssociativityReport rep;
  NormalizeStats st;
  for (std::size_t t = 0; t < triples; ++t) {
    unsigned left = max_grade;
    const unsigned ga = unsigned(rng() % (left + 1));
    left -= ga;
    const unsigned gb = unsigned(rng() % (left + 1));
    left -= gb;
    const unsigned gc = unsigned(rng() % (left + 1));
    const auto a = random_gamma(ring, ga, rng), b = random_gamma(ring, gb, rng), c = random_gamma(ring, gc, rng);
    if (ring.gamma_mul(ring.gamma_mul(a, b, &st), c, &st) != ring.gamma_mul(a, ring.gamma_mul(b, c, &st), &st))
      ++rep.mismatches;
    ++rep.triples;
  }
  rep.rewrites = st.rewrites;
  rep.order_violations = st.order_violations;
  rep.ok = rep.mismatches == 0 && rep.order_violations == 0;
  return rep;
}

}  // namespace isocx

#include "isocx/subgroup_complex.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace isocx {

namespace {

using Row = std::vector<std::int64_t>;

std::int64_t ipow(std::int64_t b, unsigned e) {
  std::int64_t r = 1;
  while (e--) r *= b;
  return r;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::vector<std::int64_t> moduli(const AbelianPGroup& g) {
  std::vector<std::int64_t> m;
  for (unsigned e : g.exps) m.push_back(ipow(g.p, e));
  return m;
}

// Hermite form of the lattice spanned by rows together with diag(mods)
std::vector<Row> hermite(std::vector<Row> rows, const std::vector<std::int64_t>& mods) {
  const std::size_t n = mods.size();
  for (auto& r : rows)
    for (std::size_t j = 0; j < n; ++j) r[j] = ((r[j] % mods[j]) + mods[j]) % mods[j];
  for (std::size_t j = 0; j < n; ++j) {
    Row e(n, 0);
    e[j] = mods[j];
    rows.push_back(e);
  }
  std::vector<Row> h;
  for (std::size_t c = 0; c < n; ++c) {
    // Euclid on column c among the remaining rows
    for (;;) {
      std::size_t best = rows.size();
      for (std::size_t i = 0; i < rows.size(); ++i)
        if (rows[i][c] != 0 && (best == rows.size() || std::llabs(rows[i][c]) < std::llabs(rows[best][c]))) best = i;
      if (best == rows.size()) throw std::logic_error("hermite: lattice is not of full rank");
      bool done = true;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i == best || rows[i][c] == 0) continue;
        const std::int64_t q = rows[i][c] / rows[best][c];
        for (std::size_t j = c; j < n; ++j) rows[i][j] -= q * rows[best][j];
        if (rows[i][c] != 0) done = false;
      }
      if (done) {
        Row piv = rows[best];
        rows.erase(rows.begin() + std::ptrdiff_t(best));
        if (piv[c] < 0)
          for (auto& v : piv) v = -v;
        h.push_back(piv);
        // keep the rest small; diag(mods) lies in the lattice
        for (auto& r : rows)
          for (std::size_t j = c + 1; j < n; ++j) r[j] %= mods[j];
        std::erase_if(rows, [](const Row& r) { return std::all_of(r.begin(), r.end(), [](auto v) { return v == 0; }); });
        for (std::size_t j = c + 1; j < n; ++j) {
          Row e(n, 0);
          e[j] = mods[j];
          rows.push_back(e);
        }
        break;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      const std::int64_t q = floor_div(h[j][i], h[i][i]);
      if (q)
        for (std::size_t t = i; t < n; ++t) h[j][t] -= q * h[i][t];
    }
  return h;
}

// x = y * hnf with y integral, or nullopt
std::optional<Row> solve(const std::vector<Row>& h, Row x) {
  const std::size_t n = h.size();
  Row y(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] % h[i][i] != 0) return std::nullopt;
    y[i] = x[i] / h[i][i];
    for (std::size_t t = i; t < n; ++t) x[t] -= y[i] * h[i][t];
  }
  return y;
}

Subgroup from_hnf(const AbelianPGroup& g, std::vector<Row> h) {
  Subgroup s;
  unsigned idx = 0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    std::int64_t d = h[i][i];
    while (d > 1) {
      d /= g.p;
      ++idx;
    }
  }
  s.log_order = g.log_order() - idx;
  s.hnf = std::move(h);
  return s;
}

}  // namespace

std::uint64_t AbelianPGroup::order() const { return std::uint64_t(ipow(p, log_order())); }

unsigned AbelianPGroup::log_order() const { return std::accumulate(exps.begin(), exps.end(), 0u); }

void validate_group(const AbelianPGroup& g) {
  if (!is_prime(g.p)) throw std::invalid_argument("group: p must be prime");
  if (g.exps.empty() || g.exps.size() > 3) throw std::invalid_argument("group: one to three cyclic factors");
  for (std::size_t i = 0; i < g.exps.size(); ++i) {
    if (g.exps[i] == 0) throw std::invalid_argument("group: exponents must be positive");
    if (i && g.exps[i] > g.exps[i - 1]) throw std::invalid_argument("group: exponents must be descending");
  }
  std::uint64_t cap = 1;
  for (int i = 0; i < 9; ++i) cap *= g.p;
  if (g.order() > cap) throw std::invalid_argument("group: order exceeds p^9");
}

Subgroup subgroup_generated(const AbelianPGroup& g, const std::vector<std::vector<std::int64_t>>& gens) {
  for (const auto& x : gens)
    if (x.size() != g.exps.size()) throw std::invalid_argument("subgroup_generated: element of wrong length");
  return from_hnf(g, hermite(gens, moduli(g)));
}

bool subgroup_has_element(const Subgroup& s, const std::vector<std::int64_t>& x) { return solve(s.hnf, x).has_value(); }

bool subgroup_contains(const Subgroup& big, const Subgroup& small) {
  for (const auto& r : small.hnf)
    if (!subgroup_has_element(big, r)) return false;
  return true;
}

std::vector<unsigned> isomorphism_type(const AbelianPGroup& g, const Subgroup& s) {
  const auto mods = moduli(g);
  const std::size_t n = mods.size();
  // rows of diag(mods) in the basis of s; its Smith form presents s / diag(mods)
  MatrixZ c(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    Row e(n, 0);
    e[j] = mods[j];
    const auto y = solve(s.hnf, e);
    if (!y) throw std::logic_error("isomorphism_type: lattice does not contain the relations");
    for (std::size_t i = 0; i < n; ++i) c(j, i) = (*y)[i];
  }
  std::vector<unsigned> type;
  for (const BigInt& d : smith_normal_form(c)) {
    BigInt t = d;
    unsigned e = 0;
    while (t > 1) {
      if (t % g.p != 0) throw std::logic_error("isomorphism_type: invariant factor is not a p-power");
      t /= g.p;
      ++e;
    }
    if (e) type.push_back(e);
  }
  std::sort(type.rbegin(), type.rend());
  return type;
}

bool is_elementary(const AbelianPGroup& g, const Subgroup& s) {
  const auto t = isomorphism_type(g, s);
  return std::all_of(t.begin(), t.end(), [](unsigned e) { return e == 1; });
}

std::vector<Subgroup> enumerate_subgroups(const AbelianPGroup& g, std::optional<unsigned> log_order,
                                          std::optional<unsigned> max_log_order) {
  validate_group(g);
  const auto mods = moduli(g);
  const std::size_t n = mods.size();
  std::vector<Row> elements{Row(n, 0)};
  for (std::size_t j = 0; j < n; ++j) {
    // a subgroup of order <= p^k lies in the p^k-torsion
    std::int64_t step = 1;
    if (max_log_order)
      for (unsigned e = *max_log_order; e < g.exps[j]; ++e) step *= g.p;
    std::vector<Row> next;
    for (const auto& x : elements)
      for (std::int64_t v = 0; v < mods[j]; v += step) {
        Row y = x;
        y[j] = v;
        next.push_back(y);
      }
    elements = std::move(next);
  }
  std::set<Subgroup> seen;
  std::deque<Subgroup> queue;
  const Subgroup trivial = subgroup_generated(g, {});
  seen.insert(trivial);
  queue.push_back(trivial);
  while (!queue.empty()) {
    const Subgroup s = queue.front();
    queue.pop_front();
    for (const auto& x : elements) {
      if (subgroup_has_element(s, x)) continue;
      std::vector<Row> gens = s.hnf;
      gens.push_back(x);
      Subgroup t = subgroup_generated(g, gens);
      if (max_log_order && t.log_order > *max_log_order) continue;
      if (seen.insert(t).second) queue.push_back(std::move(t));
    }
  }
  std::vector<Subgroup> out;
  for (const auto& s : seen)
    if (!log_order || s.log_order == *log_order) out.push_back(s);
  return out;
}

SimplicialComplexData chain_complex_on(std::vector<Subgroup> vertices) {
  std::sort(vertices.begin(), vertices.end());
  SimplicialComplexData x;
  x.vertices = std::move(vertices);
  const std::size_t nv = x.vertices.size();
  std::vector<std::vector<std::size_t>> up(nv);
  for (std::size_t i = 0; i < nv; ++i)
    for (std::size_t j = i + 1; j < nv; ++j)
      if (x.vertices[i].log_order < x.vertices[j].log_order && subgroup_contains(x.vertices[j], x.vertices[i]))
        up[i].push_back(j);
  std::vector<std::size_t> chain;
  auto extend = [&](auto&& self, std::size_t v) -> void {
    chain.push_back(v);
    const std::size_t d = chain.size() - 1;
    if (x.faces.size() <= d) x.faces.resize(d + 1);
    x.faces[d].push_back(chain);
    for (std::size_t w : up[v]) self(self, w);
    chain.pop_back();
  };
  for (std::size_t v = 0; v < nv; ++v) extend(extend, v);
  for (auto& f : x.faces) std::sort(f.begin(), f.end());
  return x;
}

SimplicialComplexData order_complex(const AbelianPGroup& g) {
  std::vector<Subgroup> proper;
  for (auto& s : enumerate_subgroups(g))
    if (s.log_order > 0 && s.log_order < g.log_order()) proper.push_back(std::move(s));
  return chain_complex_on(std::move(proper));
}

namespace {

// boundary C_d -> C_{d-1} (d >= 0; C_{-1} = Z) as an integer matrix
MatrixZ simplicial_boundary(const SimplicialComplexData& x, int d) {
  const std::size_t rows = d == 0 ? 1 : x.count(d - 1);
  MatrixZ m(rows, x.count(d));
  if (d == 0) {
    for (std::size_t j = 0; j < x.count(0); ++j) m(0, j) = 1;
    return m;
  }
  std::map<std::vector<std::size_t>, std::size_t> index;
  const auto& lower = x.faces[std::size_t(d - 1)];
  for (std::size_t i = 0; i < lower.size(); ++i) index[lower[i]] = i;
  const auto& faces = x.faces[std::size_t(d)];
  for (std::size_t j = 0; j < faces.size(); ++j)
    for (std::size_t i = 0; i < faces[j].size(); ++i) {
      auto f = faces[j];
      f.erase(f.begin() + std::ptrdiff_t(i));
      m(index.at(f), j) += i % 2 ? -1 : 1;
    }
  return m;
}

}  // namespace

bool ReducedHomology::torsion_free() const {
  return std::all_of(torsion.begin(), torsion.end(), [](const auto& t) { return t.empty(); });
}

std::vector<std::pair<int, std::size_t>> ReducedHomology::support() const {
  std::vector<std::pair<int, std::size_t>> out;
  for (std::size_t i = 0; i < ranks.size(); ++i)
    if (ranks[i]) out.emplace_back(int(i) - 1, ranks[i]);
  return out;
}

ReducedHomology reduced_homology(const SimplicialComplexData& x) {
  const int top = x.dimension();
  ReducedHomology h;
  h.integral = true;
  // bd[d + 1] = boundary out of degree d, d = 0..top; rank and factors
  std::vector<std::size_t> rk(std::size_t(top + 3), 0);
  std::vector<std::vector<BigInt>> inv(std::size_t(top + 3));
  for (int d = 0; d <= top; ++d) {
    const MatrixZ b = simplicial_boundary(x, d);
    auto f = smith_normal_form(b);
    rk[std::size_t(d + 1)] = f.size();
    inv[std::size_t(d + 1)] = std::move(f);
  }
  for (int d = -1; d <= top; ++d) {
    const std::size_t dim = d == -1 ? 1 : x.count(d);
    h.ranks.push_back(dim - rk[std::size_t(d + 1)] - rk[std::size_t(d + 2)]);
    std::vector<BigInt> tors;
    for (const BigInt& v : inv[std::size_t(d + 2)])
      if (v > 1) tors.push_back(v);
    h.torsion.push_back(std::move(tors));
  }
  return h;
}

ReducedHomology reduced_homology(const SimplicialComplexData& x, const Field& k) {
  const int top = x.dimension();
  ReducedHomology h;
  h.integral = false;
  std::vector<std::size_t> rk(std::size_t(top + 3), 0);
  for (int d = 0; d <= top; ++d) {
    const MatrixFq b = reduce_mod(simplicial_boundary(x, d), k);
    rk[std::size_t(d + 1)] = b.rows() && b.cols() ? rank_fq(b) : 0;
  }
  for (int d = -1; d <= top; ++d) {
    const std::size_t dim = d == -1 ? 1 : x.count(d);
    h.ranks.push_back(dim - rk[std::size_t(d + 1)] - rk[std::size_t(d + 2)]);
    h.torsion.emplace_back();
  }
  return h;
}

GroupComplex build_group_complex(std::uint32_t p, unsigned r, unsigned m, const Field& k) {
  if (k.characteristic() != p) throw std::invalid_argument("build_group_complex: field characteristic differs from p");
  if (m < r) throw std::invalid_argument("build_group_complex: torsion level below r");
  if (m == 0) throw std::invalid_argument("build_group_complex: torsion level must be positive");
  GroupComplex gc;
  gc.ambient = AbelianPGroup{p, {m, m}};
  gc.complex.field = k;
  gc.complex.lo = 0;
  if (r == 0) {
    gc.chains = {{GroupChain{}}};
    gc.complex.dims = {1};
    return gc;
  }
  for (auto& s : enumerate_subgroups(gc.ambient, std::nullopt, r))
    if (s.log_order >= 1 && s.log_order <= r) gc.subgroups.push_back(std::move(s));
  const std::size_t ns = gc.subgroups.size();
  std::vector<std::vector<std::size_t>> down(ns);
  for (std::size_t i = 0; i < ns; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (gc.subgroups[j].log_order < gc.subgroups[i].log_order && subgroup_contains(gc.subgroups[i], gc.subgroups[j]))
        down[i].push_back(j);

  gc.chains.assign(r + 1, {});
  std::vector<std::size_t> rev;
  auto descend = [&](auto&& self, std::size_t v) -> void {
    rev.push_back(v);
    GroupChain c;
    c.members.assign(rev.rbegin(), rev.rend());
    gc.chains[rev.size()].push_back(std::move(c));
    for (std::size_t w : down[v]) self(self, w);
    rev.pop_back();
  };
  for (std::size_t t = 0; t < ns; ++t)
    if (gc.subgroups[t].log_order == r) descend(descend, t);
  for (auto& cs : gc.chains)
    std::sort(cs.begin(), cs.end(), [](const GroupChain& a, const GroupChain& b) { return a.members < b.members; });

  gc.complex.dims.assign(r + 1, 0);
  for (unsigned q = 0; q <= r; ++q) gc.complex.dims[q] = gc.chains[q].size();
  for (unsigned q = 0; q < r; ++q) {
    MatrixFq d(k, gc.complex.dims[q + 1], gc.complex.dims[q]);
    std::map<std::vector<std::size_t>, std::size_t> index;
    for (std::size_t i = 0; i < gc.chains[q].size(); ++i) index[gc.chains[q][i].members] = i;
    for (std::size_t row = 0; row < gc.chains[q + 1].size(); ++row) {
      const auto& mem = gc.chains[q + 1][row].members;
      // omit G_k for k = 1..q; the top member stays
      for (std::size_t kk = 1; kk <= q; ++kk) {
        auto f = mem;
        f.erase(f.begin() + std::ptrdiff_t(kk - 1));
        d.add_to(row, index.at(f), k.from_int(kk % 2 ? -1 : 1));
      }
    }
    gc.complex.d.push_back(std::move(d));
  }
  check_complex(gc.complex);
  return gc;
}

GroupComplex build_group_complex(std::uint32_t p, unsigned r, unsigned m) {
  return build_group_complex(p, r, m, Field::prime(p));
}

ProductDecompositionReport product_decomposition_check(std::uint32_t p, unsigned r, unsigned m) {
  const Field k = Field::prime(p);
  const GroupComplex gc = build_group_complex(p, r, m, k);
  ProductDecompositionReport rep;
  rep.total = cohomology(gc.complex);
  rep.dims_match = rep.differential_match = rep.homology_match = true;

  if (r == 0) {
    ProductFactor f;
    f.homology = rep.total;
    f.prediction_ok = rep.total.rank(0) == 1;
    rep.factors.push_back(f);
    rep.elementary = 1;
    rep.ok = f.prediction_ok;
    return rep;
  }

  const std::uint64_t steinberg = std::uint64_t(ipow(p, r * (r - 1) / 2));
  std::vector<std::size_t> sum_ranks(r + 1, 0), block_total(r + 1, 0);
  for (std::size_t t = 0; t < gc.subgroups.size(); ++t) {
    const Subgroup& top = gc.subgroups[t];
    if (top.log_order != r) continue;
    ProductFactor f;
    f.group = top;
    f.type = isomorphism_type(gc.ambient, top);
    const bool elementary =
        f.type.size() == r && std::all_of(f.type.begin(), f.type.end(), [](unsigned e) { return e == 1; });
    if (elementary) ++rep.elementary;

    // D_G: cochains on reduced chains of P_G, degree q <-> simplices of dim q-2
    std::vector<Subgroup> inner;
    for (const Subgroup& s : gc.subgroups)
      if (s.log_order < r && subgroup_contains(top, s)) inner.push_back(s);
    const SimplicialComplexData pg = chain_complex_on(inner);
    FieldComplex dg;
    dg.field = k;
    dg.lo = 1;
    for (unsigned q = 1; q <= r; ++q) dg.dims.push_back(q == 1 ? 1 : pg.count(int(q) - 2));
    for (unsigned q = 1; q < r; ++q) dg.d.push_back(reduce_mod(simplicial_boundary(pg, int(q) - 1), k).transpose());
    check_complex(dg);
    f.homology = cohomology(dg);
    for (unsigned q = 1; q <= r; ++q) block_total[q] += dg.dims[q - 1];

    // chains topped by G <-> simplices of P_G
    std::map<Subgroup, std::size_t> local;
    for (std::size_t i = 0; i < pg.vertices.size(); ++i) local[pg.vertices[i]] = i;
    std::vector<std::vector<std::size_t>> rows(r + 1);
    for (unsigned q = 1; q <= r; ++q) {
      std::map<std::vector<std::size_t>, std::size_t> simplex_index;
      if (q >= 2)
        for (std::size_t i = 0; i < pg.count(int(q) - 2); ++i) simplex_index[pg.faces[q - 2][i]] = i;
      rows[q].assign(dg.dims[q - 1], SIZE_MAX);
      for (std::size_t c = 0; c < gc.chains[q].size(); ++c) {
        const auto& mem = gc.chains[q][c].members;
        if (mem.back() != t) continue;
        std::vector<std::size_t> simplex;
        for (std::size_t i = 0; i + 1 < mem.size(); ++i) simplex.push_back(local.at(gc.subgroups[mem[i]]));
        rows[q][q == 1 ? 0 : simplex_index.at(simplex)] = c;
      }
      if (std::count(rows[q].begin(), rows[q].end(), SIZE_MAX)) rep.dims_match = false;
    }
    // the group coboundary is -1 times the dual simplicial boundary
    if (rep.dims_match)
      for (unsigned q = 1; q < r; ++q) {
        const MatrixFq& big = gc.complex.d[q];
        const MatrixFq& small = dg.d[q - 1];
        for (std::size_t i = 0; i < small.rows(); ++i)
          for (std::size_t j = 0; j < small.cols(); ++j)
            if (!(big(rows[q + 1][i], rows[q][j]) == k.neg(small(i, j)))) rep.differential_match = false;
      }

    bool pred = true;
    for (unsigned q = 1; q <= r; ++q) {
      const std::size_t want = elementary && q == r ? steinberg : 0;
      pred = pred && f.homology.rank(int(q)) == want;
      sum_ranks[q] += f.homology.rank(int(q));
    }
    f.prediction_ok = pred;
    rep.factors.push_back(std::move(f));
  }

  for (unsigned q = 1; q <= r; ++q)
    if (block_total[q] != gc.complex.dims[q]) rep.dims_match = false;
  // no entry of the coboundary changes the top of a chain
  for (unsigned q = 1; q < r; ++q) {
    const MatrixFq& d = gc.complex.d[q];
    for (std::size_t i = 0; i < d.rows(); ++i)
      for (std::size_t j = 0; j < d.cols(); ++j)
        if (!d(i, j).is_zero() && gc.chains[q + 1][i].members.back() != gc.chains[q][j].members.back())
          rep.differential_match = false;
  }
  for (unsigned q = 0; q <= r; ++q)
    if (rep.total.rank(int(q)) != (q == 0 ? 0 : sum_ranks[q])) rep.homology_match = false;
  const bool preds = std::all_of(rep.factors.begin(), rep.factors.end(), [](const auto& f) { return f.prediction_ok; });
  rep.ok = rep.dims_match && rep.differential_match && rep.homology_match && preds;
  return rep;
}

}  // namespace isocx

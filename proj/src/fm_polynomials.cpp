#include "isocx/fm_polynomials.hpp"

#include <algorithm>
#include <stdexcept>

#include "isocx/field.hpp"

namespace isocx {

unsigned IntBivarPoly::deg_x() const {
  unsigned d = 0;
  for (const auto& [e, c] : terms) d = std::max(d, e.first);
  return d;
}

unsigned IntBivarPoly::deg_y() const {
  unsigned d = 0;
  for (const auto& [e, c] : terms) d = std::max(d, e.second);
  return d;
}

unsigned num_divisors(std::uint64_t m) {
  unsigned c = 0;
  for (std::uint64_t d = 1; d <= m; ++d) c += m % d == 0;
  return c;
}

std::uint64_t sigma(std::uint64_t m) {
  std::uint64_t s = 0;
  for (std::uint64_t d = 1; d <= m; ++d)
    if (m % d == 0) s += d;
  return s;
}

namespace {

IntBivarPoly bivar_mul(const IntBivarPoly& a, const IntBivarPoly& b) {
  IntBivarPoly c;
  for (const auto& [ea, ca] : a.terms)
    for (const auto& [eb, cb] : b.terms) c.terms[{ea.first + eb.first, ea.second + eb.second}] += ca * cb;
  std::erase_if(c.terms, [](const auto& kv) { return kv.second == 0; });
  return c;
}

}  // namespace

IntBivarPoly f_m(std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("f_m: m must be positive");
  std::vector<std::pair<unsigned, unsigned>> pairs;
  for (std::uint64_t d = 1; d <= m; ++d)
    if (m % d == 0) pairs.emplace_back(unsigned(d), unsigned(m / d));
  // multiply factors in increasing total degree
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const auto& a, const auto& b) { return a.first + a.second < b.first + b.second; });
  IntBivarPoly out;
  out.terms[{0, 0}] = 1;
  for (const auto& [d, e] : pairs) {
    IntBivarPoly factor;
    factor.terms[{d, 0}] = 1;
    factor.terms[{0, e}] = -1;
    out = bivar_mul(out, factor);
  }
  return out;
}

namespace {

using Key = std::array<unsigned, 3>;

// reduce P modulo R in variable v, where R has a single term of top v-degree with coefficient +-1
std::size_t reduce_in(std::map<Key, BigInt>& poly, const std::map<Key, BigInt>& rel, std::size_t v) {
  // order keys with v first so the map's last entry has the largest v-exponent
  auto perm = [v](const Key& k) { return Key{k[v], k[(v + 1) % 3], k[(v + 2) % 3]}; };
  auto unperm = [v](const Key& k) {
    Key out{};
    out[v] = k[0];
    out[(v + 1) % 3] = k[1];
    out[(v + 2) % 3] = k[2];
    return out;
  };
  unsigned top = 0;
  for (const auto& [k, c] : rel) top = std::max(top, k[v]);
  BigInt lead;
  std::vector<std::pair<Key, BigInt>> tail;
  for (const auto& [k, c] : rel) {
    if (k[v] == top) {
      if (k[(v + 1) % 3] || k[(v + 2) % 3] || !(c == 1 || c == -1))
        throw std::logic_error("ideal_membership: relation is not monic up to sign");
      lead = c;
    }
  }
  // v^top = -lead * tail
  for (const auto& [k, c] : rel)
    if (k[v] != top) tail.emplace_back(perm(k), -c * lead);

  std::map<Key, BigInt> work;
  for (const auto& [k, c] : poly) work[perm(k)] += c;
  std::size_t steps = 0;
  while (!work.empty()) {
    auto last = std::prev(work.end());
    if (last->first[0] < top) break;
    const Key k = last->first;
    const BigInt c = last->second;
    work.erase(last);
    if (c == 0) continue;
    for (const auto& [t, tc] : tail) {
      const Key nk{k[0] - top + t[0], k[1] + t[1], k[2] + t[2]};
      BigInt& slot = work[nk];
      slot += c * tc;
      if (slot == 0) work.erase(nk);
    }
    ++steps;
  }
  poly.clear();
  for (const auto& [k, c] : work)
    if (c != 0) poly[unperm(k)] = c;
  return steps;
}

}  // namespace

MembershipResult ideal_membership(std::uint64_t m, std::uint64_t n, std::uint64_t budget) {
  if (m == 0 || n == 0) throw std::invalid_argument("ideal_membership: m and n must be positive");
  if (sigma(m) * sigma(n) * sigma(m * n) > budget) throw std::length_error("ideal_membership: budget exceeded");
  std::map<Key, BigInt> target, rel_n, rel_m;
  for (const auto& [e, c] : f_m(m * n).terms) target[{e.first, 0, e.second}] = c;  // F_mn(x, z)
  for (const auto& [e, c] : f_m(n).terms) rel_n[{0, e.first, e.second}] = c;       // F_n(y, z)
  for (const auto& [e, c] : f_m(m).terms) rel_m[{e.first, e.second, 0}] = c;       // F_m(x, y)
  MembershipResult res;
  res.steps += reduce_in(target, rel_n, 2);
  res.steps += reduce_in(target, rel_m, 1);
  res.remainder_terms = target.size();
  res.member = target.empty();
  return res;
}

std::uint32_t FiniteRing::pow(std::uint32_t a, std::uint64_t e) const {
  std::uint32_t r = one_;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

std::uint32_t FiniteRing::from_int(const BigInt& z) const {
  BigInt m = z % char_;
  if (m < 0) m += char_;
  // constants are encoded as themselves in every ring built here
  return m.convert_to<std::uint32_t>();
}

FiniteRing FiniteRing::integers_mod(std::uint32_t n) {
  if (n < 2) throw std::invalid_argument("integers_mod: n must be at least 2");
  if (std::uint64_t(n) * n > (1u << 24)) throw std::length_error("integers_mod: ring too large");
  FiniteRing r;
  r.n_ = n;
  r.one_ = 1;
  r.char_ = n;
  r.name_ = "Z/" + std::to_string(n);
  r.add_.resize(std::size_t(n) * n);
  r.mul_.resize(std::size_t(n) * n);
  r.neg_.resize(n);
  for (std::uint32_t a = 0; a < n; ++a) {
    r.neg_[a] = (n - a) % n;
    for (std::uint32_t b = 0; b < n; ++b) {
      r.add_[std::size_t(a) * n + b] = (a + b) % n;
      r.mul_[std::size_t(a) * n + b] = std::uint32_t(std::uint64_t(a) * b % n);
    }
  }
  return r;
}

FiniteRing FiniteRing::poly_quotient(std::uint32_t p, const std::vector<std::uint32_t>& g, std::string name) {
  const std::size_t k = g.size();
  std::uint32_t n = 1;
  for (std::size_t i = 0; i < k; ++i) n *= p;
  if (std::uint64_t(n) * n > (1u << 24)) throw std::length_error("poly_quotient: ring too large");
  auto digits = [&](std::uint32_t a) {
    std::vector<std::uint32_t> d(k);
    for (std::size_t i = 0; i < k; ++i, a /= p) d[i] = a % p;
    return d;
  };
  auto encode = [&](const std::vector<std::uint32_t>& d) {
    std::uint32_t a = 0;
    for (std::size_t i = k; i-- > 0;) a = a * p + d[i];
    return a;
  };
  FiniteRing r;
  r.n_ = n;
  r.one_ = 1;
  r.char_ = p;
  r.name_ = std::move(name);
  r.add_.resize(std::size_t(n) * n);
  r.mul_.resize(std::size_t(n) * n);
  r.neg_.resize(n);
  for (std::uint32_t a = 0; a < n; ++a) {
    const auto da = digits(a);
    std::vector<std::uint32_t> ng(k);
    for (std::size_t i = 0; i < k; ++i) ng[i] = (p - da[i]) % p;
    r.neg_[a] = encode(ng);
    for (std::uint32_t b = 0; b < n; ++b) {
      const auto db = digits(b);
      std::vector<std::uint32_t> s(k);
      for (std::size_t i = 0; i < k; ++i) s[i] = (da[i] + db[i]) % p;
      r.add_[std::size_t(a) * n + b] = encode(s);
      std::vector<std::uint64_t> prod(2 * k, 0);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + std::uint64_t(da[i]) * db[j]) % p;
      // t^k = -sum g_i t^i
      for (std::size_t d = 2 * k; d-- > k;) {
        const std::uint64_t c = prod[d];
        if (!c) continue;
        prod[d] = 0;
        for (std::size_t i = 0; i < k; ++i) prod[d - k + i] = (prod[d - k + i] + (p - g[i]) % p * c) % p;
      }
      std::vector<std::uint32_t> m(k);
      for (std::size_t i = 0; i < k; ++i) m[i] = std::uint32_t(prod[i]);
      r.mul_[std::size_t(a) * n + b] = encode(m);
    }
  }
  return r;
}

namespace {

// does the monic h (low to high, leading 1 included) divide the monic g over F_p
bool divides(std::vector<std::uint32_t> g, const std::vector<std::uint32_t>& h, std::uint32_t p) {
  const std::size_t dh = h.size() - 1;
  for (std::size_t d = g.size() - 1; d + 1 > dh; --d) {
    const std::uint32_t c = g[d];
    if (c)
      for (std::size_t i = 0; i <= dh; ++i)
        g[d - dh + i] = std::uint32_t((g[d - dh + i] + (p - c) * std::uint64_t(h[i])) % p);
    if (d == 0) break;
  }
  return std::all_of(g.begin(), g.end(), [](auto v) { return v == 0; });
}

std::vector<std::vector<std::uint32_t>> monic_of_degree(std::uint32_t p, std::size_t d) {
  std::vector<std::vector<std::uint32_t>> out;
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < d; ++i) count *= p;
  for (std::uint64_t c = 0; c < count; ++c) {
    std::vector<std::uint32_t> h(d + 1);
    std::uint64_t t = c;
    for (std::size_t i = 0; i < d; ++i, t /= p) h[i] = std::uint32_t(t % p);
    h[d] = 1;
    out.push_back(h);
  }
  return out;
}

}  // namespace

FiniteRing FiniteRing::galois(std::uint32_t q) {
  std::uint32_t p = 0;
  for (std::uint32_t d = 2; d <= q; ++d)
    if (q % d == 0) {
      p = d;
      break;
    }
  if (p == 0) throw std::invalid_argument("galois: q must be a prime power");
  std::size_t k = 0;
  for (std::uint32_t t = q; t > 1; t /= p, ++k)
    if (t % p) throw std::invalid_argument("galois: q must be a prime power");
  if (k == 1) {
    FiniteRing r = integers_mod(p);
    r.name_ = "F_" + std::to_string(q);
    return r;
  }
  for (const auto& g : monic_of_degree(p, k)) {
    bool irreducible = true;
    for (std::size_t d = 1; d <= k / 2 && irreducible; ++d)
      for (const auto& h : monic_of_degree(p, d))
        if (divides(g, h, p)) {
          irreducible = false;
          break;
        }
    if (irreducible) return poly_quotient(p, std::vector<std::uint32_t>(g.begin(), g.end() - 1), "F_" + std::to_string(q));
  }
  throw std::logic_error("galois: no irreducible polynomial found");
}

FiniteRing FiniteRing::truncated(std::uint32_t p, unsigned e) {
  if (!is_prime(p)) throw std::invalid_argument("truncated: p must be prime");
  if (e == 0) throw std::invalid_argument("truncated: e must be positive");
  return poly_quotient(p, std::vector<std::uint32_t>(e, 0),
                       "F_" + std::to_string(p) + "[t]/(t^" + std::to_string(e) + ")");
}

std::uint32_t eval_f(const FiniteRing& r, const IntBivarPoly& f, std::uint32_t a, std::uint32_t b) {
  std::uint32_t acc = r.zero();
  for (const auto& [e, c] : f.terms)
    acc = r.add(acc, r.mul(r.from_int(c), r.mul(r.pow(a, e.first), r.pow(b, e.second))));
  return acc;
}

std::uint32_t eval_f_product(const FiniteRing& r, std::uint64_t m, std::uint32_t a, std::uint32_t b) {
  std::uint32_t acc = r.one();
  for (std::uint64_t d = 1; d <= m; ++d)
    if (m % d == 0) acc = r.mul(acc, r.sub(r.pow(a, d), r.pow(b, m / d)));
  return acc;
}

namespace {

void check_budget(const FiniteRing& r, unsigned m_max, std::uint64_t budget) {
  if (m_max == 0) throw std::invalid_argument("category_closure_check: m_max must be positive");
  const std::uint64_t n = r.size();
  if (n * n * n * m_max * m_max > budget) throw std::length_error("category_closure_check: budget exceeded");
}

constexpr std::size_t kExamples = 5;

}  // namespace

ClosureReport category_closure_check(const FiniteRing& r, unsigned m_max, std::uint64_t budget) {
  check_budget(r, m_max, budget);
  const std::uint32_t n = r.size();
  const unsigned top = m_max * m_max;
  // zero[k][a * n + b] = [F_k(a, b) = 0], for every k that can occur
  std::vector<std::vector<std::uint8_t>> zero(top + 1);
  std::vector<unsigned> needed;
  for (unsigned m = 1; m <= m_max; ++m)
    for (unsigned k = 1; k <= m_max; ++k) needed.push_back(m * k);
  std::sort(needed.begin(), needed.end());
  needed.erase(std::unique(needed.begin(), needed.end()), needed.end());
  for (unsigned k : needed) {
    const IntBivarPoly f = f_m(k);
    auto& z = zero[k];
    z.assign(std::size_t(n) * n, 0);
#pragma omp parallel for schedule(static)
    for (std::int64_t a = 0; a < std::int64_t(n); ++a)
      for (std::uint32_t b = 0; b < n; ++b) z[std::size_t(a) * n + b] = eval_f(r, f, std::uint32_t(a), b) == r.zero();
  }

  ClosureReport rep;
  rep.ring = r.name();
  rep.size = n;
  rep.m_max = m_max;
  std::vector<std::uint64_t> comp(n, 0), bad(n, 0);
  std::vector<std::vector<std::array<std::uint64_t, 5>>> ex(n);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t ai = 0; ai < std::int64_t(n); ++ai) {
    const std::size_t a = std::size_t(ai);
    for (unsigned m = 1; m <= m_max; ++m)
      for (unsigned k = 1; k <= m_max; ++k)
        for (std::uint32_t b = 0; b < n; ++b) {
          if (!zero[m][a * n + b]) continue;
          for (std::uint32_t c = 0; c < n; ++c) {
            if (!zero[k][std::size_t(b) * n + c]) continue;
            ++comp[a];
            if (!zero[m * k][a * n + c]) {
              ++bad[a];
              if (ex[a].size() < kExamples) ex[a].push_back({a, b, c, m, k});
            }
          }
        }
  }
  rep.triples = std::uint64_t(n) * n * n * m_max * m_max;
  for (std::uint32_t a = 0; a < n; ++a) {
    rep.composable += comp[a];
    rep.counterexamples += bad[a];
    for (const auto& e : ex[a])
      if (rep.examples.size() < kExamples) rep.examples.push_back(e);
  }
  rep.ok = rep.counterexamples == 0;
  return rep;
}

ClosureReport category_closure_check_serial(const FiniteRing& r, unsigned m_max, std::uint64_t budget) {
  check_budget(r, m_max, budget);
  const std::uint32_t n = r.size();
  ClosureReport rep;
  rep.ring = r.name();
  rep.size = n;
  rep.m_max = m_max;
  for (std::uint32_t a = 0; a < n; ++a)
    for (unsigned m = 1; m <= m_max; ++m)
      for (unsigned k = 1; k <= m_max; ++k)
        for (std::uint32_t b = 0; b < n; ++b) {
          if (eval_f_product(r, m, a, b) != r.zero()) continue;
          for (std::uint32_t c = 0; c < n; ++c) {
            if (eval_f_product(r, k, b, c) != r.zero()) continue;
            ++rep.composable;
            if (eval_f_product(r, m * k, a, c) != r.zero()) {
              ++rep.counterexamples;
              if (rep.examples.size() < kExamples) rep.examples.push_back({a, b, c, m, k});
            }
          }
        }
  rep.triples = std::uint64_t(n) * n * n * m_max * m_max;
  rep.ok = rep.counterexamples == 0;
  return rep;
}

}  // namespace isocx

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "isocx/matrix.hpp"

namespace isocx {

/// Integer polynomial in (x, y): (x exponent, y exponent) -> coefficient.
struct IntBivarPoly {
  std::map<std::pair<unsigned, unsigned>, BigInt> terms;

  unsigned deg_x() const;
  unsigned deg_y() const;
  friend bool operator==(const IntBivarPoly&, const IntBivarPoly&) = default;
};

/// (x, y, z) exponents -> coefficient.
struct IntTrivarPoly {
  std::map<std::array<unsigned, 3>, BigInt> terms;
};

// number of divisors
unsigned num_divisors(std::uint64_t m);
std::uint64_t sigma(std::uint64_t m);

// prod over d*e = m of (x^d - y^e)
IntBivarPoly f_m(std::uint64_t m);

struct MembershipResult {
  bool member = false;
  std::size_t remainder_terms = 0;
  std::size_t steps = 0;
};
// F_mn(x,z) in (F_m(x,y), F_n(y,z)) over Z; throws std::length_error past the budget
MembershipResult ideal_membership(std::uint64_t m, std::uint64_t n, std::uint64_t budget = 1u << 20);

/// A finite commutative ring given by addition and multiplication tables.
class FiniteRing {
 public:
  // Z/n
  static FiniteRing integers_mod(std::uint32_t n);
  // F_q for a prime power q
  static FiniteRing galois(std::uint32_t q);
  // F_p[t]/(t^e), p prime
  static FiniteRing truncated(std::uint32_t p, unsigned e);

  std::uint32_t size() const { return n_; }
  const std::string& name() const { return name_; }
  std::uint32_t zero() const { return 0; }
  std::uint32_t one() const { return one_; }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return add_[std::size_t(a) * n_ + b]; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return mul_[std::size_t(a) * n_ + b]; }
  std::uint32_t neg(std::uint32_t a) const { return neg_[a]; }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;
  // image of an integer
  std::uint32_t from_int(const BigInt& z) const;

 private:
  // F_p[t]/(g) with g monic of degree k (coefficients low to high, without the leading 1)
  static FiniteRing poly_quotient(std::uint32_t p, const std::vector<std::uint32_t>& g, std::string name);

  std::uint32_t n_ = 1, one_ = 0, char_ = 1;
  std::string name_;
  std::vector<std::uint32_t> add_, mul_, neg_;
};

// F_m(a, b) from the expanded integer polynomial
std::uint32_t eval_f(const FiniteRing& r, const IntBivarPoly& f, std::uint32_t a, std::uint32_t b);
// F_m(a, b) as the product of its factors
std::uint32_t eval_f_product(const FiniteRing& r, std::uint64_t m, std::uint32_t a, std::uint32_t b);

struct ClosureReport {
  std::string ring;
  std::uint32_t size = 0;
  unsigned m_max = 0;
  std::uint64_t triples = 0;      // (a, b, c, m, n) examined
  std::uint64_t composable = 0;   // premises held
  std::uint64_t counterexamples = 0;
  std::vector<std::array<std::uint64_t, 5>> examples;  // first few (a, b, c, m, n)
  bool ok = false;
};
// OpenMP over a, zero tables from the expanded polynomials
ClosureReport category_closure_check(const FiniteRing& r, unsigned m_max, std::uint64_t budget = 1u << 28);
// serial reference evaluating each factor product directly
ClosureReport category_closure_check_serial(const FiniteRing& r, unsigned m_max, std::uint64_t budget = 1u << 28);

}  // namespace isocx

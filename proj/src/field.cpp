#include "isocx/field.hpp"

#include <stdexcept>

namespace isocx {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint64_t sigma_pr(std::uint64_t p, unsigned r) {
  std::uint64_t s = 0, pw = 1;
  for (unsigned i = 0; i <= r; ++i, pw *= p) s += pw;
  return s;
}

Field::Field(const FieldSpec& spec) : spec_(spec) {
  if (!is_prime(spec.p) || spec.p > 65521)
    throw std::invalid_argument("field characteristic must be a prime below 2^16");
  if (spec.m != 1 && spec.m != 2) throw std::invalid_argument("field degree must be 1 or 2");
  if (spec.m == 1) {
    spec_.mod0 = spec_.mod1 = 0;
    return;
  }
  if (spec.mod0 >= spec.p || spec.mod1 >= spec.p)
    throw std::invalid_argument("modulus coefficients out of range");
  for (std::uint64_t t = 0; t < spec.p; ++t)
    if ((t * t + spec.mod1 * t + spec.mod0) % spec.p == 0)
      throw std::invalid_argument("modulus is reducible over the prime field");
}

Field Field::prime(std::uint32_t p) { return Field(FieldSpec{p, 1, 0, 0}); }

Field Field::quadratic(std::uint32_t p) {
  if (!is_prime(p)) throw std::invalid_argument("characteristic must be prime");
  for (std::uint32_t a = 0; a < p; ++a)
    for (std::uint32_t b = 1; b < p; ++b) {
      bool has_root = false;
      for (std::uint64_t t = 0; t < p && !has_root; ++t)
        has_root = (t * t + a * t + b) % p == 0;
      if (!has_root) return Field(FieldSpec{p, 2, b, a});
    }
  throw std::logic_error("no irreducible quadratic found");
}

std::uint64_t Field::size() const {
  return spec_.m == 1 ? spec_.p : std::uint64_t(spec_.p) * spec_.p;
}

Fq Field::from_int(std::int64_t v) const {
  std::int64_t p = spec_.p;
  std::int64_t r = v % p;
  if (r < 0) r += p;
  return {std::uint32_t(r), 0};
}

Fq Field::gen() const {
  if (spec_.m != 2) throw std::logic_error("gen() requires a degree-2 field");
  return {0, 1};
}

Fq Field::add(Fq a, Fq b) const {
  const std::uint32_t p = spec_.p;
  return {(a.c0 + b.c0) % p, (a.c1 + b.c1) % p};
}

Fq Field::sub(Fq a, Fq b) const {
  const std::uint32_t p = spec_.p;
  return {(a.c0 + p - b.c0) % p, (a.c1 + p - b.c1) % p};
}

Fq Field::neg(Fq a) const { return sub(zero(), a); }

Fq Field::mul(Fq a, Fq b) const {
  const std::uint64_t p = spec_.p;
  if (spec_.m == 1) return {std::uint32_t(std::uint64_t(a.c0) * b.c0 % p), 0};
  // (a0 + a1 t)(b0 + b1 t), t^2 = -mod1 t - mod0
  std::uint64_t c0 = std::uint64_t(a.c0) * b.c0 % p;
  std::uint64_t c1 = (std::uint64_t(a.c0) * b.c1 + std::uint64_t(a.c1) * b.c0) % p;
  std::uint64_t c2 = std::uint64_t(a.c1) * b.c1 % p;
  c0 = (c0 + (p - c2) * spec_.mod0) % p;
  c1 = (c1 + (p - c2) * spec_.mod1) % p;
  return {std::uint32_t(c0), std::uint32_t(c1)};
}

Fq Field::pow(Fq a, std::uint64_t e) const {
  Fq result = one();
  while (e) {
    if (e & 1) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

Fq Field::inv(Fq a) const {
  if (a.is_zero()) throw std::domain_error("inverse of zero");
  return pow(a, size() - 2);
}

Fq Field::frobenius(Fq a, unsigned r) const {
  // a^(p^m) = a, so only r mod m matters
  r %= spec_.m;
  for (unsigned i = 0; i < r; ++i) a = pow(a, spec_.p);
  return a;
}

Fq Field::element(std::uint64_t i) const {
  if (i >= size()) throw std::out_of_range("field element index");
  return {std::uint32_t(i % spec_.p), std::uint32_t(i / spec_.p)};
}

std::vector<Fq> Field::elements() const {
  std::vector<Fq> out;
  out.reserve(size());
  for (std::uint64_t i = 0; i < size(); ++i) out.push_back(element(i));
  return out;
}

bool Field::valid(Fq a) const {
  return a.c0 < spec_.p && a.c1 < spec_.p && (spec_.m == 2 || a.c1 == 0);
}

std::string Field::to_string(Fq a) const {
  if (spec_.m == 1 || a.c1 == 0) return std::to_string(a.c0);
  std::string s = a.c1 == 1 ? "t" : std::to_string(a.c1) + "t";
  if (a.c0 != 0) s += "+" + std::to_string(a.c0);
  return s;
}

}  // namespace isocx

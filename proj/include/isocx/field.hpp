#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace isocx {

bool is_prime(std::uint64_t n);

// sum of divisors of p^r, i.e. 1 + p + ... + p^r
std::uint64_t sigma_pr(std::uint64_t p, unsigned r);

/// Element of F_p or F_{p^2}, stored as c0 + c1*t with t the root of the modulus.
struct Fq {
  std::uint32_t c0 = 0;
  std::uint32_t c1 = 0;

  bool is_zero() const { return c0 == 0 && c1 == 0; }
  friend bool operator==(const Fq&, const Fq&) = default;
  friend auto operator<=>(const Fq&, const Fq&) = default;
};

struct FieldSpec {
  std::uint32_t p = 2;
  std::uint32_t m = 1;
  // modulus t^2 + mod1*t + mod0; ignored when m == 1
  std::uint32_t mod0 = 0;
  std::uint32_t mod1 = 0;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

class Field {
 public:
  Field() : Field(prime(2)) {}
  explicit Field(const FieldSpec& spec);

  static Field prime(std::uint32_t p);
  // F_{p^2} with the first irreducible t^2 + a t + b in (a, b) lexicographic order
  static Field quadratic(std::uint32_t p);

  const FieldSpec& spec() const { return spec_; }
  std::uint32_t characteristic() const { return spec_.p; }
  std::uint32_t degree() const { return spec_.m; }
  std::uint64_t size() const;

  Fq zero() const { return {}; }
  Fq one() const { return {1, 0}; }
  Fq from_int(std::int64_t v) const;
  // the generator t; only valid for m == 2
  Fq gen() const;

  Fq add(Fq a, Fq b) const;
  Fq sub(Fq a, Fq b) const;
  Fq neg(Fq a) const;
  Fq mul(Fq a, Fq b) const;
  Fq inv(Fq a) const;
  Fq pow(Fq a, std::uint64_t e) const;
  // a^(p^r)
  Fq frobenius(Fq a, unsigned r) const;

  std::uint64_t index(Fq a) const { return a.c0 + std::uint64_t(a.c1) * spec_.p; }
  Fq element(std::uint64_t i) const;
  std::vector<Fq> elements() const;

  bool valid(Fq a) const;
  std::string to_string(Fq a) const;

  friend bool operator==(const Field& a, const Field& b) { return a.spec_ == b.spec_; }

 private:
  FieldSpec spec_;
};

}  // namespace isocx

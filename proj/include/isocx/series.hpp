#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "isocx/field.hpp"

namespace isocx {

/// Element of k[[x]]/(x^T).
///
/// Coefficients are stored trimmed (no trailing zeros), so coeffs().size() may
/// be smaller than T; coeff(i) is zero for anything not stored.  A very large
/// T therefore behaves as exact polynomial arithmetic.
class TruncSeries {
 public:
  TruncSeries() = default;
  TruncSeries(const Field& field, std::size_t trunc);
  TruncSeries(const Field& field, std::size_t trunc, std::vector<Fq> coeffs);

  static TruncSeries constant(const Field& field, std::size_t trunc, Fq c);
  static TruncSeries monomial(const Field& field, std::size_t trunc, Fq c, std::size_t n);

  const Field& field() const { return field_; }
  std::size_t trunc() const { return trunc_; }
  const std::vector<Fq>& coeffs() const { return coeffs_; }
  Fq coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Fq{}; }

  bool is_zero() const { return coeffs_.empty(); }
  // -1 for zero
  long degree() const { return long(coeffs_.size()) - 1; }
  // index of the lowest nonzero coefficient; trunc() for zero
  std::size_t valuation() const;

  TruncSeries operator+(const TruncSeries& o) const;
  TruncSeries operator-(const TruncSeries& o) const;
  TruncSeries operator-() const;
  TruncSeries operator*(const TruncSeries& o) const;
  TruncSeries& operator+=(const TruncSeries& o);
  TruncSeries& operator-=(const TruncSeries& o);

  TruncSeries scaled(Fq c) const;
  // multiply by x^n
  TruncSeries shifted(std::size_t n) const;
  TruncSeries with_trunc(std::size_t trunc) const;
  Fq evaluate(Fq a) const;

  std::string to_string() const;

  friend bool operator==(const TruncSeries& a, const TruncSeries& b) {
    return a.trunc_ == b.trunc_ && a.coeffs_ == b.coeffs_ && a.field_ == b.field_;
  }

 private:
  void check_compatible(const TruncSeries& o) const;
  void normalize();

  Field field_;
  std::size_t trunc_ = 1;
  std::vector<Fq> coeffs_;
};

TruncSeries series_mul(const TruncSeries& a, const TruncSeries& b);
TruncSeries frobenius_twist(const TruncSeries& f, unsigned r);

}  // namespace isocx

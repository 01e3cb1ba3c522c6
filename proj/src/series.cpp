#include "isocx/series.hpp"

#include <algorithm>
#include <stdexcept>

namespace isocx {

TruncSeries::TruncSeries(const Field& field, std::size_t trunc) : field_(field), trunc_(trunc) {
  if (trunc == 0) throw std::invalid_argument("truncation order must be positive");
}

TruncSeries::TruncSeries(const Field& field, std::size_t trunc, std::vector<Fq> coeffs)
    : TruncSeries(field, trunc) {
  for (const Fq& c : coeffs)
    if (!field.valid(c)) throw std::invalid_argument("coefficient outside the field");
  coeffs_ = std::move(coeffs);
  normalize();
}

TruncSeries TruncSeries::constant(const Field& field, std::size_t trunc, Fq c) {
  return TruncSeries(field, trunc, {c});
}

TruncSeries TruncSeries::monomial(const Field& field, std::size_t trunc, Fq c, std::size_t n) {
  TruncSeries s(field, trunc);
  if (n < trunc && !c.is_zero()) {
    s.coeffs_.assign(n + 1, Fq{});
    s.coeffs_[n] = c;
  }
  return s;
}

void TruncSeries::normalize() {
  if (coeffs_.size() > trunc_) coeffs_.resize(trunc_);
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

void TruncSeries::check_compatible(const TruncSeries& o) const {
  if (trunc_ != o.trunc_) throw std::invalid_argument("mismatched truncation orders");
  if (!(field_ == o.field_)) throw std::invalid_argument("mismatched coefficient fields");
}

std::size_t TruncSeries::valuation() const {
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (!coeffs_[i].is_zero()) return i;
  return trunc_;
}

TruncSeries TruncSeries::operator+(const TruncSeries& o) const {
  TruncSeries r = *this;
  r += o;
  return r;
}

TruncSeries TruncSeries::operator-(const TruncSeries& o) const {
  TruncSeries r = *this;
  r -= o;
  return r;
}

TruncSeries TruncSeries::operator-() const {
  TruncSeries r = *this;
  for (Fq& c : r.coeffs_) c = field_.neg(c);
  return r;
}

TruncSeries& TruncSeries::operator+=(const TruncSeries& o) {
  check_compatible(o);
  if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] = field_.add(coeffs_[i], o.coeffs_[i]);
  normalize();
  return *this;
}

TruncSeries& TruncSeries::operator-=(const TruncSeries& o) {
  check_compatible(o);
  if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] = field_.sub(coeffs_[i], o.coeffs_[i]);
  normalize();
  return *this;
}

TruncSeries TruncSeries::operator*(const TruncSeries& o) const {
  check_compatible(o);
  TruncSeries r(field_, trunc_);
  if (is_zero() || o.is_zero()) return r;
  std::size_t n = std::min(trunc_, coeffs_.size() + o.coeffs_.size() - 1);
  r.coeffs_.assign(n, Fq{});
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.coeffs_.size() && i + j < n; ++j)
      r.coeffs_[i + j] = field_.add(r.coeffs_[i + j], field_.mul(coeffs_[i], o.coeffs_[j]));
  }
  r.normalize();
  return r;
}

TruncSeries TruncSeries::scaled(Fq c) const {
  TruncSeries r = *this;
  for (Fq& v : r.coeffs_) v = field_.mul(v, c);
  r.normalize();
  return r;
}

TruncSeries TruncSeries::shifted(std::size_t n) const {
  TruncSeries r(field_, trunc_);
  if (is_zero() || n >= trunc_) return r;
  r.coeffs_.assign(n, Fq{});
  r.coeffs_.insert(r.coeffs_.end(), coeffs_.begin(), coeffs_.end());
  r.normalize();
  return r;
}

TruncSeries TruncSeries::with_trunc(std::size_t trunc) const {
  return TruncSeries(field_, trunc, coeffs_);
}

Fq TruncSeries::evaluate(Fq a) const {
  Fq acc{};
  for (std::size_t i = coeffs_.size(); i-- > 0;) acc = field_.add(field_.mul(acc, a), coeffs_[i]);
  return acc;
}

std::string TruncSeries::to_string() const {
  if (is_zero()) return "0";
  std::string s;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    if (!s.empty()) s += " + ";
    std::string c = field_.to_string(coeffs_[i]);
    if (i == 0) {
      s += c;
      continue;
    }
    if (c != "1") s += (coeffs_[i].c1 && coeffs_[i].c0 ? "(" + c + ")" : c) + "*";
    s += i == 1 ? "x" : "x^" + std::to_string(i);
  }
  return s;
}

TruncSeries series_mul(const TruncSeries& a, const TruncSeries& b) { return a * b; }

TruncSeries frobenius_twist(const TruncSeries& f, unsigned r) {
  std::vector<Fq> c = f.coeffs();
  for (Fq& v : c) v = f.field().frobenius(v, r);
  return TruncSeries(f.field(), f.trunc(), std::move(c));
}

}  // namespace isocx

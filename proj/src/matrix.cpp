#include "isocx/matrix.hpp"

#include <omp.h>

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace isocx {

MatrixFq MatrixFq::identity(const Field& field, std::size_t n) {
  MatrixFq m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
  return m;
}

bool MatrixFq::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Fq& v) { return v.is_zero(); });
}

MatrixFq MatrixFq::transpose() const {
  MatrixFq t(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

MatrixFq MatrixFq::operator*(const MatrixFq& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix shape mismatch in product");
  MatrixFq out(field_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      Fq a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        Fq b = o(k, j);
        if (!b.is_zero()) out.add_to(i, j, field_.mul(a, b));
      }
    }
  return out;
}

namespace {

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  std::uint64_t r = 1, b = a, e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return std::uint32_t(r);
}

std::size_t rank_prime_parallel(const MatrixFq& m) {
  const std::uint32_t p = m.field().characteristic();
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::uint32_t> a(rows * cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a[i * cols + j] = m(i, j).c0;

  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t piv = rows;
    for (std::size_t i = rank; i < rows; ++i)
      if (a[i * cols + col]) {
        piv = i;
        break;
      }
    if (piv == rows) continue;
    if (piv != rank)
      std::swap_ranges(a.begin() + piv * cols, a.begin() + (piv + 1) * cols, a.begin() + rank * cols);
    std::uint32_t* prow = a.data() + rank * cols;
    const std::uint64_t inv = inv_mod(prow[col], p);
    for (std::size_t j = col; j < cols; ++j) prow[j] = std::uint32_t(prow[j] * inv % p);

    const long lo = long(rank + 1), hi = long(rows);
#pragma omp parallel for schedule(static) if (hi - lo > 32)
    for (long i = lo; i < hi; ++i) {
      std::uint32_t* row = a.data() + std::size_t(i) * cols;
      const std::uint64_t f = row[col];
      if (!f) continue;
      const std::uint64_t nf = p - f;
      for (std::size_t j = col; j < cols; ++j)
        if (prow[j]) row[j] = std::uint32_t((row[j] + nf * prow[j]) % p);
    }
    ++rank;
  }
  return rank;
}

std::size_t rank_generic_parallel(const MatrixFq& m) {
  const Field& f = m.field();
  const std::size_t rows = m.rows(), cols = m.cols();
  MatrixFq a = m;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t piv = rows;
    for (std::size_t i = rank; i < rows; ++i)
      if (!a(i, col).is_zero()) {
        piv = i;
        break;
      }
    if (piv == rows) continue;
    if (piv != rank)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a(piv, j), a(rank, j));
    const Fq inv = f.inv(a(rank, col));
    for (std::size_t j = col; j < cols; ++j) a(rank, j) = f.mul(a(rank, j), inv);
    const long lo = long(rank + 1), hi = long(rows);
#pragma omp parallel for schedule(static) if (hi - lo > 32)
    for (long i = lo; i < hi; ++i) {
      const Fq factor = a(std::size_t(i), col);
      if (factor.is_zero()) continue;
      for (std::size_t j = col; j < cols; ++j)
        a(std::size_t(i), j) = f.sub(a(std::size_t(i), j), f.mul(factor, a(rank, j)));
    }
    ++rank;
  }
  return rank;
}

}  // namespace

std::size_t rank_fq(const MatrixFq& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  return m.field().degree() == 1 ? rank_prime_parallel(m) : rank_generic_parallel(m);
}

std::size_t rank_fq_serial(const MatrixFq& m) {
  const Field& f = m.field();
  MatrixFq a = m;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < a.cols() && rank < a.rows(); ++col) {
    std::size_t piv = rank;
    while (piv < a.rows() && a(piv, col).is_zero()) ++piv;
    if (piv == a.rows()) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(piv, j), a(rank, j));
    const Fq inv = f.inv(a(rank, col));
    for (std::size_t i = rank + 1; i < a.rows(); ++i) {
      const Fq factor = f.mul(a(i, col), inv);
      if (factor.is_zero()) continue;
      for (std::size_t j = col; j < a.cols(); ++j) a(i, j) = f.sub(a(i, j), f.mul(factor, a(rank, j)));
    }
    ++rank;
  }
  return rank;
}

Fq determinant(const MatrixFq& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  const Field& f = m.field();
  MatrixFq a = m;
  Fq det = f.one();
  const std::size_t n = a.rows();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a(piv, col).is_zero()) ++piv;
    if (piv == n) return f.zero();
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(col, j));
      det = f.neg(det);
    }
    det = f.mul(det, a(col, col));
    const Fq inv = f.inv(a(col, col));
    for (std::size_t i = col + 1; i < n; ++i) {
      const Fq factor = f.mul(a(i, col), inv);
      if (factor.is_zero()) continue;
      for (std::size_t j = col; j < n; ++j) a(i, j) = f.sub(a(i, j), f.mul(factor, a(col, j)));
    }
  }
  return det;
}

std::vector<BigInt> smith_normal_form(const MatrixZ& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  MatrixZ a = m;
  auto swap_rows = [&](std::size_t i, std::size_t k) {
    if (i != k)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a(i, j), a(k, j));
  };
  auto swap_cols = [&](std::size_t j, std::size_t k) {
    if (j != k)
      for (std::size_t i = 0; i < rows; ++i) std::swap(a(i, j), a(i, k));
  };

  std::vector<BigInt> diag;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    // smallest nonzero entry of the trailing block becomes the pivot
    bool found = false;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (a(i, j) != 0 && (!found || abs(a(i, j)) < abs(a(bi, bj)))) {
          found = true;
          bi = i;
          bj = j;
        }
    if (!found) break;
    swap_rows(t, bi);
    swap_cols(t, bj);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a(i, t) == 0) continue;
        BigInt q = a(i, t) / a(t, t);
        for (std::size_t j = t; j < cols; ++j) a(i, j) -= q * a(t, j);
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a(t, j) == 0) continue;
        BigInt q = a(t, j) / a(t, t);
        for (std::size_t i = t; i < rows; ++i) a(i, j) -= q * a(i, t);
        if (a(t, j) != 0) clean = false;
      }
      if (clean) {
        // enforce d_t | every remaining entry
        std::size_t bad = rows;
        for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
          for (std::size_t j = t + 1; j < cols; ++j)
            if (a(i, j) % a(t, t) != 0) {
              bad = i;
              break;
            }
        if (bad == rows) break;
        for (std::size_t j = t; j < cols; ++j) a(t, j) += a(bad, j);
        continue;
      }
      // move the smallest nonzero entry of row t / column t into the pivot
      std::size_t pi = t, pj = t;
      for (std::size_t i = t; i < rows; ++i)
        if (a(i, t) != 0 && abs(a(i, t)) < abs(a(pi, pj))) {
          pi = i;
          pj = t;
        }
      for (std::size_t j = t; j < cols; ++j)
        if (a(t, j) != 0 && abs(a(t, j)) < abs(a(pi, pj))) {
          pi = t;
          pj = j;
        }
      swap_rows(t, pi);
      swap_cols(t, pj);
    }
    diag.push_back(abs(a(t, t)));
  }
  return diag;
}

MatrixFq reduce_mod(const MatrixZ& m, const Field& field) {
  MatrixFq out(field, m.rows(), m.cols());
  const BigInt p = field.characteristic();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      BigInt r = m(i, j) % p;
      if (r < 0) r += p;
      out(i, j) = field.from_int(r.convert_to<long long>());
    }
  return out;
}

}  // namespace isocx

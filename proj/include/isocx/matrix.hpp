#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <vector>

#include "isocx/field.hpp"

namespace isocx {

using BigInt = boost::multiprecision::cpp_int;

/// Dense row-major matrix over F_q.
class MatrixFq {
 public:
  MatrixFq() = default;
  MatrixFq(const Field& field, std::size_t rows, std::size_t cols)
      : field_(field), rows_(rows), cols_(cols), data_(rows * cols) {}

  static MatrixFq identity(const Field& field, std::size_t n);

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Fq& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Fq& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  void add_to(std::size_t i, std::size_t j, Fq v) { data_[i * cols_ + j] = field_.add(data_[i * cols_ + j], v); }

  bool is_zero() const;
  MatrixFq transpose() const;
  MatrixFq operator*(const MatrixFq& o) const;

  friend bool operator==(const MatrixFq& a, const MatrixFq& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  Field field_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Fq> data_;
};

// OpenMP row elimination; prime fields take a flat uint32 fast path.
std::size_t rank_fq(const MatrixFq& m);
// Plain Gaussian elimination through the Field interface; reference for rank_fq.
std::size_t rank_fq_serial(const MatrixFq& m);
// Determinant of a square matrix (serial).
Fq determinant(const MatrixFq& m);

/// Dense row-major integer matrix.
class MatrixZ {
 public:
  MatrixZ() = default;
  MatrixZ(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  BigInt& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<BigInt> data_;
};

// Nonzero invariant factors d_1 | d_2 | ... (all positive); the rank is their count.
std::vector<BigInt> smith_normal_form(const MatrixZ& m);

MatrixFq reduce_mod(const MatrixZ& m, const Field& field);

}  // namespace isocx

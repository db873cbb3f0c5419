#pragma once

// Small dense matrices over Z (int64, overflow-checked) and Q, plus the
// lattice normal forms the orbifold code relies on.

#include "holonomy/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace holonomy {

template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<T> row(std::size_t r) const {
    return std::vector<T>(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
  }
  std::vector<T> col(std::size_t c) const {
    std::vector<T> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<std::int64_t>;
using QMatrix = Matrix<Rational>;
using IntVector = std::vector<std::int64_t>;

// Checked int64 arithmetic; throws std::overflow_error.
std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
QMatrix operator*(const QMatrix& a, const QMatrix& b);
IntVector operator*(const IntMatrix& a, const IntVector& v);
RationalVector operator*(const IntMatrix& a, const RationalVector& v);
RationalVector operator*(const QMatrix& a, const RationalVector& v);

QMatrix to_rational(const IntMatrix& m);

std::string to_string(const IntMatrix& m);

// U * M * V == D with U, V unimodular and D diagonal (d_1 | d_2 | ... , all >= 0).
struct SmithForm {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;
};
SmithForm smith_normal_form(const IntMatrix& m);

// Row-style Hermite normal form of the lattice spanned by the rows of m.
// Zero rows are dropped, pivots are positive and entries above each pivot
// lie in [0, pivot). Unique for a given row lattice.
IntMatrix hermite_rows(const IntMatrix& m);

// Column basis of {x in Z^n : m x = 0}; saturated (a basis of ker(m) ∩ Z^n).
IntMatrix integer_kernel(const IntMatrix& m);

// Reduced row echelon form over Q; pivot columns are written to `pivots`.
QMatrix rref(const QMatrix& m, std::vector<std::size_t>* pivots = nullptr);
std::size_t rank(const QMatrix& m);
std::vector<RationalVector> nullspace(const QMatrix& m);
Rational determinant(const QMatrix& m);
// Throws std::domain_error when singular.
QMatrix inverse(const QMatrix& m);

}  // namespace holonomy

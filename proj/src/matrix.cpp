#include "holonomy/matrix.hpp"

#include <cstdlib>
#include <sstream>

namespace holonomy {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("int64 overflow in addition");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("int64 overflow in multiplication");
  return r;
}

namespace {

template <typename T, typename Mul, typename Add>
Matrix<T> multiply(const Matrix<T>& a, const Matrix<T>& b, Mul mul, Add add) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix shape mismatch");
  Matrix<T> out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == T(0)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) = add(out(i, j), mul(a(i, k), b(k, j)));
    }
  return out;
}

// row_dst += factor * row_src
void add_row_multiple(IntMatrix& m, std::size_t dst, std::size_t src, std::int64_t factor) {
  if (factor == 0) return;
  for (std::size_t c = 0; c < m.cols(); ++c)
    m(dst, c) = checked_add(m(dst, c), checked_mul(factor, m(src, c)));
}

void add_col_multiple(IntMatrix& m, std::size_t dst, std::size_t src, std::int64_t factor) {
  if (factor == 0) return;
  for (std::size_t r = 0; r < m.rows(); ++r)
    m(r, dst) = checked_add(m(r, dst), checked_mul(factor, m(r, src)));
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  return multiply(a, b, checked_mul, checked_add);
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  return multiply(
      a, b, [](const Rational& x, const Rational& y) { return Rational(x * y); },
      [](const Rational& x, const Rational& y) { return Rational(x + y); });
}

IntVector operator*(const IntMatrix& a, const IntVector& v) {
  if (a.cols() != v.size()) throw std::invalid_argument("matrix/vector shape mismatch");
  IntVector out(a.rows(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[i] = checked_add(out[i], checked_mul(a(i, j), v[j]));
  return out;
}

RationalVector operator*(const IntMatrix& a, const RationalVector& v) {
  if (a.cols() != v.size()) throw std::invalid_argument("matrix/vector shape mismatch");
  RationalVector out(a.rows(), Rational(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j) != 0) out[i] += Rational(a(i, j)) * v[j];
  return out;
}

RationalVector operator*(const QMatrix& a, const RationalVector& v) {
  if (a.cols() != v.size()) throw std::invalid_argument("matrix/vector shape mismatch");
  RationalVector out(a.rows(), Rational(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j) != 0) out[i] += a(i, j) * v[j];
  return out;
}

QMatrix to_rational(const IntMatrix& m) {
  QMatrix q(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) q(r, c) = Rational(m(r, c));
  return q;
}

std::string to_string(const IntMatrix& m) {
  std::ostringstream os;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? " " : "") << m(r, c);
    os << '\n';
  }
  return os.str();
}

SmithForm smith_normal_form(const IntMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  SmithForm s{IntMatrix::identity(rows), m, IntMatrix::identity(cols)};
  IntMatrix& D = s.D;
  const std::size_t steps = std::min(rows, cols);

  for (std::size_t t = 0; t < steps; ++t) {
    for (;;) {
      // Pivot: smallest nonzero magnitude in the trailing block.
      std::size_t pi = rows, pj = cols;
      std::int64_t best = 0;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (D(i, j) != 0 && (best == 0 || std::llabs(D(i, j)) < best)) {
            best = std::llabs(D(i, j));
            pi = i;
            pj = j;
          }
      if (best == 0) return s;  // trailing block is zero

      D.swap_rows(t, pi);
      s.U.swap_rows(t, pi);
      D.swap_cols(t, pj);
      s.V.swap_cols(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        std::int64_t q = floor_div(D(i, t), D(t, t));
        add_row_multiple(D, i, t, -q);
        add_row_multiple(s.U, i, t, -q);
        if (D(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        std::int64_t q = floor_div(D(t, j), D(t, t));
        add_col_multiple(D, j, t, -q);
        add_col_multiple(s.V, j, t, -q);
        if (D(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Divisibility: pull in any entry the pivot does not divide.
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (D(i, j) % D(t, t) != 0) {
            add_row_multiple(D, t, i, 1);
            add_row_multiple(s.U, t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (D(t, t) < 0) {
      for (std::size_t c = 0; c < cols; ++c) D(t, c) = -D(t, c);
      for (std::size_t c = 0; c < rows; ++c) s.U(t, c) = -s.U(t, c);
    }
  }
  return s;
}

IntMatrix hermite_rows(const IntMatrix& m) {
  IntMatrix h = m;
  const std::size_t rows = h.rows(), cols = h.cols();
  std::size_t pivot_row = 0;
  std::vector<std::size_t> pivot_cols;
  for (std::size_t c = 0; c < cols && pivot_row < rows; ++c) {
    // Euclid down the column until a single nonzero remains.
    for (;;) {
      std::size_t best = rows;
      for (std::size_t r = pivot_row; r < rows; ++r)
        if (h(r, c) != 0 && (best == rows || std::llabs(h(r, c)) < std::llabs(h(best, c)))) best = r;
      if (best == rows) break;
      h.swap_rows(pivot_row, best);
      bool done = true;
      for (std::size_t r = pivot_row + 1; r < rows; ++r) {
        if (h(r, c) == 0) continue;
        add_row_multiple(h, r, pivot_row, -floor_div(h(r, c), h(pivot_row, c)));
        if (h(r, c) != 0) done = false;
      }
      if (done) break;
    }
    if (h(pivot_row, c) == 0) continue;
    if (h(pivot_row, c) < 0)
      for (std::size_t k = 0; k < cols; ++k) h(pivot_row, k) = -h(pivot_row, k);
    for (std::size_t r = 0; r < pivot_row; ++r)
      add_row_multiple(h, r, pivot_row, -floor_div(h(r, c), h(pivot_row, c)));
    pivot_cols.push_back(c);
    ++pivot_row;
  }
  IntMatrix out(pivot_row, cols);
  for (std::size_t r = 0; r < pivot_row; ++r)
    for (std::size_t c = 0; c < cols; ++c) out(r, c) = h(r, c);
  return out;
}

IntMatrix integer_kernel(const IntMatrix& m) {
  SmithForm s = smith_normal_form(m);
  std::vector<std::size_t> free_cols;
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (j >= m.rows() || s.D(j, j) == 0) free_cols.push_back(j);
  IntMatrix k(m.cols(), free_cols.size());
  for (std::size_t idx = 0; idx < free_cols.size(); ++idx)
    for (std::size_t r = 0; r < m.cols(); ++r) k(r, idx) = s.V(r, free_cols[idx]);
  return k;
}

QMatrix rref(const QMatrix& m, std::vector<std::size_t>* pivots) {
  QMatrix a = m;
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(r, p);
    Rational inv = Rational(1) / a(r, c);
    for (std::size_t k = 0; k < a.cols(); ++k) a(r, k) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c) == 0) continue;
      Rational f = a(i, c);
      for (std::size_t k = 0; k < a.cols(); ++k) a(i, k) -= f * a(r, k);
    }
    piv.push_back(c);
    ++r;
  }
  if (pivots) *pivots = piv;
  return a;
}

std::size_t rank(const QMatrix& m) {
  std::vector<std::size_t> piv;
  rref(m, &piv);
  return piv.size();
}

std::vector<RationalVector> nullspace(const QMatrix& m) {
  std::vector<std::size_t> piv;
  QMatrix r = rref(m, &piv);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : piv) is_pivot[p] = true;
  std::vector<RationalVector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    RationalVector v(m.cols(), Rational(0));
    v[f] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -r(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

Rational determinant(const QMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("determinant of non-square matrix");
  QMatrix a = m;
  Rational det = 1;
  const std::size_t n = a.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      a.swap_rows(p, c);
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a(i, c) == 0) continue;
      Rational f = a(i, c) / a(c, c);
      for (std::size_t k = c; k < n; ++k) a(i, k) -= f * a(c, k);
    }
  }
  return det;
}

QMatrix inverse(const QMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("inverse of non-square matrix");
  const std::size_t n = m.rows();
  QMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  std::vector<std::size_t> piv;
  QMatrix r = rref(aug, &piv);
  if (piv.size() < n || piv[n - 1] != n - 1) throw std::domain_error("matrix is singular");
  QMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = r(i, n + j);
  return inv;
}

}  // namespace holonomy

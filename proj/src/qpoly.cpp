#include "holonomy/qpoly.hpp"

#include <sstream>
#include <stdexcept>

namespace holonomy {

QPoly::QPoly(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

QPoly QPoly::monomial(const Rational& c, std::size_t degree) {
  std::vector<Rational> v(degree + 1, Rational(0));
  v[degree] = c;
  return QPoly(std::move(v));
}

void QPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

QPoly operator+(const QPoly& a, const QPoly& b) {
  std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = a[k] + b[k];
  return QPoly(std::move(c));
}

QPoly operator-(const QPoly& a, const QPoly& b) {
  std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = a[k] - b[k];
  return QPoly(std::move(c));
}

QPoly operator*(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return QPoly(std::move(c));
}

void QPoly::divmod(const QPoly& divisor, QPoly& quotient, QPoly& remainder) const {
  if (divisor.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rational> rem = coeffs_;
  const int dd = divisor.degree();
  std::vector<Rational> quo(std::max(0, degree() - dd + 1), Rational(0));
  const Rational lead = divisor.coeffs_.back();
  for (int k = degree() - dd; k >= 0; --k) {
    Rational f = rem[k + dd] / lead;
    quo[k] = f;
    if (f == 0) continue;
    for (int j = 0; j <= dd; ++j) rem[k + j] -= f * divisor.coeffs_[j];
  }
  quotient = QPoly(std::move(quo));
  remainder = QPoly(std::move(rem));
}

std::string QPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const Rational& c = coeffs_[k];
    if (c == 0) continue;
    os << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    Rational a = c < 0 ? Rational(-c) : c;
    if (a != 1 || k == 0) os << holonomy::to_string(a);
    if (k >= 1) os << "x";
    if (k > 1) os << "^" << k;
    first = false;
  }
  return os.str();
}

QPoly characteristic_polynomial(const QMatrix& m) {
  // Faddeev-LeVerrier: M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k)/k.
  if (!m.is_square()) throw std::invalid_argument("characteristic polynomial of non-square matrix");
  const std::size_t n = m.rows();
  std::vector<Rational> c(n + 1, Rational(0));
  c[n] = 1;
  QMatrix mk(n, n);  // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    QMatrix next = m * mk;
    for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
    mk = std::move(next);
    QMatrix am = m * mk;
    Rational trace = 0;
    for (std::size_t i = 0; i < n; ++i) trace += am(i, i);
    c[n - k] = -trace / Rational(static_cast<long long>(k));
  }
  return QPoly(std::move(c));
}

QPoly cyclotomic_polynomial(unsigned m) {
  if (m == 0) throw std::invalid_argument("cyclotomic polynomial of order 0");
  // x^m - 1 divided by Phi_d for every proper divisor d.
  std::vector<Rational> v(m + 1, Rational(0));
  v[0] = -1;
  v[m] = 1;
  QPoly p(std::move(v));
  for (unsigned d = 1; d < m; ++d) {
    if (m % d != 0) continue;
    QPoly q, r;
    p.divmod(cyclotomic_polynomial(d), q, r);
    p = q;
  }
  return p;
}

std::map<unsigned, unsigned> cyclotomic_factors(const QPoly& p, unsigned max_order, QPoly* rest) {
  std::map<unsigned, unsigned> out;
  QPoly cur = p;
  for (unsigned m = 1; m <= max_order && cur.degree() > 0; ++m) {
    QPoly phi = cyclotomic_polynomial(m);
    for (;;) {
      QPoly q, r;
      cur.divmod(phi, q, r);
      if (!r.is_zero()) break;
      cur = q;
      ++out[m];
    }
  }
  if (rest) *rest = cur;
  return out;
}

}  // namespace holonomy

#pragma once

// Dense univariate polynomials over Q, used for characteristic polynomials
// and for splitting finite-order actions into cyclotomic factors.

#include "holonomy/matrix.hpp"
#include "holonomy/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace holonomy {

class QPoly {
 public:
  QPoly() = default;
  // coefficients[k] multiplies x^k
  explicit QPoly(std::vector<Rational> coefficients);

  static QPoly monomial(const Rational& c, std::size_t degree);

  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  Rational operator[](std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Rational(0); }

  friend QPoly operator+(const QPoly& a, const QPoly& b);
  friend QPoly operator-(const QPoly& a, const QPoly& b);
  friend QPoly operator*(const QPoly& a, const QPoly& b);
  friend bool operator==(const QPoly&, const QPoly&) = default;

  // Euclidean division; throws std::domain_error on division by zero.
  void divmod(const QPoly& divisor, QPoly& quotient, QPoly& remainder) const;

  std::string to_string() const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

// det(x I - m), monic.
QPoly characteristic_polynomial(const QMatrix& m);

// The m-th cyclotomic polynomial.
QPoly cyclotomic_polynomial(unsigned m);

// Writes p = prod Phi_m^{e_m} * rest, extracting cyclotomic factors with
// m <= max_order. Returns the multiplicities; `rest` receives the cofactor.
std::map<unsigned, unsigned> cyclotomic_factors(const QPoly& p, unsigned max_order, QPoly* rest = nullptr);

}  // namespace holonomy

#pragma once

// Exact arithmetic in Q(ζ) with ζ = exp(2πi/12), stored in the basis
// 1, ζ, ζ², ζ³ modulo Φ12(x) = x⁴ - x² + 1. Contains i = ζ³ and
// exp(πi/3) = ζ².

#include "holonomy/rational.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace holonomy {

class Cyclo12 {
 public:
  Cyclo12() = default;
  Cyclo12(const Rational& q) : c_{q, 0, 0, 0} {}  // NOLINT: implicit from Q
  Cyclo12(int q) : Cyclo12(Rational(q)) {}       // NOLINT
  explicit Cyclo12(std::array<Rational, 4> coefficients) : c_(std::move(coefficients)) {}

  static Cyclo12 zeta(int k = 1);  // ζ^k for any integer k
  static Cyclo12 i() { return zeta(3); }

  const std::array<Rational, 4>& coefficients() const { return c_; }
  bool is_zero() const;
  bool is_rational() const;
  Rational rational_part() const { return c_[0]; }

  Cyclo12 conj() const;
  // The automorphism ζ -> ζ^k, k coprime to 12.
  Cyclo12 galois(int k) const;
  // Field norm to Q; zero only for zero.
  Rational norm() const;
  // Throws std::domain_error for zero.
  Cyclo12 inverse() const;
  Cyclo12 pow(long k) const;

  // Exponent k in [0, 12) with *this = q ζ^k for a rational q, if one exists.
  std::optional<std::pair<Rational, int>> as_rational_times_root() const;

  Cyclo12& operator+=(const Cyclo12& o);
  Cyclo12& operator-=(const Cyclo12& o);
  Cyclo12& operator*=(const Cyclo12& o);
  Cyclo12& operator/=(const Cyclo12& o) { return *this *= o.inverse(); }
  friend Cyclo12 operator+(Cyclo12 a, const Cyclo12& b) { return a += b; }
  friend Cyclo12 operator-(Cyclo12 a, const Cyclo12& b) { return a -= b; }
  friend Cyclo12 operator*(Cyclo12 a, const Cyclo12& b) { return a *= b; }
  friend Cyclo12 operator/(Cyclo12 a, const Cyclo12& b) { return a /= b; }
  friend Cyclo12 operator-(const Cyclo12& a) { return Cyclo12(0) - a; }
  friend bool operator==(const Cyclo12&, const Cyclo12&) = default;
  friend bool operator<(const Cyclo12& a, const Cyclo12& b) { return a.c_ < b.c_; }

  // "a + bζ + cζ^2 + dζ^3" with zero terms dropped; "0" for zero.
  std::string to_string() const;

 private:
  std::array<Rational, 4> c_{};
};

// All ρ in the field with ρ^e = c, sorted. Throws UnsupportedModel (see
// errors.hpp) when c is not a rational multiple of a root of unity or the
// rational part has no rational e-th root.
std::vector<Cyclo12> roots_of(const Cyclo12& c, int e);

// Integer e-th root of a nonnegative rational, if exact.
std::optional<Rational> rational_root(const Rational& q, int e);

}  // namespace holonomy

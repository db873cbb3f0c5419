#include "holonomy/cyclotomic.hpp"

#include "holonomy/errors.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace holonomy {

namespace {

Integer integer_root(const Integer& n, int e) {
  if (n < 2) return n;
  Integer lo = 1, hi = n;
  while (lo < hi) {
    Integer mid = (lo + hi + 1) / 2;
    Integer p = 1;
    bool over = false;
    for (int k = 0; k < e && !over; ++k) {
      p *= mid;
      if (p > n) over = true;
    }
    if (over) hi = mid - 1;
    else lo = mid;
  }
  return lo;
}

}  // namespace

Cyclo12 Cyclo12::zeta(int k) {
  k = ((k % 12) + 12) % 12;
  const bool negate = k >= 6;
  if (negate) k -= 6;
  std::array<Rational, 4> c{0, 0, 0, 0};
  switch (k) {
    case 0: c = {1, 0, 0, 0}; break;
    case 1: c = {0, 1, 0, 0}; break;
    case 2: c = {0, 0, 1, 0}; break;
    case 3: c = {0, 0, 0, 1}; break;
    case 4: c = {-1, 0, 1, 0}; break;  // ζ⁴ = ζ² - 1
    case 5: c = {0, -1, 0, 1}; break;  // ζ⁵ = ζ³ - ζ
  }
  Cyclo12 z(c);
  return negate ? -z : z;
}

bool Cyclo12::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& q) { return q == 0; });
}

bool Cyclo12::is_rational() const { return c_[1] == 0 && c_[2] == 0 && c_[3] == 0; }

Cyclo12& Cyclo12::operator+=(const Cyclo12& o) {
  for (int k = 0; k < 4; ++k) c_[k] += o.c_[k];
  return *this;
}

Cyclo12& Cyclo12::operator-=(const Cyclo12& o) {
  for (int k = 0; k < 4; ++k) c_[k] -= o.c_[k];
  return *this;
}

Cyclo12& Cyclo12::operator*=(const Cyclo12& o) {
  std::array<Rational, 7> d{};
  for (int a = 0; a < 4; ++a) {
    if (c_[a] == 0) continue;
    for (int b = 0; b < 4; ++b) d[a + b] += c_[a] * o.c_[b];
  }
  for (int k = 6; k >= 4; --k) {
    d[k - 2] += d[k];
    d[k - 4] -= d[k];
  }
  for (int k = 0; k < 4; ++k) c_[k] = d[k];
  return *this;
}

Cyclo12 Cyclo12::galois(int k) const {
  if (std::gcd(((k % 12) + 12) % 12, 12) != 1) throw std::invalid_argument("Galois exponent must be coprime to 12");
  Cyclo12 out;
  for (int j = 0; j < 4; ++j)
    if (c_[j] != 0) out += Cyclo12(c_[j]) * zeta(j * k);
  return out;
}

Cyclo12 Cyclo12::conj() const { return galois(11); }

Rational Cyclo12::norm() const {
  Cyclo12 p = *this * galois(5) * galois(7) * galois(11);
  return p.c_[0];
}

Cyclo12 Cyclo12::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero in Q(zeta12)");
  Cyclo12 rest = galois(5) * galois(7) * galois(11);
  Rational n = (*this * rest).c_[0];
  return rest * Cyclo12(Rational(1) / n);
}

Cyclo12 Cyclo12::pow(long k) const {
  if (k < 0) return inverse().pow(-k);
  Cyclo12 result(1), base = *this;
  while (k) {
    if (k & 1) result *= base;
    base *= base;
    k >>= 1;
  }
  return result;
}

std::optional<std::pair<Rational, int>> Cyclo12::as_rational_times_root() const {
  for (int k = 0; k < 12; ++k) {
    Cyclo12 x = *this * zeta(-k);
    if (x.is_rational()) return std::make_pair(x.c_[0], k);
  }
  return std::nullopt;
}

std::string Cyclo12::to_string() const {
  if (is_zero()) return "0";
  static const char* basis[4] = {"", "z", "z^2", "z^3"};
  std::ostringstream os;
  bool first = true;
  for (int k = 0; k < 4; ++k) {
    const Rational& q = c_[k];
    if (q == 0) continue;
    const bool neg = q < 0;
    os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
    Rational a = neg ? Rational(-q) : q;
    if (k == 0) os << holonomy::to_string(a);
    else {
      if (a != 1) os << holonomy::to_string(a) << "*";
      os << basis[k];
    }
    first = false;
  }
  return os.str();
}

std::optional<Rational> rational_root(const Rational& q, int e) {
  if (q < 0 || e < 1) return std::nullopt;
  Integer n = numerator(q), d = denominator(q);
  Integer rn = integer_root(n, e), rd = integer_root(d, e);
  Integer pn = 1, pd = 1;
  for (int k = 0; k < e; ++k) {
    pn *= rn;
    pd *= rd;
  }
  if (pn != n || pd != d) return std::nullopt;
  return Rational(rn, rd);
}

std::vector<Cyclo12> roots_of(const Cyclo12& c, int e) {
  if (e < 1) throw std::invalid_argument("root degree must be positive");
  if (c.is_zero()) return {Cyclo12(0)};
  auto polar = c.as_rational_times_root();
  if (!polar) throw UnsupportedModel("cannot extract roots of " + c.to_string() + ": not a rational multiple of a root of unity");
  const Rational q = polar->first;
  auto r = rational_root(q < 0 ? Rational(-q) : q, e);
  if (!r) throw UnsupportedModel("rational part of " + c.to_string() + " has no exact root of degree " + std::to_string(e));
  std::vector<Cyclo12> out;
  for (int s = 0; s < 12; ++s) {
    Cyclo12 rho = Cyclo12(*r) * Cyclo12::zeta(s);
    if (rho.pow(e) == c) out.push_back(rho);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace holonomy

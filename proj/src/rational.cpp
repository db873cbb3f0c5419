#include "holonomy/rational.hpp"

#include <stdexcept>

namespace holonomy {

Integer floor(const Rational& q) {
  Integer n = numerator(q);
  Integer d = denominator(q);
  Integer f = n / d;  // truncates toward zero
  if (n < 0 && f * d != n) f -= 1;
  return f;
}

Rational mod1(const Rational& q) { return q - Rational(floor(q)); }

std::string to_string(const Rational& q) {
  if (is_integer(q)) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

Rational parse_rational(std::string_view text) {
  auto bad = [&] { return std::invalid_argument("malformed rational '" + std::string(text) + "'"); };
  if (text.empty()) throw bad();
  std::string s(text);
  bool negative = false;
  std::size_t pos = 0;
  if (s[0] == '+' || s[0] == '-') {
    negative = s[0] == '-';
    pos = 1;
  }
  auto digits = [&](std::size_t from, std::size_t to) {
    if (from >= to) throw bad();
    for (std::size_t i = from; i < to; ++i)
      if (s[i] < '0' || s[i] > '9') throw bad();
    return Integer(s.substr(from, to - from));
  };
  std::size_t slash = s.find('/', pos);
  Integer num = digits(pos, slash == std::string::npos ? s.size() : slash);
  Integer den = slash == std::string::npos ? Integer(1) : digits(slash + 1, s.size());
  if (den == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  Rational q(num, den);
  return negative ? Rational(-q) : q;
}

Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  Integer g = boost::multiprecision::gcd(a, b);
  Integer r = a / g * b;
  return r < 0 ? Integer(-r) : r;
}

Integer common_denominator(const RationalVector& v) {
  Integer l = 1;
  for (const auto& q : v) l = lcm(l, denominator(q));
  return l;
}

}  // namespace holonomy

#pragma once

// Exact rational scalars shared by every module.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace holonomy {

using Integer = boost::multiprecision::cpp_int;
// Always stored reduced with a positive denominator.
using Rational = boost::multiprecision::cpp_rational;

using RationalVector = std::vector<Rational>;

inline Integer numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

inline bool is_integer(const Rational& q) { return denominator(q) == 1; }

// Largest integer <= q.
Integer floor(const Rational& q);

// Representative of q in [0, 1).
Rational mod1(const Rational& q);

// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);

// Accepts "p", "-p", "p/q", "+p/q". Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

Integer lcm(const Integer& a, const Integer& b);

// Least common multiple of all denominators (1 for an empty vector).
Integer common_denominator(const RationalVector& v);

}  // namespace holonomy

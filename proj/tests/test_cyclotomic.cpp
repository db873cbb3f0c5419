#include "holonomy/cyclotomic.hpp"
#include "holonomy/errors.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

using namespace holonomy;

namespace {

using C = std::complex<double>;

// Numerical embedding ζ -> exp(2πi/12).
C embed(const Cyclo12& x) {
  const C z = std::polar(1.0, 2 * M_PI / 12);
  C out = 0, p = 1;
  for (const auto& c : x.coefficients()) {
    out += c.convert_to<double>() * p;
    p *= z;
  }
  return out;
}

Cyclo12 random_element(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
  return Cyclo12({Rational(num(rng), den(rng)), Rational(num(rng), den(rng)), Rational(num(rng), den(rng)),
                  Rational(num(rng), den(rng))});
}

bool close(C a, C b) { return std::abs(a - b) < 1e-9 * (1 + std::abs(a)); }

}  // namespace

TEST(Cyclo12, RootOfUnity) {
  EXPECT_EQ(Cyclo12::zeta(12), Cyclo12(1));
  EXPECT_EQ(Cyclo12::zeta(6), Cyclo12(-1));
  EXPECT_EQ(Cyclo12::i() * Cyclo12::i(), Cyclo12(-1));
  EXPECT_EQ(Cyclo12::zeta(-1), Cyclo12::zeta(11));
  const Cyclo12 z = Cyclo12::zeta(1);
  EXPECT_TRUE((z.pow(4) - z.pow(2) + 1).is_zero());
  for (int k = 0; k < 12; ++k) EXPECT_TRUE(close(embed(Cyclo12::zeta(k)), std::polar(1.0, 2 * M_PI * k / 12)));
}

TEST(Cyclo12, FieldLawsAgainstTheComplexEmbedding) {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 1000; ++trial) {
    const Cyclo12 a = random_element(rng), b = random_element(rng), c = random_element(rng);
    ASSERT_TRUE(close(embed(a * b), embed(a) * embed(b)));
    ASSERT_TRUE(close(embed(a + b), embed(a) + embed(b)));
    ASSERT_TRUE(close(embed(a.conj()), std::conj(embed(a))));
    ASSERT_EQ((a * b) * c, a * (b * c));
    ASSERT_EQ(a * (b + c), a * b + a * c);
    ASSERT_EQ(a.conj(), a.galois(11));
    ASSERT_EQ(a.conj().conj(), a);
    ASSERT_EQ((a * b).norm(), a.norm() * b.norm());
    if (!a.is_zero()) {
      ASSERT_EQ(a * a.inverse(), Cyclo12(1));
      ASSERT_NE(a.norm(), 0);
    }
  }
}

TEST(Cyclo12, PowAndPolarForm) {
  const Cyclo12 x = Cyclo12(Rational(3, 2)) * Cyclo12::zeta(5);
  const auto polar = x.as_rational_times_root();
  ASSERT_TRUE(polar.has_value());
  EXPECT_EQ(polar->first, Rational(3, 2));
  EXPECT_EQ(polar->second, 5);
  EXPECT_FALSE((Cyclo12(1) + Cyclo12::i()).as_rational_times_root().has_value());
  EXPECT_EQ(x.pow(-2) * x.pow(2), Cyclo12(1));
  EXPECT_EQ(Cyclo12(2).pow(0), Cyclo12(1));
  EXPECT_THROW(Cyclo12().inverse(), std::domain_error);
  EXPECT_THROW(x.galois(2), std::invalid_argument);
}

TEST(Cyclo12, Roots) {
  // -1 has exactly three cube roots here: -1 and exp(±πi/3).
  const auto r = roots_of(Cyclo12(-1), 3);
  ASSERT_EQ(r.size(), 3u);
  for (const auto& x : r) EXPECT_EQ(x.pow(3), Cyclo12(-1));
  EXPECT_NE(std::find(r.begin(), r.end(), Cyclo12::zeta(2)), r.end());
  EXPECT_NE(std::find(r.begin(), r.end(), Cyclo12::zeta(-2)), r.end());
  EXPECT_EQ(roots_of(Cyclo12(16), 4).size(), 4u);
  EXPECT_EQ(roots_of(Cyclo12(Rational(1, 4)), 2).size(), 2u);
  // 1 has 12 twelfth roots, all in the field.
  EXPECT_EQ(roots_of(Cyclo12(1), 12).size(), 12u);
  // Fifth roots of unity other than 1 are missing.
  EXPECT_EQ(roots_of(Cyclo12(1), 5).size(), 1u);
  EXPECT_THROW(roots_of(Cyclo12(2), 2), UnsupportedModel);
  EXPECT_THROW(roots_of(Cyclo12(1) + Cyclo12::i(), 2), UnsupportedModel);
  EXPECT_EQ(rational_root(Rational(27, 8), 3), Rational(3, 2));
  EXPECT_FALSE(rational_root(Rational(2), 2).has_value());
}

TEST(Cyclo12, Text) {
  EXPECT_EQ(Cyclo12().to_string(), "0");
  EXPECT_EQ(Cyclo12(Rational(-1, 2)).to_string(), "-1/2");
}

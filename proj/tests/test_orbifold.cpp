#include "holonomy/orbifold.hpp"

#include "fixtures.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <map>
#include <numeric>
#include <random>

using namespace holonomy;
using namespace holonomy::orbifold;

namespace {

using oracles::GridComponents;
using oracles::grid_oracle;

void expect_matches_grid(const AffineIsometry& g, long N, const std::string& name) {
  const FixedLocus fl = fixed_locus(g);
  const GridComponents grid = grid_oracle(g, N);
  ASSERT_EQ(static_cast<int>(fl.components.size()), grid.count) << name;
  // Each fixed grid point lies on exactly one component, and points of one
  // grid class lie on the same component.
  std::map<int, std::size_t> class_to_component;
  for (std::size_t a = 0; a < grid.fixed.size(); ++a) {
    RationalVector p;
    for (long v : grid.fixed[a]) p.emplace_back(v, N);
    int hits = 0;
    std::size_t which = 0;
    for (std::size_t c = 0; c < fl.components.size(); ++c)
      if (fl.components[c].contains(p)) {
        ++hits;
        which = c;
      }
    ASSERT_EQ(hits, 1) << name;
    auto [it, fresh] = class_to_component.emplace(grid.label[a], which);
    if (!fresh) ASSERT_EQ(it->second, which) << name;
  }
  for (const auto& c : fl.components) ASSERT_EQ(static_cast<int>(c.dim()), fl.component_dim) << name;
}

IntMatrix random_signed_permutation(std::mt19937& rng, std::size_t n) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, perm[i]) = (rng() % 2) ? 1 : -1;
  return m;
}

}  // namespace

TEST(AffineIsometry, ValidatesAndReduces) {
  const AffineIsometry g(fixtures::diag({-1, 1}), {Rational(3, 2), Rational(-1, 4)});
  EXPECT_EQ(g.translation(), (RationalVector{Rational(1, 2), Rational(3, 4)}));
  EXPECT_THROW(AffineIsometry(IntMatrix{{1, 1}, {0, 1}}, {0, 0}), ValidationError);
  EXPECT_THROW(AffineIsometry(IntMatrix{{2, 0}, {0, 1}}, {0, 0}), ValidationError);
  EXPECT_THROW(AffineIsometry(IntMatrix(2, 3), {0, 0}), ValidationError);
  EXPECT_THROW(AffineIsometry(fixtures::diag({1, 1}), {0}), DimensionMismatch);
}

TEST(AffineIsometry, ComposeAndInverse) {
  const AffineIsometry a = fixtures::beta(), b = fixtures::gamma();
  EXPECT_TRUE(compose(a, inverse(a)).is_identity());
  const RationalVector x{Rational(1, 3), Rational(1, 5), 0, Rational(2, 7), Rational(1, 9), 0, Rational(1, 11)};
  const RationalVector lhs = compose(a, b).apply(x);
  const RationalVector rhs = a.apply(b.apply(x));
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_TRUE(is_integer(lhs[i] - rhs[i]));
  EXPECT_EQ(element_order(a), 2u);
  EXPECT_EQ(element_order(AffineIsometry(fixtures::diag({1}), {Rational(1, 5)})), 5u);
}

TEST(Group, ExampleGroupIsZ2Cubed) {
  const FiniteIsomGroup g = fixtures::example_group();
  EXPECT_EQ(g.order(), 8u);
  EXPECT_TRUE(g.is_abelian());
  EXPECT_TRUE(g.elements[0].is_identity());
  EXPECT_EQ(g.names[0], "1");
  for (const auto& e : g.elements) EXPECT_TRUE(compose(e, e).is_identity());
  for (std::size_t i = 0; i < g.order(); ++i)
    for (std::size_t j = 0; j < g.order(); ++j)
      EXPECT_EQ(g.elements[g.multiply(i, j)], compose(g.elements[i], g.elements[j]));
  for (const auto& e : g.elements) EXPECT_TRUE(preserves(e, forms::canonical(forms::Structure::g2_phi)));
}

TEST(Group, ClosureLimit) {
  const AffineIsometry shift(fixtures::diag({1}), {Rational(1, 2000)});
  EXPECT_THROW(generate_group(1, {shift}, 1024), ClosureExceeded);
  EXPECT_EQ(generate_group(1, {shift}, 4096).order(), 2000u);
  EXPECT_THROW(generate_group(2, {shift}), DimensionMismatch);
}

TEST(Group, TrivialGroup) {
  const FiniteIsomGroup g = generate_group(3, {});
  EXPECT_EQ(g.order(), 1u);
  const SingularSet s = singular_set(g, forms::KForm::volume(3));
  EXPECT_TRUE(s.components.empty());
  EXPECT_EQ(s.total_components, 0u);
}

TEST(Group, SubgroupsOfZ2Cubed) {
  const FiniteIsomGroup g = fixtures::example_group();
  const auto subs = subgroups(g);
  // 1 trivial, 7 of order 2, 7 of order 4, the whole group.
  std::map<std::size_t, int> by_order;
  for (const auto& s : subs) by_order[s.size()]++;
  EXPECT_EQ(subs.size(), 16u);
  EXPECT_EQ(by_order[1], 1);
  EXPECT_EQ(by_order[2], 7);
  EXPECT_EQ(by_order[4], 7);
  EXPECT_EQ(by_order[8], 1);
  for (const auto& s : subs) EXPECT_EQ(restrict_to(g, s).order(), s.size());
  EXPECT_THROW(restrict_to(g, {0, 1, 2}), std::invalid_argument);
}

TEST(Group, StructureNotPreserved) {
  const AffineIsometry flip(fixtures::diag({-1, 1, 1, 1, 1, 1, 1}), RationalVector(7, 0));
  const FiniteIsomGroup g = generate_group(7, {flip}, 1024, {"flip"});
  EXPECT_FALSE(preserves(flip, forms::canonical(forms::Structure::g2_phi)));
  try {
    singular_set(g, forms::canonical(forms::Structure::g2_phi));
    FAIL();
  } catch (const StructureNotPreserved& e) {
    EXPECT_EQ(e.element, "flip");
  }
}

TEST(Subtorus, CanonicalForm) {
  // The line through (1/2, 0) in direction (1, 1), written two ways.
  const Subtorus a({Rational(1, 2), 0}, IntMatrix{{1, 1}});
  const Subtorus b({Rational(3, 4), Rational(1, 4)}, IntMatrix{{-2, -2}, {1, 1}});
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.dim(), 1u);
  EXPECT_TRUE(a.contains({Rational(0), Rational(1, 2)}));
  EXPECT_FALSE(a.contains({Rational(0), Rational(0)}));
  const Subtorus c({0, 0}, IntMatrix{{1, 1}});
  EXPECT_NE(a, c);
  EXPECT_FALSE(intersects(a, c));
  const Subtorus d({0, 0}, IntMatrix{{1, -1}});
  EXPECT_TRUE(intersects(a, d));
  const Subtorus pt({Rational(1, 3), Rational(2, 3)}, IntMatrix(0, 2));
  EXPECT_EQ(pt.dim(), 0u);
  EXPECT_TRUE(intersects(pt, d));
}

TEST(Subtorus, ImageUnderIsometry) {
  const AffineIsometry g(IntMatrix{{0, 1}, {1, 0}}, {Rational(1, 2), 0});
  const Subtorus s({0, Rational(1, 4)}, IntMatrix{{1, 0}});
  const Subtorus t = image(g, s);
  EXPECT_EQ(t, Subtorus({Rational(3, 4), 0}, IntMatrix{{0, 1}}));
}

TEST(FixedLocus, exampleGenerators) {
  const FiniteIsomGroup g = fixtures::example_group();
  for (std::size_t i = 1; i < g.order(); ++i) {
    const FixedLocus fl = fixed_locus(g.elements[i]);
    const bool generator = g.names[i] == "alpha" || g.names[i] == "beta" || g.names[i] == "gamma";
    if (generator) {
      EXPECT_EQ(fl.components.size(), 16u) << g.names[i];
      EXPECT_EQ(fl.component_dim, 3) << g.names[i];
    } else {
      EXPECT_TRUE(fl.empty()) << g.names[i];
      EXPECT_EQ(fl.component_dim, -1);
    }
  }
  const FixedLocus id = fixed_locus(g.elements[0]);
  EXPECT_EQ(id.components.size(), 1u);
  EXPECT_EQ(id.component_dim, 7);
}

TEST(FixedLocus, GridOracleOnExampleGroup) {
  const FiniteIsomGroup g = fixtures::example_group();
  for (std::size_t i = 0; i < g.order(); ++i) expect_matches_grid(g.elements[i], 4, g.names[i]);
}

TEST(FixedLocus, GridOracleOnRandomMaps) {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 2 + rng() % 3;
    const long q = (rng() % 2) ? 2 : 4;
    RationalVector b;
    for (std::size_t i = 0; i < n; ++i) b.emplace_back(static_cast<long>(rng() % q), q);
    const AffineIsometry g(random_signed_permutation(rng, n), b);
    expect_matches_grid(g, 2 * q, "trial " + std::to_string(trial));
  }
}

TEST(SingularSet, TwelveOrbitsOfT3) {
  const FiniteIsomGroup g = fixtures::example_group();
  const SingularSet s = singular_set(g, forms::canonical(forms::Structure::g2_phi));
  EXPECT_EQ(s.components.size(), 12u);
  EXPECT_EQ(s.total_components, 48u);
  EXPECT_TRUE(s.intersections.empty());
  std::map<std::string, int> per_source;
  for (const auto& c : s.components) {
    EXPECT_EQ(c.dim, 3u);
    EXPECT_EQ(c.orbit_size, 4u);
    EXPECT_EQ(c.orbit.size(), 4u);
    EXPECT_EQ(c.stabilizer.size(), 2u);
    EXPECT_EQ(c.isotropy, c.stabilizer);
    ASSERT_EQ(c.sources.size(), 1u);
    per_source[g.names[c.sources[0]]]++;
    // Each orbit member is the image of the representative.
    for (const auto& e : g.elements)
      EXPECT_TRUE(std::binary_search(c.orbit.begin(), c.orbit.end(), image(e, c.representative)));
  }
  EXPECT_EQ(per_source["alpha"], 4);
  EXPECT_EQ(per_source["beta"], 4);
  EXPECT_EQ(per_source["gamma"], 4);
}

TEST(SingularSet, WithoutTranslationsComponentsMeet) {
  // Dropping the half-translations makes the fixed tori of the generators meet.
  const AffineIsometry a(fixtures::alpha().linear(), RationalVector(7, 0));
  const AffineIsometry b(fixtures::beta().linear(), RationalVector(7, 0));
  const FiniteIsomGroup g = generate_group(7, {a, b});
  const SingularSet s = singular_set(g, forms::canonical(forms::Structure::g2_phi));
  EXPECT_FALSE(s.intersections.empty());
}

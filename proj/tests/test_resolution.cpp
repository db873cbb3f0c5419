#include "holonomy/resolution.hpp"
#include "holonomy/spin7.hpp"

#include "fixtures.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

using namespace holonomy;
using namespace holonomy::orbifold;
using namespace holonomy::resolution;

namespace {

using oracles::betti_by_projector;
using oracles::betti_by_stacked_nullity;

std::vector<std::pair<SingularComponent, ResolutionData>> resolve_all(const FiniteIsomGroup& g,
                                                                      const SingularSet& s) {
  std::vector<std::pair<SingularComponent, ResolutionData>> out;
  for (const auto& c : s.components) out.emplace_back(c, resolution_data(classify_local_model(g, c)));
  return out;
}

}  // namespace

TEST(OrbifoldBetti, TorusExample) {
  const FiniteIsomGroup g = fixtures::example_group();
  const BettiVector b = orbifold_betti(g);
  EXPECT_EQ(b.b, (std::vector<std::int64_t>{1, 0, 0, 7, 7, 0, 0, 1}));
  EXPECT_EQ(b.b, betti_by_projector(g));
  EXPECT_EQ(b.b, betti_by_stacked_nullity(g));
}

TEST(OrbifoldBetti, PoincareSymmetryOnAllSubgroups) {
  const FiniteIsomGroup g = fixtures::example_group();
  for (const auto& idx : subgroups(g)) {
    const FiniteIsomGroup h = restrict_to(g, idx);
    const BettiVector b = orbifold_betti(h);
    ASSERT_EQ(b.b.size(), 8u);
    for (std::size_t k = 0; k < 8; ++k) ASSERT_EQ(b.b[k], b.b[7 - k]);
    ASSERT_EQ(b.b[0], 1);
    ASSERT_EQ(b.b, betti_by_stacked_nullity(h));
  }
  // The trivial subgroup recovers the torus.
  EXPECT_EQ(orbifold_betti(restrict_to(g, {0})).b, (std::vector<std::int64_t>{1, 7, 21, 35, 35, 21, 7, 1}));
}

TEST(OrbifoldBetti, Spin7GroupOnT8) {
  const FiniteIsomGroup g = spin7::build_group_G().group;
  const BettiVector b = orbifold_betti(g);
  EXPECT_EQ(b.b, betti_by_projector(g));
  EXPECT_EQ(b.b, betti_by_stacked_nullity(g));
  for (std::size_t k = 0; k <= 8; ++k) EXPECT_EQ(b.b[k], b.b[8 - k]);
}

TEST(LocalModel, exampleComponentsAreC2ModPlusMinusOne) {
  const FiniteIsomGroup g = fixtures::example_group();
  const SingularSet s = singular_set(g, forms::canonical(forms::Structure::g2_phi));
  for (const auto& c : s.components) {
    const LocalModel m = classify_local_model(g, c);
    EXPECT_EQ(m.kind, ModelKind::C2_quotient);
    EXPECT_EQ(m.normal_dim, 4);
    EXPECT_EQ(m.group_order, 2u);
    EXPECT_EQ(m.subgroup, "Z2");
    EXPECT_EQ(m.label(), "C^2/Z2");
    EXPECT_EQ(m.angles, (std::vector<Rational>{Rational(1, 2), Rational(1, 2)}));
    const ResolutionData d = resolution_data(m);
    EXPECT_EQ(d.b2_exceptional, 1);
    EXPECT_EQ(d.b3_exceptional, 0);
    EXPECT_FALSE(d.citation.empty());
  }
}

TEST(ResolvedBetti, TorusExampleGives12And43) {
  const FiniteIsomGroup g = fixtures::example_group();
  const SingularSet s = singular_set(g, forms::canonical(forms::Structure::g2_phi));
  const ResolvedBetti r = resolved_betti(orbifold_betti(g), resolve_all(g, s));
  EXPECT_EQ(r.b2, 12);
  EXPECT_EQ(r.b3, 43);
  // 0 + 12 * 1 and 7 + 12 * (3 * 1 + 0)
}

TEST(ResolvedBetti, AppearsAmongReferencePairs) {
  const std::string fig = fixtures::asset("g2_betti_pairs.txt");
  EXPECT_NE(fig.find("\n12 43\n"), std::string::npos);
}

TEST(LocalModel, NonIsolatedC3QuotientIsUnsupported) {
  // Z4 on R^7: x1 fixed, quarter turns on (x2,x3) and (x4,x5), -1 on (x6,x7).
  // The square fixes (x6,x7), so Z4 is not free on C^3 minus the origin.
  IntMatrix a(7, 7);
  a(0, 0) = 1;
  a(1, 2) = -1;
  a(2, 1) = 1;
  a(3, 4) = -1;
  a(4, 3) = 1;
  a(5, 5) = -1;
  a(6, 6) = -1;
  const FiniteIsomGroup g = generate_group(7, {AffineIsometry::linear_only(a)});
  ASSERT_EQ(g.order(), 4u);
  const SingularSet s = singular_set(g, forms::KForm::volume(7));
  bool saw_line = false, saw_c2 = false;
  for (const auto& c : s.components) {
    const LocalModel m = classify_local_model(g, c);
    if (c.dim == 1) {
      EXPECT_EQ(m.kind, ModelKind::unsupported);
      EXPECT_EQ(m.normal_dim, 6);
      EXPECT_NE(m.reason.find("fixes normal directions"), std::string::npos) << m.reason;
      EXPECT_THROW(resolution_data(m), UnsupportedModel);
      saw_line = true;
    } else {
      EXPECT_EQ(c.dim, 3u);
      EXPECT_EQ(m.kind, ModelKind::C2_quotient) << m.reason;
      saw_c2 = true;
    }
  }
  EXPECT_TRUE(saw_line);
  EXPECT_TRUE(saw_c2);
}

TEST(LocalModel, IsolatedPointsInDimensionEightAreUnsupported) {
  const FiniteIsomGroup g = generate_group(8, {AffineIsometry::linear_only(spin7::alpha_matrix())});
  const SingularSet s = singular_set(g, forms::canonical(forms::Structure::spin7_omega));
  ASSERT_FALSE(s.components.empty());
  const LocalModel m = classify_local_model(g, s.components.front());
  EXPECT_EQ(m.kind, ModelKind::unsupported);
  EXPECT_FALSE(m.reason.empty());
  EXPECT_THROW(resolution_data(m), UnsupportedModel);
}

TEST(LocalModel, TwoDimensionalNormalSpaceIsUnsupported) {
  // Quarter turns of (x2, x3) on T^3: every singular circle has a real 2-dimensional normal space.
  const FiniteIsomGroup g =
      generate_group(3, {AffineIsometry::linear_only(fixtures::diag({1, -1, -1})),
                         AffineIsometry::linear_only(IntMatrix{{1, 0, 0}, {0, 0, -1}, {0, 1, 0}})});
  const SingularSet s = singular_set(g, forms::KForm::volume(3));
  ASSERT_FALSE(s.components.empty());
  for (const auto& c : s.components) {
    const LocalModel m = classify_local_model(g, c);
    EXPECT_EQ(m.kind, ModelKind::unsupported) << c.representative.to_string();
  }
}

TEST(ResolvedBetti, NonFreeMonodromy) {
  // A half-shift along the fixed circles of diag(1,-1,-1) maps each circle to itself without fixing it.
  const AffineIsometry flip = AffineIsometry::linear_only(fixtures::diag({1, -1, -1}));
  const AffineIsometry shift(fixtures::diag({1, 1, 1}), {Rational(1, 2), 0, 0});
  const FiniteIsomGroup g = generate_group(3, {flip, shift});
  const SingularSet s = singular_set(g, forms::KForm::volume(3));
  ASSERT_FALSE(s.components.empty());
  std::vector<std::pair<SingularComponent, ResolutionData>> comps;
  for (const auto& c : s.components) comps.emplace_back(c, ResolutionData{1, 0, "test"});
  EXPECT_THROW(resolved_betti(orbifold_betti(g), comps), NonFreeMonodromy);
}

TEST(AdeTable, ShippedFileMatchesBuiltIn) {
  const AdeTable t = parse_ade_table(fixtures::asset("ade_table"));
  const AdeTable& d = default_ade_table();
  ASSERT_EQ(t.a_series.size(), d.a_series.size());
  for (const auto& [k, e] : d.a_series) {
    EXPECT_EQ(t.a_series.at(k).b2, e.b2);
    EXPECT_EQ(t.a_series.at(k).b3, e.b3);
    EXPECT_EQ(t.a_series.at(k).b2, k);
    EXPECT_EQ(t.a_series.at(k).citation, e.citation);
  }
}

TEST(AdeTable, ParseErrors) {
  EXPECT_THROW(parse_ade_table("D 4 4 0 cite\n"), ParseError);
  EXPECT_THROW(parse_ade_table("A 1 1\n"), ParseError);
  EXPECT_THROW(parse_ade_table("A 1 1 0\n"), ParseError);
  EXPECT_THROW(parse_ade_table("A 1 1 0 x\nA 1 1 0 y\n"), ParseError);
  try {
    parse_ade_table("# comment\nA 1 1 0 ok\nA -2 1 0 bad\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line, 3);
  }
}

TEST(ResolutionData, MissingTableEntry) {
  LocalModel m;
  m.kind = ModelKind::C2_quotient;
  m.group_order = 3;
  m.subgroup = "Z3";
  EXPECT_EQ(resolution_data(m).b2_exceptional, 2);
  const AdeTable only_a1 = parse_ade_table("A 1 1 0 Eguchi-Hanson\n");
  EXPECT_THROW(resolution_data(m, only_a1), UnsupportedModel);
}

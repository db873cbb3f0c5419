#include "holonomy/specfile.hpp"
#include "holonomy/wps.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

using namespace holonomy;
using namespace holonomy::wps;

namespace {

Monomial mono(std::vector<int> e, Cyclo12 c = 1) { return {std::move(e), std::move(c)}; }

WpsHypersurface fermat(bool with_z4_cubed = true, Cyclo12 first = 1) {
  std::vector<Monomial> t = {mono({12, 0, 0, 0, 0, 0}, first), mono({0, 12, 0, 0, 0, 0}), mono({0, 0, 12, 0, 0, 0}),
                             mono({0, 0, 0, 12, 0, 0}), mono({0, 0, 0, 0, 0, 3})};
  if (with_z4_cubed) t.push_back(mono({0, 0, 0, 0, 3, 0}));
  return WpsHypersurface({1, 1, 1, 1, 4, 4}, 12, t);
}

AntiholInvolution sigma(std::vector<int> sign) { return {{1, 0, 3, 2, 5, 4}, std::move(sign)}; }

WpsPoint pt(std::vector<Cyclo12> c) { return {std::move(c)}; }

// [0,0,0,0,1,-1], [0,0,0,0,1,e^{πi/3}], [0,0,0,0,1,e^{-πi/3}]
std::vector<WpsPoint> listed() {
  return {pt({0, 0, 0, 0, 1, -1}), pt({0, 0, 0, 0, 1, Cyclo12::zeta(2)}), pt({0, 0, 0, 0, 1, Cyclo12::zeta(-2)})};
}

}  // namespace

TEST(Hypersurface, Validation) {
  EXPECT_THROW(WpsHypersurface({1, 1, 1, 1, 4, 4}, 12, {mono({11, 0, 0, 0, 0, 0})}), ValidationError);
  EXPECT_THROW(WpsHypersurface({2, 4}, 4, {mono({2, 0})}), ValidationError);
  EXPECT_THROW(WpsHypersurface({1, 0}, 4, {}), ValidationError);
  EXPECT_THROW(WpsHypersurface({1, 1}, 2, {mono({2, 0, 0})}), DimensionMismatch);
  const WpsHypersurface merged({1, 1}, 2, {mono({2, 0}), mono({2, 0}, 3)});
  ASSERT_EQ(merged.terms().size(), 1u);
  EXPECT_EQ(merged.terms()[0].coefficient, Cyclo12(4));
  EXPECT_TRUE(fermat().is_fermat());
  EXPECT_FALSE(WpsHypersurface({1, 1}, 2, {mono({1, 1})}).is_fermat());
}

TEST(Hypersurface, CanonicalDegree) {
  EXPECT_TRUE(canonical_degree_check(fermat()));
  EXPECT_FALSE(canonical_degree_check(WpsHypersurface({1, 1, 1}, 4, {mono({4, 0, 0})})));
}

TEST(Points, SamePointUnderTheWeightedAction) {
  const std::vector<int> w = {1, 1, 1, 1, 4, 4};
  const WpsPoint p = listed()[0];
  // u = ζ scales the weight-4 coordinates by ζ^4.
  EXPECT_TRUE(same_point(w, p, pt({0, 0, 0, 0, Cyclo12::zeta(4), -Cyclo12::zeta(4)})));
  EXPECT_TRUE(same_point(w, p, pt({0, 0, 0, 0, 2, -2})));
  EXPECT_FALSE(same_point(w, p, listed()[1]));
  EXPECT_TRUE(same_point({1, 1}, pt({1, 1}), pt({Cyclo12::i(), Cyclo12::i()})));
  EXPECT_FALSE(same_point({1, 1}, pt({1, 1}), pt({1, -1})));
  // (1, 1) and (1, -1) in CP^1_{1,2} agree via u = i.
  EXPECT_TRUE(same_point({1, 2}, pt({1, 1}), pt({Cyclo12::i(), -1})));
  EXPECT_THROW(same_point({1, 1}, pt({0, 0}), pt({1, 0})), std::invalid_argument);
}

TEST(Points, WeightedUnitWitness) {
  EXPECT_TRUE(is_weighted_unit({1, 4}, {Cyclo12::i(), 1}));
  std::vector<std::int64_t> witness;
  EXPECT_FALSE(is_weighted_unit({1, 4}, {1, -1}, &witness));
  ASSERT_EQ(witness.size(), 2u);
  EXPECT_EQ(witness[0] + 4 * witness[1], 0);
  const Cyclo12 prod = Cyclo12(1).pow(witness[0]) * Cyclo12(-1).pow(witness[1]);
  EXPECT_NE(prod, Cyclo12(1));
}

TEST(SingularPoints, ThreePointsOfOrderFour) {
  const WpsHypersurface y = fermat();
  const auto sing = singular_points(y);
  ASSERT_EQ(sing.size(), 3u);
  for (const auto& s : sing) {
    EXPECT_EQ(s.order, 4);
    EXPECT_TRUE(y.evaluate(s.point.coords).is_zero());
    const auto grad = y.gradient(s.point.coords);
    EXPECT_TRUE(std::any_of(grad.begin(), grad.end(), [](const Cyclo12& g) { return !g.is_zero(); }));
  }
  // By hand: z0..z3 = 0 and (z5/z4)^3 = -1.
  for (const auto& p : listed()) {
    EXPECT_EQ(p.coords[5].pow(3), Cyclo12(-1));
    EXPECT_TRUE(std::any_of(sing.begin(), sing.end(),
                            [&](const SingularPoint& s) { return same_point(y.weights(), s.point, p); }));
  }
}

TEST(SingularPoints, DroppingZ4CubedDegenerates) {
  EXPECT_THROW(singular_points(fermat(false)), DegenerateSingularPoint);
}

TEST(SingularPoints, WholeStratumInY) {
  // No pure power of z4 or z5: Y contains the stratum z0 = .. = z3 = 0.
  const WpsHypersurface y({1, 1, 1, 1, 4, 4}, 12,
                          {mono({12, 0, 0, 0, 0, 0}), mono({0, 12, 0, 0, 0, 0}), mono({0, 0, 12, 0, 0, 0}),
                           mono({0, 0, 0, 12, 0, 0}), mono({4, 0, 0, 0, 2, 0}), mono({0, 4, 0, 0, 0, 2})});
  EXPECT_THROW(singular_points(y), PositiveDimensionalSingularLocus);
}

TEST(SingularPoints, SmoothWhenWeightsAreOne) {
  EXPECT_TRUE(singular_points(WpsHypersurface({1, 1, 1}, 3, {mono({3, 0, 0}), mono({0, 3, 0}), mono({0, 0, 3})})).empty());
}

TEST(Involution, ExampleSigma) {
  const WpsHypersurface y = fermat();
  const InvolutionReport r = verify_involution(y, sigma({1, -1, 1, -1, 1, 1}), listed());
  EXPECT_TRUE(r.listed_all_fixed());
  EXPECT_EQ(r.listed_fixed.size(), 3u);
  // σ²(z) = (-z0, -z1, -z2, -z3, z4, z5), i.e. u = -1.
  EXPECT_EQ(r.multipliers, (std::vector<Cyclo12>{-1, -1, -1, -1, 1, 1}));
  ASSERT_TRUE(r.unit.has_value());
  EXPECT_EQ(*r.unit, Cyclo12(-1));
  EXPECT_GT(r.samples_tested, 0u);
  EXPECT_EQ(r.samples_fixed, 0u);
  EXPECT_TRUE(r.isolated_fixed_points());
}

TEST(Involution, FlippedSignIsNotInvolutive) {
  const WpsHypersurface y = fermat();
  try {
    verify_involution(y, sigma({1, 1, 1, -1, 1, 1}), listed());
    FAIL();
  } catch (const NotInvolutive& e) {
    ASSERT_EQ(e.witness.size(), 6u);
    std::int64_t degree = 0;
    for (std::size_t j = 0; j < 6; ++j) degree += e.witness[j] * y.weights()[j];
    EXPECT_EQ(degree, 0);
  }
}

TEST(Involution, NotWellDefined) {
  EXPECT_THROW(verify_involution(fermat(true, 2), sigma({1, -1, 1, -1, 1, 1}), listed()), NotWellDefined);
}

TEST(Involution, MustRespectWeights) {
  const AntiholInvolution bad{{4, 1, 2, 3, 0, 5}, {1, 1, 1, 1, 1, 1}};
  EXPECT_THROW(verify_involution(fermat(), bad, {}), ValidationError);
  const AntiholInvolution not_perm{{0, 0, 2, 3, 4, 5}, {1, 1, 1, 1, 1, 1}};
  EXPECT_THROW(verify_involution(fermat(), not_perm, {}), ValidationError);
}

TEST(Involution, ApplyAndText) {
  const AntiholInvolution s = sigma({1, -1, 1, -1, 1, 1});
  EXPECT_EQ(s.to_string(), "+c1 -c0 +c3 -c2 +c5 +c4");
  const WpsPoint p = pt({Cyclo12::i(), 2, 0, 0, 0, 0});
  EXPECT_EQ(s.apply(p).coords, (std::vector<Cyclo12>{2, Cyclo12::i(), 0, 0, 0, 0}));
}

TEST(Sampling, PointsLieOnY) {
  const WpsHypersurface y = fermat();
  const auto pts = sample_points(y, 50, 123);
  EXPECT_EQ(pts.size(), 50u);
  for (const auto& p : pts) {
    EXPECT_TRUE(y.evaluate(p.coords).is_zero());
    int g = 0;
    for (std::size_t j = 0; j < 6; ++j)
      if (!p.coords[j].is_zero()) g = std::gcd(g, y.weights()[j]);
    EXPECT_EQ(g, 1) << p.to_string();
  }
  EXPECT_EQ(sample_points(y, 10, 5), sample_points(y, 10, 5));
  EXPECT_THROW(sample_points(WpsHypersurface({1, 1}, 2, {mono({1, 1})}), 3, 1), UnsupportedModel);
}

TEST(SpecFile, BundledExample) {
  const specfile::WpsSpec s = specfile::parse_wps_spec(fixtures::asset("wps_degree12.ywp"));
  EXPECT_EQ(s.hypersurface.weights(), (std::vector<int>{1, 1, 1, 1, 4, 4}));
  EXPECT_EQ(s.hypersurface.degree(), 12);
  EXPECT_EQ(s.hypersurface.terms().size(), 6u);
  ASSERT_TRUE(s.sigma.has_value());
  EXPECT_EQ(s.sigma->to_string(), "+c1 -c0 +c3 -c2 +c5 +c4");
  EXPECT_EQ(s.points, listed());
}

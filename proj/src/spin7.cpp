#include "holonomy/spin7.hpp"

#include <algorithm>

namespace holonomy::spin7 {

namespace {

IntMatrix signed_permutation(const std::vector<std::pair<int, int>>& rows) {
  IntMatrix m(rows.size(), rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) m(r, rows[r].first) = rows[r].second;
  return m;
}

}  // namespace

IntMatrix alpha_matrix() {
  return signed_permutation({{1, -1}, {0, 1}, {3, -1}, {2, 1}, {5, -1}, {4, 1}, {7, -1}, {6, 1}});
}

IntMatrix beta_matrix() {
  return signed_permutation({{2, 1}, {3, -1}, {0, -1}, {1, 1}, {6, 1}, {7, -1}, {4, -1}, {5, 1}});
}

bool GroupReport::all_hold() const {
  return order_eight && nonabelian && alpha_order_four && beta_order_four && squares_agree && twisted_commutation &&
         free_action && !preserves_omega.empty() &&
         std::all_of(preserves_omega.begin(), preserves_omega.end(), [](bool b) { return b; });
}

GroupReport build_group_G() {
  using orbifold::AffineIsometry;
  const AffineIsometry a = AffineIsometry::linear_only(alpha_matrix());
  const AffineIsometry b = AffineIsometry::linear_only(beta_matrix());
  GroupReport r;
  r.group = orbifold::generate_group(8, {a, b}, 1024, {"alpha", "beta"});
  r.order_eight = r.group.order() == 8;
  r.nonabelian = !r.group.is_abelian();

  const AffineIsometry a2 = orbifold::compose(a, a);
  const AffineIsometry b2 = orbifold::compose(b, b);
  r.alpha_order_four = orbifold::compose(a2, a2).is_identity();
  r.beta_order_four = orbifold::compose(b2, b2).is_identity();
  r.squares_agree = a2 == b2;
  r.twisted_commutation = orbifold::compose(a, b) == orbifold::compose(b, orbifold::compose(a2, a));

  r.free_action = true;
  const forms::KForm omega = forms::canonical(forms::Structure::spin7_omega);
  for (const auto& g : r.group.elements) {
    r.preserves_omega.push_back(orbifold::preserves(g, omega));
    if (g.is_identity()) continue;
    QMatrix m = to_rational(g.linear());
    for (std::size_t i = 0; i < 8; ++i) m(i, i) -= 1;
    if (rank(m) != 8) r.free_action = false;
  }
  return r;
}

ComplexFrame z_frame() { return {"z_frame", QMatrix::identity(8)}; }

ComplexFrame w_frame() {
  return {"w_frame", to_rational(signed_permutation({{0, -1}, {2, 1}, {1, 1}, {3, 1}, {4, -1}, {6, 1}, {5, 1}, {7, 1}}))};
}

const char* action_name(FrameAction a) {
  switch (a) {
    case FrameAction::multiply_by_i: return "multiply_by_i";
    case FrameAction::quaternionic: return "quaternionic";
    case FrameAction::other: return "other";
  }
  return "?";
}

FrameReport frame_report(const ComplexFrame& f) {
  if (f.real_map.rows() != 8 || !f.real_map.is_square()) throw DimensionMismatch("a frame on R^8 needs an 8x8 map");
  FrameReport r;
  r.frame = f.name;
  r.orthogonal = forms::is_orthogonal(f.real_map);
  if (!r.orthogonal) throw ValidationError("frame " + f.name + " is not orthogonal");

  r.omega = forms::pullback(f.real_map, forms::canonical(forms::Structure::su_omega, 4));
  r.re_theta = forms::pullback(f.real_map, forms::canonical(forms::Structure::su_re_theta, 4));
  forms::KForm assembled = Rational(1, 2) * forms::wedge(r.omega, r.omega) + r.re_theta;
  forms::KForm discrepancy = assembled - forms::canonical(forms::Structure::spin7_omega);
  if (!discrepancy.is_zero()) throw FrameIdentityFails(f.name, std::move(discrepancy));

  const QMatrix J = to_rational(alpha_matrix());
  const QMatrix Q = to_rational(beta_matrix());
  auto classify = [&](const IntMatrix& g) {
    const QMatrix in_frame = f.real_map * to_rational(g) * f.real_map.transposed();
    if (in_frame == J) return FrameAction::multiply_by_i;
    if (in_frame == Q) return FrameAction::quaternionic;
    return FrameAction::other;
  };
  r.alpha = classify(alpha_matrix());
  r.beta = classify(beta_matrix());
  if (r.alpha == FrameAction::multiply_by_i) r.complex_structure = "alpha";
  else if (r.beta == FrameAction::multiply_by_i) r.complex_structure = "beta";
  return r;
}

const char* outcome_name(HolonomyOutcome h) {
  return h == HolonomyOutcome::Z2_ltimes_SU4 ? "Z2_ltimes_SU4" : "Spin7";
}

std::string outcome_rationale(HolonomyOutcome h) {
  if (h == HolonomyOutcome::Z2_ltimes_SU4)
    return "every orbifold point is resolved with the same ALE model, so the metric keeps the complex structure "
           "fixed by alpha and the holonomy is one copy of Z2 x| SU(4)";
  return "the resolutions use both ALE models, whose holonomy groups are two different Z2 x| SU(4) subgroups of "
         "Spin(7); together they generate all of Spin(7)";
}

HolonomyOutcome holonomy_outcome(const std::vector<int>& choices) {
  if (choices.empty()) throw std::invalid_argument("need at least one orbifold point");
  for (int c : choices)
    if (c != 1 && c != 2) throw std::invalid_argument("each choice must be 1 or 2");
  return std::all_of(choices.begin(), choices.end(), [](int c) { return c == 1; }) ? HolonomyOutcome::Z2_ltimes_SU4
                                                                                   : HolonomyOutcome::Spin7;
}

}  // namespace holonomy::spin7

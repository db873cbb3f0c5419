#pragma once

// The order-8 subgroup G = <α, β> of Spin(7) acting on R^8, the two complex
// frames in which one generator is multiplication by i, and the holonomy rule
// for the resolved Spin(7)-orbifold.

#include "holonomy/forms.hpp"
#include "holonomy/matrix.hpp"
#include "holonomy/orbifold.hpp"

#include <string>
#include <vector>

namespace holonomy::spin7 {

// α(x) = (-x2, x1, -x4, x3, -x6, x5, -x8, x7)
IntMatrix alpha_matrix();
// β(x) = (x3, -x4, -x1, x2, x7, -x8, -x5, x6)
IntMatrix beta_matrix();

struct GroupReport {
  orbifold::FiniteIsomGroup group;  // generators named "alpha", "beta"
  bool order_eight = false;
  bool nonabelian = false;
  bool alpha_order_four = false;     // α⁴ = 1
  bool beta_order_four = false;      // β⁴ = 1
  bool squares_agree = false;        // α² = β²
  bool twisted_commutation = false;  // αβ = βα³
  bool free_action = false;          // ker(A - I) = 0 for every A != 1
  std::vector<bool> preserves_omega; // per element

  bool all_hold() const;
};

GroupReport build_group_G();

// u = real_map * x gives (Re w1, Im w1, ..., Re w4, Im w4).
struct ComplexFrame {
  std::string name;
  QMatrix real_map;
};

// (z1, .., z4) = (x1 + i x2, x3 + i x4, x5 + i x6, x7 + i x8)
ComplexFrame z_frame();
// (w1, .., w4) = (-x1 + i x3, x2 + i x4, -x5 + i x7, x6 + i x8)
ComplexFrame w_frame();

enum class FrameAction {
  multiply_by_i,  // (w1..w4) -> (i w1, .., i w4)
  quaternionic,   // (w1..w4) -> (conj w2, -conj w1, conj w4, -conj w3)
  other,
};
const char* action_name(FrameAction a);

struct FrameIdentityFails : std::runtime_error {
  FrameIdentityFails(const std::string& frame, forms::KForm discrepancy)
      : std::runtime_error("Omega0 != omega^2/2 + Re theta in frame " + frame), discrepancy(std::move(discrepancy)) {}
  forms::KForm discrepancy;
};

struct FrameReport {
  std::string frame;
  bool orthogonal = false;  // the frame is isometric, so g0 = Σ |dw_j|^2
  forms::KForm omega{8, 2};
  forms::KForm re_theta{8, 4};
  FrameAction alpha = FrameAction::other;
  FrameAction beta = FrameAction::other;
  // "alpha" or "beta": the generator acting as i, or "" if neither does.
  std::string complex_structure;
};

// Throws FrameIdentityFails, or ValidationError for a non-orthogonal frame.
FrameReport frame_report(const ComplexFrame& f);

enum class HolonomyOutcome { Z2_ltimes_SU4, Spin7 };
const char* outcome_name(HolonomyOutcome h);
std::string outcome_rationale(HolonomyOutcome h);

// One choice i_j in {1, 2} per orbifold point. Throws std::invalid_argument
// for an empty list or other values.
HolonomyOutcome holonomy_outcome(const std::vector<int>& choices);

}  // namespace holonomy::spin7

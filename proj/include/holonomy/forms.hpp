#pragma once

// Exterior algebra of constant-coefficient forms on R^n with exact rational
// coefficients, the Euclidean Hodge star, linear pullback and the flat
// G2 / Spin(7) / SU(m) structure forms.
//
// Conventions: dx_I denotes dx_{i1} ∧ ... ∧ dx_{ik} for a strictly
// increasing 1-based index tuple I. The volume form is dx_1 ∧ ... ∧ dx_n and
// the star is fixed by a ∧ *b = <a, b> vol, where <,> makes the dx_I
// orthonormal.

#include "holonomy/errors.hpp"
#include "holonomy/matrix.hpp"
#include "holonomy/rational.hpp"

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace holonomy::forms {

// Strictly increasing, 1-based.
using IndexSet = std::vector<int>;

class KForm {
 public:
  KForm(int dim, int degree);

  // c * dx_{indices}; `indices` may be in any order (the permutation sign is
  // applied) and repeated indices give the zero form.
  static KForm term(int dim, IndexSet indices, const Rational& c = 1);
  static KForm volume(int dim);

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  const std::map<IndexSet, Rational>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(const IndexSet& indices) const;

  // Adds c * dx_{indices} with the same ordering rules as term().
  KForm& add(IndexSet indices, const Rational& c);

  KForm& operator+=(const KForm& other);
  KForm& operator-=(const KForm& other);
  KForm& operator*=(const Rational& c);
  friend KForm operator+(KForm a, const KForm& b) { return a += b; }
  friend KForm operator-(KForm a, const KForm& b) { return a -= b; }
  friend KForm operator*(const Rational& c, KForm a) { return a *= c; }
  friend KForm operator-(KForm a) { return a *= Rational(-1); }
  friend bool operator==(const KForm&, const KForm&) = default;

  // Sum of squared coefficients.
  Rational norm_squared() const;

 private:
  void require_compatible(const KForm& other) const;

  int dim_;
  int degree_;
  std::map<IndexSet, Rational> terms_;
};

// Linear map x -> A x on R^n. Orthogonality and integrality are predicates,
// not part of the type.
using LinearEndo = QMatrix;

bool is_orthogonal(const LinearEndo& a);
bool is_integral(const LinearEndo& a);

// All k-subsets of {1..n} in lexicographic order.
std::vector<IndexSet> index_sets(int n, int k);

// Sign of the permutation sorting the concatenation of two disjoint index sets.
int shuffle_sign(const IndexSet& a, const IndexSet& b);

KForm wedge(const KForm& a, const KForm& b);
KForm hodge_star(const KForm& a);
// f^* a, with f^* dx_i = sum_j A_ij dx_j.
KForm pullback(const LinearEndo& f, const KForm& a);
// Relabels dx_i as dx_{i + offset} inside R^{new_dim}.
KForm embed(const KForm& a, int new_dim, int offset);

enum class Structure { g2_phi, g2_star_phi, spin7_omega, su_omega, su_re_theta, su_im_theta };

// The flat structure forms. `m` is the complex dimension for the SU cases,
// with z_j = x_{2j-1} + i x_{2j}; it is ignored otherwise.
KForm canonical(Structure s, int m = 0);

// Flat-model identities relating the exceptional forms to SU(m) data.
enum class Identity {
  g2_from_su3,       // phi0 = dx1 ∧ omega + Re theta on R ⊕ C^3
  g2_dual_from_su3,  // *phi0 = 1/2 omega ∧ omega - dx1 ∧ Im theta
  g2_from_su2,       // phi0 = dx123 + dx1 ∧ omega + dx2 ∧ Re theta - dx3 ∧ Im theta
  g2_dual_from_su2,  // *phi0 = 1/2 omega^2 + dx23 ∧ omega - dx13 ∧ Re theta - dx12 ∧ Im theta
  spin7_from_su4,    // Omega0 = 1/2 omega ∧ omega + Re theta on C^4
};

struct IdentityCheck {
  bool holds;
  KForm assembled;
  KForm expected;
  KForm discrepancy;  // assembled - expected
};

IdentityCheck verify_identity(Identity id);
const char* identity_name(Identity id);
std::vector<Identity> all_identities();

// One term per line, "+p/q dx{i1 i2 ... ik}" ("/q" omitted when q == 1),
// sorted lexicographically by index tuple. The zero form is the empty string.
std::string to_text(const KForm& a);
KForm parse_form(std::string_view text, int dim, int degree);

}  // namespace holonomy::forms

#pragma once

// Finite groups of affine isometries of T^n = R^n / Z^n, their fixed loci
// and the orbit structure of the singular set of T^n / Γ.

#include "holonomy/errors.hpp"
#include "holonomy/forms.hpp"
#include "holonomy/matrix.hpp"
#include "holonomy/rational.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace holonomy::orbifold {

// x -> A x + b with A integer orthogonal and b reduced to [0, 1)^n.
class AffineIsometry {
 public:
  AffineIsometry() = default;
  // Throws ValidationError unless A is square, integral and orthogonal, and
  // DimensionMismatch when b has the wrong length.
  AffineIsometry(IntMatrix linear, RationalVector translation);

  static AffineIsometry identity(std::size_t n);
  static AffineIsometry linear_only(IntMatrix linear);

  std::size_t dim() const { return linear_.rows(); }
  const IntMatrix& linear() const { return linear_; }
  const RationalVector& translation() const { return translation_; }
  bool is_identity() const;

  RationalVector apply(const RationalVector& x) const;

  friend bool operator==(const AffineIsometry&, const AffineIsometry&) = default;
  friend bool operator<(const AffineIsometry& a, const AffineIsometry& b);

 private:
  IntMatrix linear_;
  RationalVector translation_;
};

// g ∘ h : x -> A_g (A_h x + b_h) + b_g
AffineIsometry compose(const AffineIsometry& g, const AffineIsometry& h);
AffineIsometry inverse(const AffineIsometry& g);
// Smallest k >= 1 with g^k = 1; throws std::runtime_error past `limit`.
std::size_t element_order(const AffineIsometry& g, std::size_t limit = 1024);

struct ClosureExceeded : std::runtime_error {
  explicit ClosureExceeded(std::size_t limit)
      : std::runtime_error("group closure exceeded " + std::to_string(limit) + " elements"), limit(limit) {}
  std::size_t limit;
};

struct FiniteIsomGroup {
  std::size_t dim = 0;
  // elements[0] is the identity; the rest follow breadth-first discovery order.
  std::vector<AffineIsometry> elements;
  // Word in the generator names, "1" for the identity, e.g. "alpha*beta".
  std::vector<std::string> names;

  std::size_t order() const { return elements.size(); }
  bool is_abelian() const;
  // Index of g, or nullopt.
  std::optional<std::size_t> index_of(const AffineIsometry& g) const;
  std::size_t multiply(std::size_t a, std::size_t b) const;
};

// Generator names default to g1, g2, ...
FiniteIsomGroup generate_group(std::size_t dim, const std::vector<AffineIsometry>& generators,
                               std::size_t max_order = 1024, std::vector<std::string> generator_names = {});

// All subgroups, each as a sorted list of element indices.
std::vector<std::vector<std::size_t>> subgroups(const FiniteIsomGroup& group);
// Restricts the group to a sorted index list that is closed under products.
FiniteIsomGroup restrict_to(const FiniteIsomGroup& group, const std::vector<std::size_t>& indices);

// Only the linear part acts on constant-coefficient forms.
bool preserves(const AffineIsometry& g, const forms::KForm& form);

// Affine subtorus x0 + span_R(directions) mod Z^n, kept in a canonical form:
// directions is the row Hermite form of the saturated direction lattice and
// offset is the lexicographically least representative in [0,1)^n with zero
// pivot coordinates. Two subtori are equal iff their canonical forms agree.
class Subtorus {
 public:
  Subtorus() = default;
  // `directions` holds one integer direction per row; any spanning set works.
  Subtorus(RationalVector offset, const IntMatrix& directions);

  std::size_t ambient_dim() const { return offset_.size(); }
  std::size_t dim() const { return directions_.rows(); }
  const RationalVector& offset() const { return offset_; }
  const IntMatrix& directions() const { return directions_; }

  bool contains(const RationalVector& point) const;
  std::string to_string() const;

  friend bool operator==(const Subtorus&, const Subtorus&) = default;
  friend bool operator<(const Subtorus& a, const Subtorus& b);

 private:
  RationalVector offset_;
  IntMatrix directions_;
};

Subtorus image(const AffineIsometry& g, const Subtorus& s);
bool intersects(const Subtorus& a, const Subtorus& b);

struct FixedLocus {
  AffineIsometry owner;
  // -1 when the locus is empty.
  int component_dim = -1;
  std::vector<Subtorus> components;

  bool empty() const { return components.empty(); }
};

// Solves (A - I) x = -b mod Z^n through the Smith form of A - I.
FixedLocus fixed_locus(const AffineIsometry& g);

struct SingularComponent {
  Subtorus representative;
  std::size_t dim = 0;
  // Every subtorus in the orbit of the representative, sorted.
  std::vector<Subtorus> orbit;
  std::size_t orbit_size = 0;
  // Element indices of h with h(C) = C.
  std::vector<std::size_t> stabilizer;
  // Element indices of h fixing C pointwise; a subgroup of the stabilizer.
  std::vector<std::size_t> isotropy;
  // Non-identity elements whose fixed locus contains the representative as a component.
  std::vector<std::size_t> sources;
};

struct ComponentIntersection {
  Subtorus first;
  Subtorus second;
};

struct SingularSet {
  std::vector<SingularComponent> components;  // one per orbit
  std::size_t total_components = 0;           // before taking orbits
  std::vector<ComponentIntersection> intersections;
};

struct StructureNotPreserved : std::runtime_error {
  StructureNotPreserved(const std::string& element)
      : std::runtime_error("element " + element + " does not preserve the structure form"), element(element) {}
  std::string element;
};

// Throws StructureNotPreserved if any element fails preserves(g, structure).
SingularSet singular_set(const FiniteIsomGroup& group, const forms::KForm& structure);

}  // namespace holonomy::orbifold

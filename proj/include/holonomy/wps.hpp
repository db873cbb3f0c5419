#pragma once

// Hypersurfaces in weighted projective space CP^m_{a0..am} with coefficients
// in Q(ζ12): singular points on the weighted strata, point equality under the
// weighted C* action, and antiholomorphic involutions.

#include "holonomy/cyclotomic.hpp"
#include "holonomy/errors.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace holonomy::wps {

struct Monomial {
  std::vector<int> exponents;
  Cyclo12 coefficient;
};

struct WpsPoint {
  std::vector<Cyclo12> coords;
  std::string to_string() const;
  friend bool operator==(const WpsPoint&, const WpsPoint&) = default;
  friend bool operator<(const WpsPoint& a, const WpsPoint& b) { return a.coords < b.coords; }
};

class WpsHypersurface {
 public:
  // Throws ValidationError unless the weights are positive with gcd 1 and every
  // monomial has weighted degree `degree`. Monomials with equal exponents are merged.
  WpsHypersurface(std::vector<int> weights, int degree, std::vector<Monomial> terms);

  const std::vector<int>& weights() const { return weights_; }
  int degree() const { return degree_; }
  const std::vector<Monomial>& terms() const { return terms_; }
  std::size_t coordinates() const { return weights_.size(); }

  Cyclo12 evaluate(const std::vector<Cyclo12>& z) const;
  std::vector<Cyclo12> gradient(const std::vector<Cyclo12>& z) const;
  // Each coordinate carries exactly one pure power c_j z_j^{e_j} and nothing else.
  bool is_fermat() const;

 private:
  std::vector<int> weights_;
  int degree_;
  std::vector<Monomial> terms_;
};

// Equal up to (z_j) -> (u^{a_j} z_j) for some u in C*. Throws
// std::invalid_argument for the zero vector.
bool same_point(const std::vector<int>& weights, const WpsPoint& a, const WpsPoint& b);

// Lattice test: is there u in C* with u^{a_j} = r_j for all j? The
// r_j must be nonzero. On failure `witness` (if given) receives an integer
// vector m with Σ a_j m_j = 0 and Π r_j^{m_j} != 1.
bool is_weighted_unit(const std::vector<int>& weights, const std::vector<Cyclo12>& r,
                      std::vector<std::int64_t>* witness = nullptr);

struct SingularPoint {
  WpsPoint point;
  int order;  // gcd of the weights on the support
};

struct PositiveDimensionalSingularLocus : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegenerateSingularPoint : std::runtime_error {
  DegenerateSingularPoint(const WpsPoint& p)
      : std::runtime_error("affine cone is singular over " + p.to_string()), point(p) {}
  WpsPoint point;
};

// Points of Y on the strata where the weight gcd exceeds 1, sorted. Each
// point's cone must be smooth (nonzero gradient).
std::vector<SingularPoint> singular_points(const WpsHypersurface& y);

// True iff degree == Σ a_j.
bool canonical_degree_check(const WpsHypersurface& y);

// z -> w with w_j = sign_j * conj(z_{source_j}).
struct AntiholInvolution {
  std::vector<int> source;
  std::vector<int> sign;  // +1 or -1

  WpsPoint apply(const WpsPoint& p) const;
  std::string to_string() const;  // "+c1 -c0 ..."
};

struct NotWellDefined : std::runtime_error {
  NotWellDefined(const std::string& what, std::vector<int> monomial)
      : std::runtime_error(what), monomial(std::move(monomial)) {}
  std::vector<int> monomial;
};

struct NotInvolutive : std::runtime_error {
  NotInvolutive(const std::string& what, std::vector<std::int64_t> witness)
      : std::runtime_error(what), witness(std::move(witness)) {}
  std::vector<std::int64_t> witness;
};

struct InvolutionReport {
  Cyclo12 scale;                      // f∘σ = conj(scale * f)
  std::vector<Cyclo12> multipliers;   // σ²(z)_j = μ_j z_j
  std::optional<Cyclo12> unit;        // a root of unity u with u^{a_j} = μ_j, if one exists in the field
  std::vector<bool> listed_fixed;     // per listed point
  std::size_t samples_tested = 0;
  std::size_t samples_fixed = 0;
  std::string sample_note;

  bool listed_all_fixed() const;
  bool isolated_fixed_points() const { return samples_tested > 0 && samples_fixed == 0; }
};

// Throws ValidationError when σ does not respect the weights, NotWellDefined
// when σ does not map Y to itself and NotInvolutive when σ² is not a weighted
// scalar.
InvolutionReport verify_involution(const WpsHypersurface& y, const AntiholInvolution& s,
                                   const std::vector<WpsPoint>& listed, std::size_t samples = 24,
                                   std::uint32_t seed = 20240601u);

// Exact points of a Fermat hypersurface off the singular weighted strata,
// built by pairing coordinates so that paired terms cancel. Coordinates with
// no partner whose root lies in Q(ζ12) are set to 0.
// Throws UnsupportedModel for non-Fermat Y.
std::vector<WpsPoint> sample_points(const WpsHypersurface& y, std::size_t count, std::uint32_t seed);

}  // namespace holonomy::wps

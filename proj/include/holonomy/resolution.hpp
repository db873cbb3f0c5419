#pragma once

// Local models of singular components, crepant-resolution data and Betti
// numbers of T^n / Γ and of its resolution.

#include "holonomy/errors.hpp"
#include "holonomy/orbifold.hpp"
#include "holonomy/rational.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace holonomy::resolution {

enum class ModelKind { C2_quotient, C3_quotient, unsupported };

const char* kind_name(ModelKind k);

struct LocalModel {
  ModelKind kind = ModelKind::unsupported;
  int normal_dim = 0;
  std::size_t group_order = 0;
  // "Z2", "Z3", ... for the cyclic groups recognized here; empty otherwise.
  std::string subgroup;
  // Rotation angles of a generator on the normal space, as fractions of a turn in (0, 1/2].
  std::vector<Rational> angles;
  // Why a model is unsupported.
  std::string reason;
  // Elements of age 1 and age 2 (C3 case only).
  int junior_elements = 0;
  int senior_elements = 0;

  std::string label() const;  // e.g. "C^2/Z2"
};

// Classifies the isotropy action of `c` on its normal space.
LocalModel classify_local_model(const orbifold::FiniteIsomGroup& group, const orbifold::SingularComponent& c);

struct ResolutionData {
  int b2_exceptional = 0;
  int b3_exceptional = 0;
  std::string citation;
};

// Exceptional Betti numbers of the minimal resolution of C^2/Z_{k+1}, keyed by
// the A_k index k.
struct AdeTable {
  struct Entry {
    int b2;
    int b3;
    std::string citation;
  };
  std::map<int, Entry> a_series;
};

// Lines "A k b2 b3 citation"; '#' starts a comment. Throws ParseError.
AdeTable parse_ade_table(std::string_view text);
// Built-in copy of the shipped table (A_1 through A_11).
const AdeTable& default_ade_table();

// Throws UnsupportedModel for unsupported kinds and for k missing from the table.
ResolutionData resolution_data(const LocalModel& m, const AdeTable& table = default_ade_table());

struct NonIntegralTrace : std::runtime_error {
  NonIntegralTrace(int degree, const Rational& value)
      : std::runtime_error("average trace on degree " + std::to_string(degree) + " forms is " + to_string(value)),
        degree(degree) {}
  int degree;
};

struct NonFreeMonodromy : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BettiVector {
  std::vector<std::int64_t> b;  // b^0 .. b^n
  friend bool operator==(const BettiVector&, const BettiVector&) = default;
};

// b^k(T^n/Γ) = (1/|Γ|) Σ_g tr(Λ^k A_g).
BettiVector orbifold_betti(const orbifold::FiniteIsomGroup& group);

struct ResolvedBetti {
  std::int64_t b2 = 0;
  std::int64_t b3 = 0;
  friend bool operator==(const ResolvedBetti&, const ResolvedBetti&) = default;
};

// One entry per orbit of singular components. Throws NonFreeMonodromy when a
// stabilizer does more than fix its component pointwise.
ResolvedBetti resolved_betti(const BettiVector& base,
                             const std::vector<std::pair<orbifold::SingularComponent, ResolutionData>>& components);

}  // namespace holonomy::resolution

#pragma once

// Exponent-level calculus for bounds of the form (constant) * t^e as t -> 0+
// with t <= 1. Constants are opaque positive symbols.

#include "holonomy/errors.hpp"
#include "holonomy/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace holonomy::estimates {

struct OrderTerm {
  // Symbol -> power; empty means the unit constant.
  std::map<std::string, int> constants;
  Rational exponent = 0;

  static OrderTerm symbol(const std::string& name, const Rational& exponent = 0);
  static OrderTerm power(const Rational& exponent);

  std::string constant_string() const;  // "C1*C4*K", or "1"
  std::string to_string() const;        // "C1*C4*K*t^(9/2)"

  friend bool operator==(const OrderTerm&, const OrderTerm&) = default;
  friend auto operator<=>(const OrderTerm&, const OrderTerm&) = default;
};

OrderTerm operator*(const OrderTerm& a, const OrderTerm& b);

// A sum of bounds. Terms with identical constant and exponent are merged.
struct OrderExpr {
  std::vector<OrderTerm> terms;

  OrderExpr& add(const OrderTerm& t);
  std::string to_string() const;
};

OrderExpr operator+(OrderExpr a, const OrderExpr& b);
OrderExpr operator*(const OrderExpr& a, const OrderTerm& b);

// "A1 * t^4", "t^(1/2)", "t^-4", "K", "1". Throws ParseError (line 0).
OrderTerm parse_order_term(std::string_view text);

enum class Verdict { always, for_small_t, never_by_exponent };
const char* verdict_name(Verdict v);

struct Dominance {
  Verdict verdict;
  // exponent(quantity) - exponent(bound)
  Rational margin;
};

// Whether quantity <= const * bound as t -> 0+.
Dominance dominates(const OrderTerm& quantity, const OrderTerm& bound);

enum class BoundKind { upper, lower };
// Names ending in "_lower" are lower bounds; everything else is an upper bound.
BoundKind bound_kind(const std::string& quantity);

// Named bounds: psi_L2, psi_C0, dpsi_L14, inj_radius_lower, curvature_upper.
struct EstimateProfile {
  std::map<std::string, OrderTerm> bounds;
};

struct HypothesisCheck {
  std::string quantity;
  BoundKind kind;
  OrderTerm established;
  OrderTerm required;
  Rational margin;
  bool passed;
};

struct HypothesesReport {
  // The five standard quantities first, in the order listed on EstimateProfile,
  // then any others by name.
  std::vector<HypothesisCheck> checks;
  std::size_t passed_count() const;
  bool all_pass() const { return passed_count() == checks.size(); }
};

struct HypothesisFails : std::runtime_error {
  HypothesisFails(const std::string& quantity, const Rational& margin)
      : std::runtime_error("hypothesis on " + quantity + " fails with margin " + holonomy::to_string(margin)),
        quantity(quantity),
        margin(margin) {}
  std::string quantity;
  Rational margin;
};

// Each required quantity must be present in `established`; throws ValidationError otherwise.
HypothesesReport check_hypotheses(const EstimateProfile& established, const EstimateProfile& required);
// Throws HypothesisFails for the first failing check.
void require_hypotheses(const HypothesesReport& report);

// Product of named factors and a power of t. A factor names a tracked norm,
// a given quantity or a constant symbol.
struct Product {
  std::vector<std::string> factors;
  Rational t_exponent = 0;
  std::string to_string() const;
  friend bool operator==(const Product&, const Product&) = default;
};

struct Rule {
  std::string target;
  std::vector<Product> products;  // empty means the zero bound
  friend bool operator==(const Rule&, const Rule&) = default;
};

struct InductionSystem {
  // Assumed bound on each tracked norm, e.g. L2 -> C4 * t^4.
  std::map<std::string, OrderTerm> assumed;
  std::vector<Rule> rules;
};

struct ConstantConstraint {
  std::string rule;
  OrderTerm term;      // the substituted term, margin 0
  std::string bound;   // constant it must not exceed
};

struct TermMargin {
  std::string rule;
  OrderTerm term;
  Rational margin;
};

struct ClosureReport {
  bool closes = false;             // exponents close and constants are solvable
  bool exponents_close = false;
  bool constants_solvable = false;
  std::vector<ConstantConstraint> constraints;
  std::vector<TermMargin> t_margins;  // strictly positive
  std::vector<TermMargin> failures;   // strictly negative
  std::optional<Rational> min_positive_margin;
  std::vector<std::string> solve_order;  // order in which the bound constants can be fixed
  std::string unsolvable_reason;
};

// Substitutes the assumed bounds and the given quantities into every rule and
// compares each term with the assumed bound on the rule's target.
ClosureReport check_induction_closure(const InductionSystem& system, const EstimateProfile& givens);

// A full estimates file: sections [profile], [hypotheses], [assume], [rules].
struct EstimateSpec {
  EstimateProfile profile;
  EstimateProfile hypotheses;
  InductionSystem system;
};

EstimateSpec parse_estimates(std::string_view text);
// The shipped defaults, embedded.
const std::string& default_estimates_text();
EstimateSpec default_estimates();

// Differences between a system and the shipped default system, one line each.
std::vector<std::string> reference_deviations(const InductionSystem& system);

}  // namespace holonomy::estimates

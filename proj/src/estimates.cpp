#include "holonomy/estimates.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace holonomy::estimates {

namespace {

const std::string kDefaults = R"(# Bounds established for the glued G2-structures, and the hypotheses of the
# perturbation theorem they have to imply.
[profile]
psi_L2 = A1 * t^4
psi_C0 = A1 * t^3
dpsi_L14 = A1 * t^(16/7)
inj_radius_lower = A2 * t
curvature_upper = A3 * t^-2

[hypotheses]
psi_L2 = A1 * t^4
psi_C0 = A1 * t^(1/2)
dpsi_L14 = A1
inj_radius_lower = A2 * t
curvature_upper = A3 * t^-2

# Inductive bounds on d eta_j: L2 norm, L14 norm of its derivative, C0 norm.
[assume]
L2 = C4 * t^4
N14 = C5
C0 = K * t^(1/2)

[rules]
rule L2 = psi_L2 + C1 * L2 * C0
rule N14 = C2 * dpsi_L14 + C2 * N14 * C0 + C2 * t^-4 * L2
rule C0 = C3 * t^(1/2) * N14 + C3 * t^(-7/2) * L2
)";

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

std::vector<std::string> split_top(std::string_view s, char sep) {
  std::vector<std::string> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (s[i] == sep && depth == 0) {
      parts.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  parts.push_back(trim(s.substr(start)));
  return parts;
}

// Parses a product into named factors and a power of t.
Product parse_product(std::string_view text, int line) {
  Product p;
  for (const auto& f : split_top(text, '*')) {
    if (f.empty()) throw ParseError("empty factor in '" + std::string(text) + "'", line, 1);
    if (f == "1") continue;
    if (f == "t") {
      p.t_exponent += 1;
      continue;
    }
    if (f.rfind("t^", 0) == 0) {
      std::string e = trim(f.substr(2));
      if (e.size() >= 2 && e.front() == '(' && e.back() == ')') e = trim(e.substr(1, e.size() - 2));
      try {
        p.t_exponent += parse_rational(e);
      } catch (const std::invalid_argument&) {
        throw ParseError("bad exponent '" + e + "'", line, 1);
      }
      continue;
    }
    if (!is_identifier(f)) throw ParseError("bad factor '" + f + "'", line, 1);
    p.factors.push_back(f);
  }
  return p;
}

OrderTerm product_to_term(const Product& p) {
  OrderTerm t = OrderTerm::power(p.t_exponent);
  for (const auto& f : p.factors) ++t.constants[f];
  return t;
}

OrderTerm parse_term_line(std::string_view text, int line) {
  if (split_top(text, '+').size() != 1) throw ParseError("a bound must be a single term", line, 1);
  return product_to_term(parse_product(text, line));
}

std::string exponent_string(const Rational& e) {
  if (is_integer(e)) return holonomy::to_string(e);
  return "(" + holonomy::to_string(e) + ")";
}

}  // namespace

OrderTerm OrderTerm::symbol(const std::string& name, const Rational& exponent) {
  OrderTerm t;
  t.constants[name] = 1;
  t.exponent = exponent;
  return t;
}

OrderTerm OrderTerm::power(const Rational& exponent) {
  OrderTerm t;
  t.exponent = exponent;
  return t;
}

std::string OrderTerm::constant_string() const {
  if (constants.empty()) return "1";
  std::string s;
  for (const auto& [name, k] : constants)
    for (int i = 0; i < k; ++i) s += (s.empty() ? "" : "*") + name;
  return s;
}

std::string OrderTerm::to_string() const {
  if (exponent == 0) return constant_string();
  std::string t = exponent == 1 ? "t" : "t^" + exponent_string(exponent);
  return constants.empty() ? t : constant_string() + "*" + t;
}

OrderTerm operator*(const OrderTerm& a, const OrderTerm& b) {
  OrderTerm r = a;
  r.exponent += b.exponent;
  for (const auto& [name, k] : b.constants) r.constants[name] += k;
  return r;
}

OrderExpr& OrderExpr::add(const OrderTerm& t) {
  if (std::find(terms.begin(), terms.end(), t) == terms.end()) terms.push_back(t);
  return *this;
}

std::string OrderExpr::to_string() const {
  if (terms.empty()) return "0";
  std::string s;
  for (const auto& t : terms) s += (s.empty() ? "" : " + ") + t.to_string();
  return s;
}

OrderExpr operator+(OrderExpr a, const OrderExpr& b) {
  for (const auto& t : b.terms) a.add(t);
  return a;
}

OrderExpr operator*(const OrderExpr& a, const OrderTerm& b) {
  OrderExpr r;
  for (const auto& t : a.terms) r.add(t * b);
  return r;
}

OrderTerm parse_order_term(std::string_view text) { return parse_term_line(text, 0); }

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::always: return "always";
    case Verdict::for_small_t: return "for_small_t";
    case Verdict::never_by_exponent: return "never_by_exponent";
  }
  return "?";
}

Dominance dominates(const OrderTerm& quantity, const OrderTerm& bound) {
  const Rational margin = quantity.exponent - bound.exponent;
  if (margin == 0) return {Verdict::always, margin};
  if (margin > 0) return {Verdict::for_small_t, margin};
  return {Verdict::never_by_exponent, margin};
}

BoundKind bound_kind(const std::string& quantity) {
  const std::string suffix = "_lower";
  if (quantity.size() >= suffix.size() && quantity.compare(quantity.size() - suffix.size(), suffix.size(), suffix) == 0)
    return BoundKind::lower;
  return BoundKind::upper;
}

std::size_t HypothesesReport::passed_count() const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const auto& c) { return c.passed; }));
}

HypothesesReport check_hypotheses(const EstimateProfile& established, const EstimateProfile& required) {
  HypothesesReport report;
  std::vector<std::string> order{"psi_L2", "psi_C0", "dpsi_L14", "inj_radius_lower", "curvature_upper"};
  order.erase(std::remove_if(order.begin(), order.end(), [&](const auto& n) { return !required.bounds.count(n); }),
              order.end());
  for (const auto& [name, req] : required.bounds)
    if (std::find(order.begin(), order.end(), name) == order.end()) order.push_back(name);
  for (const auto& name : order) {
    const OrderTerm& req = required.bounds.at(name);
    auto it = established.bounds.find(name);
    if (it == established.bounds.end()) throw ValidationError("profile has no bound for " + name);
    const BoundKind kind = bound_kind(name);
    // A lower bound x >= c t^a implies x >= c' t^b iff a <= b.
    const Dominance d = kind == BoundKind::upper ? dominates(it->second, req) : dominates(req, it->second);
    report.checks.push_back({name, kind, it->second, req, d.margin, d.verdict != Verdict::never_by_exponent});
  }
  return report;
}

void require_hypotheses(const HypothesesReport& report) {
  for (const auto& c : report.checks)
    if (!c.passed) throw HypothesisFails(c.quantity, c.margin);
}

std::string Product::to_string() const {
  OrderTerm t = OrderTerm::power(t_exponent);
  std::string s;
  for (const auto& f : factors) s += (s.empty() ? "" : "*") + f;
  if (t_exponent != 0) s += (s.empty() ? "" : "*") + t.to_string();
  return s.empty() ? "1" : s;
}

ClosureReport check_induction_closure(const InductionSystem& system, const EstimateProfile& givens) {
  ClosureReport report;
  std::set<std::string> chosen;
  for (const auto& [name, bound] : system.assumed) {
    if (bound.constants.size() != 1 || bound.constants.begin()->second != 1) {
      report.unsolvable_reason = "assumed bound on " + name + " is not a single constant symbol";
    } else {
      chosen.insert(bound.constants.begin()->first);
    }
  }

  // edges[c] = bound constants that must be fixed before c
  std::map<std::string, std::set<std::string>> edges;
  for (const auto& c : chosen) edges[c];

  for (const auto& rule : system.rules) {
    auto target = system.assumed.find(rule.target);
    if (target == system.assumed.end()) throw ValidationError("rule for untracked norm " + rule.target);
    const OrderTerm& bound = target->second;
    for (const auto& p : rule.products) {
      OrderTerm term = OrderTerm::power(p.t_exponent);
      for (const auto& f : p.factors) {
        if (auto a = system.assumed.find(f); a != system.assumed.end()) {
          term = term * a->second;
        } else if (auto g = givens.bounds.find(f); g != givens.bounds.end()) {
          term = term * g->second;
        } else {
          term = term * OrderTerm::symbol(f);
        }
      }
      const Dominance d = dominates(term, bound);
      if (d.verdict == Verdict::never_by_exponent) {
        report.failures.push_back({rule.target, term, d.margin});
      } else if (d.verdict == Verdict::for_small_t) {
        report.t_margins.push_back({rule.target, term, d.margin});
      } else {
        const std::string rhs = bound.constant_string();
        report.constraints.push_back({rule.target, term, rhs});
        for (const auto& [sym, k] : term.constants)
          if (chosen.count(sym)) edges[rhs].insert(sym);
      }
    }
  }

  report.exponents_close = report.failures.empty();
  for (const auto& m : report.t_margins)
    if (!report.min_positive_margin || m.margin < *report.min_positive_margin) report.min_positive_margin = m.margin;

  if (report.unsolvable_reason.empty()) {
    // Kahn's algorithm, smallest name first for a deterministic order.
    std::map<std::string, std::size_t> pending;
    for (const auto& [c, deps] : edges) pending[c] = deps.size();
    std::set<std::string> ready;
    for (const auto& [c, k] : pending)
      if (k == 0) ready.insert(c);
    while (!ready.empty()) {
      std::string c = *ready.begin();
      ready.erase(ready.begin());
      report.solve_order.push_back(c);
      for (auto& [other, deps] : edges)
        if (deps.count(c) && --pending[other] == 0) ready.insert(other);
    }
    if (report.solve_order.size() == edges.size()) {
      report.constants_solvable = true;
    } else {
      std::string stuck;
      for (const auto& [c, k] : pending)
        if (k > 0) stuck += (stuck.empty() ? "" : ", ") + c;
      report.unsolvable_reason = "circular constant constraints among " + stuck;
    }
  }
  report.closes = report.exponents_close && report.constants_solvable;
  return report;
}

EstimateSpec parse_estimates(std::string_view text) {
  EstimateSpec spec;
  std::istringstream in{std::string(text)};
  std::string line, section;
  int line_no = 0;
  std::set<std::string> seen_rules;
  while (std::getline(in, line)) {
    ++line_no;
    std::string body = trim(std::string_view(line).substr(0, line.find('#')));
    if (body.empty()) continue;
    if (body.front() == '[') {
      if (body.back() != ']') throw ParseError("unterminated section header", line_no, 1);
      section = body.substr(1, body.size() - 2);
      if (section != "profile" && section != "hypotheses" && section != "assume" && section != "rules")
        throw ParseError("unknown section [" + section + "]", line_no, 1);
      continue;
    }
    if (section.empty()) throw ParseError("entry outside of a section", line_no, 1);
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'name = expression'", line_no, 1);
    std::string name = trim(std::string_view(body).substr(0, eq));
    const std::string rhs = trim(std::string_view(body).substr(eq + 1));
    if (section == "rules" && name.rfind("rule ", 0) == 0) name = trim(name.substr(5));
    if (!is_identifier(name)) throw ParseError("bad name '" + name + "'", line_no, 1);
    if (section == "rules") {
      if (!seen_rules.insert(name).second) throw ParseError("duplicate rule for " + name, line_no, 1);
      Rule r{name, {}};
      if (rhs != "0")
        for (const auto& part : split_top(rhs, '+')) r.products.push_back(parse_product(part, line_no));
      spec.system.rules.push_back(std::move(r));
    } else {
      auto& target = section == "profile"      ? spec.profile.bounds
                     : section == "hypotheses" ? spec.hypotheses.bounds
                                               : spec.system.assumed;
      if (target.count(name)) throw ParseError("duplicate entry " + name, line_no, 1);
      target[name] = parse_term_line(rhs, line_no);
    }
  }
  return spec;
}

const std::string& default_estimates_text() { return kDefaults; }

EstimateSpec default_estimates() { return parse_estimates(kDefaults); }

std::vector<std::string> reference_deviations(const InductionSystem& system) {
  const InductionSystem ref = default_estimates().system;
  std::vector<std::string> out;
  for (const auto& [name, bound] : ref.assumed) {
    auto it = system.assumed.find(name);
    if (it == system.assumed.end()) out.push_back("assumed bound on " + name + " removed");
    else if (it->second != bound)
      out.push_back("assumed bound on " + name + " changed from " + bound.to_string() + " to " + it->second.to_string());
  }
  for (const auto& [name, bound] : system.assumed)
    if (!ref.assumed.count(name)) out.push_back("assumed bound on " + name + " added");
  for (const auto& r : ref.rules) {
    auto it = std::find_if(system.rules.begin(), system.rules.end(), [&](const Rule& x) { return x.target == r.target; });
    if (it == system.rules.end()) {
      out.push_back("rule for " + r.target + " removed");
      continue;
    }
    if (*it == r) continue;
    auto render = [](const Rule& x) {
      std::string s;
      for (const auto& p : x.products) s += (s.empty() ? "" : " + ") + p.to_string();
      return s.empty() ? std::string("0") : s;
    };
    out.push_back("rule for " + r.target + " changed from " + render(r) + " to " + render(*it));
  }
  for (const auto& r : system.rules)
    if (std::none_of(ref.rules.begin(), ref.rules.end(), [&](const Rule& x) { return x.target == r.target; }))
      out.push_back("rule for " + r.target + " added");
  return out;
}

}  // namespace holonomy::estimates

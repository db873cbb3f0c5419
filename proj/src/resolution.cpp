#include "holonomy/resolution.hpp"

#include "holonomy/qpoly.hpp"

#include <numeric>
#include <sstream>

namespace holonomy::resolution {

namespace {

constexpr const char* kAdeCitation = "Kronheimer ALE classification: A_k chain of k exceptional 2-spheres";

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

LocalModel unsupported(LocalModel m, std::string reason) {
  m.kind = ModelKind::unsupported;
  m.reason = std::move(reason);
  return m;
}

// Multiplicity of eigenvalue 1 plus the rotation angles of the remaining
// part, read off from the cyclotomic factorization of the characteristic
// polynomial. Returns false if the polynomial has a non-cyclotomic factor or
// an odd number of -1 eigenvalues.
bool rotation_angles(const IntMatrix& a, std::size_t order, unsigned& fixed_mult, std::vector<Rational>& angles) {
  QPoly rest;
  auto factors = cyclotomic_factors(characteristic_polynomial(to_rational(a)), static_cast<unsigned>(order), &rest);
  if (rest.degree() != 0) return false;
  fixed_mult = factors.count(1) ? factors[1] : 0;
  angles.clear();
  for (const auto& [m, e] : factors) {
    if (m == 1) continue;
    if (m == 2) {
      if (e % 2) return false;
      for (unsigned i = 0; i < e / 2; ++i) angles.emplace_back(1, 2);
      continue;
    }
    for (unsigned k = 1; 2 * k < m; ++k)
      if (std::gcd(k, m) == 1)
        for (unsigned i = 0; i < e; ++i) angles.emplace_back(k, m);
  }
  return true;
}

// Finds signs making Σ s_j θ_j an integer; these fix a complex structure in
// which the rotation lies in SU.
bool special_unitary_signs(const std::vector<Rational>& angles, std::vector<int>& signs) {
  const std::size_t n = angles.size();
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    Rational sum = 0;
    for (std::size_t j = 0; j < n; ++j) sum += (mask >> j & 1u) ? Rational(-angles[j]) : angles[j];
    if (is_integer(sum)) {
      signs.assign(n, 1);
      for (std::size_t j = 0; j < n; ++j)
        if (mask >> j & 1u) signs[j] = -1;
      return true;
    }
  }
  return false;
}

}  // namespace

const char* kind_name(ModelKind k) {
  switch (k) {
    case ModelKind::C2_quotient: return "C2_quotient";
    case ModelKind::C3_quotient: return "C3_quotient";
    case ModelKind::unsupported: return "unsupported";
  }
  return "?";
}

std::string LocalModel::label() const {
  switch (kind) {
    case ModelKind::C2_quotient: return "C^2/" + subgroup;
    case ModelKind::C3_quotient: return "C^3/" + subgroup;
    case ModelKind::unsupported: return "unsupported";
  }
  return "?";
}

LocalModel classify_local_model(const orbifold::FiniteIsomGroup& group, const orbifold::SingularComponent& c) {
  LocalModel m;
  m.normal_dim = static_cast<int>(group.dim - c.dim);
  m.group_order = c.isotropy.size();
  if (m.group_order <= 1) return unsupported(m, "trivial isotropy, component is not singular");

  std::size_t generator = group.order();
  for (std::size_t h : c.isotropy)
    if (orbifold::element_order(group.elements[h]) == m.group_order) {
      generator = h;
      break;
    }
  if (generator == group.order()) return unsupported(m, "isotropy group is not cyclic");

  for (std::size_t h : c.isotropy) {
    if (group.elements[h].is_identity()) continue;
    unsigned fixed = 0;
    std::vector<Rational> ang;
    if (!rotation_angles(group.elements[h].linear(), m.group_order, fixed, ang))
      return unsupported(m, "isotropy element " + group.names[h] + " is not a rotation of finite order");
    if (fixed != c.dim) return unsupported(m, "isotropy element " + group.names[h] + " fixes normal directions");
  }

  unsigned fixed = 0;
  rotation_angles(group.elements[generator].linear(), m.group_order, fixed, m.angles);
  std::vector<int> signs;
  if (!special_unitary_signs(m.angles, signs)) return unsupported(m, "isotropy is not special unitary");
  m.subgroup = "Z" + std::to_string(m.group_order);

  if (m.normal_dim == 4) {
    m.kind = ModelKind::C2_quotient;
    return m;
  }
  if (m.normal_dim == 6) {
    // Age of h^j in the complex structure fixed by `signs`.
    for (std::size_t j = 1; j < m.group_order; ++j) {
      Rational age = 0;
      for (std::size_t k = 0; k < m.angles.size(); ++k) age += mod1(Rational(signs[k] * static_cast<long>(j)) * m.angles[k]);
      if (age == 1) ++m.junior_elements;
      if (age == 2) ++m.senior_elements;
    }
    m.kind = ModelKind::C3_quotient;
    return m;
  }
  return unsupported(m, "normal dimension " + std::to_string(m.normal_dim) + " is outside the C^2 and C^3 cases");
}

AdeTable parse_ade_table(std::string_view text) {
  AdeTable table;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string body = trim(line.substr(0, line.find('#')));
    if (body.empty()) continue;
    std::istringstream fields(body);
    std::string series;
    int k = 0, b2 = 0, b3 = 0;
    if (!(fields >> series >> k >> b2 >> b3)) throw ParseError("expected 'A k b2 b3 citation'", line_no, 1);
    if (series != "A") throw ParseError("only the A series is supported, got '" + series + "'", line_no, 1);
    if (k < 1 || b2 < 0 || b3 < 0) throw ParseError("entries must be nonnegative with k >= 1", line_no, 1);
    std::string citation;
    std::getline(fields, citation);
    citation = trim(citation);
    if (citation.empty()) throw ParseError("missing citation", line_no, static_cast<int>(body.size()) + 1);
    if (table.a_series.count(k)) throw ParseError("duplicate entry A " + std::to_string(k), line_no, 1);
    table.a_series[k] = {b2, b3, citation};
  }
  return table;
}

const AdeTable& default_ade_table() {
  static const AdeTable table = [] {
    AdeTable t;
    for (int k = 1; k <= 11; ++k) t.a_series[k] = {k, 0, kAdeCitation};
    return t;
  }();
  return table;
}

ResolutionData resolution_data(const LocalModel& m, const AdeTable& table) {
  switch (m.kind) {
    case ModelKind::C2_quotient: {
      const int k = static_cast<int>(m.group_order) - 1;
      auto it = table.a_series.find(k);
      if (it == table.a_series.end())
        throw UnsupportedModel("no resolution data for A_" + std::to_string(k) + " (C^2/" + m.subgroup + ")");
      return {it->second.b2, it->second.b3, it->second.citation};
    }
    case ModelKind::C3_quotient:
      return {m.junior_elements, 0, "crepant resolution of cyclic C^3/G: one exceptional divisor per age-1 element"};
    case ModelKind::unsupported: break;
  }
  throw UnsupportedModel("no resolution data for an unsupported local model: " + m.reason);
}

BettiVector orbifold_betti(const orbifold::FiniteIsomGroup& group) {
  const int n = static_cast<int>(group.dim);
  BettiVector out;
  for (int k = 0; k <= n; ++k) {
    const auto sets = forms::index_sets(n, k);
    Rational total = 0;
    for (const auto& g : group.elements) {
      const QMatrix a = to_rational(g.linear());
      for (const auto& idx : sets) {
        if (k == 0) {
          total += 1;
          continue;
        }
        QMatrix minor(k, k);
        for (int r = 0; r < k; ++r)
          for (int s = 0; s < k; ++s) minor(r, s) = a(idx[r] - 1, idx[s] - 1);
        total += determinant(minor);
      }
    }
    total /= Rational(static_cast<long>(group.order()));
    if (!is_integer(total) || total < 0) throw NonIntegralTrace(k, total);
    out.b.push_back(static_cast<std::int64_t>(numerator(total)));
  }
  return out;
}

ResolvedBetti resolved_betti(const BettiVector& base,
                             const std::vector<std::pair<orbifold::SingularComponent, ResolutionData>>& components) {
  if (base.b.size() < 4) throw std::invalid_argument("base Betti vector is too short");
  ResolvedBetti r{base.b[2], base.b[3]};
  for (const auto& [comp, data] : components) {
    if (comp.stabilizer != comp.isotropy)
      throw NonFreeMonodromy("component " + comp.representative.to_string() + " has stabilizer of order " +
                             std::to_string(comp.stabilizer.size()) + " but isotropy of order " +
                             std::to_string(comp.isotropy.size()));
    // Fiber is the component torus T^d: b^0 = 1, b^1 = d.
    r.b2 += data.b2_exceptional;
    r.b3 += static_cast<std::int64_t>(data.b2_exceptional) * static_cast<std::int64_t>(comp.dim) + data.b3_exceptional;
  }
  return r;
}

}  // namespace holonomy::resolution

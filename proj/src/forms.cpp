#include "holonomy/forms.hpp"

#include <algorithm>
#include <sstream>

namespace holonomy::forms {

namespace {

void check_indices(int dim, const IndexSet& idx) {
  for (int i : idx)
    if (i < 1 || i > dim)
      throw std::out_of_range("form index " + std::to_string(i) + " outside 1.." + std::to_string(dim));
}

// Sorts in place; returns the permutation sign, or 0 on a repeated index.
int sort_with_sign(IndexSet& idx) {
  int sign = 1;
  for (std::size_t i = 1; i < idx.size(); ++i)
    for (std::size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
      if (idx[j - 1] == idx[j]) return 0;
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
    }
  for (std::size_t i = 1; i < idx.size(); ++i)
    if (idx[i - 1] == idx[i]) return 0;
  return sign;
}

IndexSet complement(int n, const IndexSet& idx) {
  IndexSet out;
  std::size_t k = 0;
  for (int i = 1; i <= n; ++i) {
    if (k < idx.size() && idx[k] == i) {
      ++k;
      continue;
    }
    out.push_back(i);
  }
  return out;
}

KForm from_list(int dim, int degree, std::initializer_list<std::pair<int, IndexSet>> list) {
  KForm f(dim, degree);
  for (const auto& [sign, idx] : list) f.add(idx, Rational(sign));
  return f;
}

}  // namespace

KForm::KForm(int dim, int degree) : dim_(dim), degree_(degree) {
  if (dim < 1) throw std::invalid_argument("form dimension must be positive");
  if (degree < 0) throw std::invalid_argument("form degree must be nonnegative");
}

KForm KForm::term(int dim, IndexSet indices, const Rational& c) {
  KForm f(dim, static_cast<int>(indices.size()));
  f.add(std::move(indices), c);
  return f;
}

KForm KForm::volume(int dim) {
  IndexSet all(dim);
  for (int i = 0; i < dim; ++i) all[i] = i + 1;
  return term(dim, all);
}

Rational KForm::coefficient(const IndexSet& indices) const {
  auto it = terms_.find(indices);
  return it == terms_.end() ? Rational(0) : it->second;
}

KForm& KForm::add(IndexSet indices, const Rational& c) {
  if (static_cast<int>(indices.size()) != degree_)
    throw std::invalid_argument("term of length " + std::to_string(indices.size()) + " added to a " +
                                std::to_string(degree_) + "-form");
  check_indices(dim_, indices);
  int sign = sort_with_sign(indices);
  if (sign == 0 || c == 0) return *this;
  Rational& slot = terms_[indices];
  slot += sign > 0 ? c : Rational(-c);
  if (slot == 0) terms_.erase(indices);
  return *this;
}

void KForm::require_compatible(const KForm& other) const {
  if (dim_ != other.dim_) throw DimensionMismatch("forms on R^" + std::to_string(dim_) + " and R^" +
                                                  std::to_string(other.dim_));
  if (degree_ != other.degree_ && !terms_.empty() && !other.terms_.empty())
    throw std::invalid_argument("adding forms of different degree");
}

KForm& KForm::operator+=(const KForm& other) {
  require_compatible(other);
  if (terms_.empty()) degree_ = other.degree_;
  for (const auto& [idx, c] : other.terms_) add(idx, c);
  return *this;
}

KForm& KForm::operator-=(const KForm& other) {
  require_compatible(other);
  if (terms_.empty()) degree_ = other.degree_;
  for (const auto& [idx, c] : other.terms_) add(idx, -c);
  return *this;
}

KForm& KForm::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [idx, v] : terms_) v *= c;
  return *this;
}

Rational KForm::norm_squared() const {
  Rational s = 0;
  for (const auto& [idx, c] : terms_) s += c * c;
  return s;
}

bool is_orthogonal(const LinearEndo& a) {
  if (!a.is_square()) return false;
  return a.transposed() * a == QMatrix::identity(a.rows());
}

bool is_integral(const LinearEndo& a) {
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (!is_integer(a(r, c))) return false;
  return true;
}

std::vector<IndexSet> index_sets(int n, int k) {
  std::vector<IndexSet> out;
  if (k < 0 || k > n) return out;
  IndexSet cur(k);
  for (int i = 0; i < k; ++i) cur[i] = i + 1;
  for (;;) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[i] == n - k + i + 1) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

int shuffle_sign(const IndexSet& a, const IndexSet& b) {
  int inversions = 0;
  for (int i : a)
    for (int j : b) {
      if (i == j) return 0;
      if (i > j) ++inversions;
    }
  return inversions % 2 ? -1 : 1;
}

KForm wedge(const KForm& a, const KForm& b) {
  if (a.dim() != b.dim())
    throw DimensionMismatch("wedge of forms on R^" + std::to_string(a.dim()) + " and R^" + std::to_string(b.dim()));
  const int degree = a.degree() + b.degree();
  KForm out(a.dim(), degree);
  if (degree > a.dim()) return out;
  for (const auto& [ia, ca] : a.terms())
    for (const auto& [ib, cb] : b.terms()) {
      int s = shuffle_sign(ia, ib);
      if (s == 0) continue;
      IndexSet merged;
      merged.reserve(degree);
      std::merge(ia.begin(), ia.end(), ib.begin(), ib.end(), std::back_inserter(merged));
      out.add(merged, s > 0 ? Rational(ca * cb) : Rational(-ca * cb));
    }
  return out;
}

KForm hodge_star(const KForm& a) {
  const int n = a.dim();
  KForm out(n, n - a.degree());
  for (const auto& [idx, c] : a.terms()) {
    IndexSet rest = complement(n, idx);
    int s = shuffle_sign(idx, rest);
    out.add(rest, s > 0 ? c : Rational(-c));
  }
  return out;
}

KForm pullback(const LinearEndo& f, const KForm& a) {
  const int n = a.dim();
  if (!f.is_square() || static_cast<int>(f.rows()) != n)
    throw DimensionMismatch("pullback by a " + std::to_string(f.rows()) + "x" + std::to_string(f.cols()) +
                            " map of a form on R^" + std::to_string(n));
  const int k = a.degree();
  KForm out(n, k);
  if (a.is_zero()) return out;
  const auto targets = index_sets(n, k);
  for (const auto& [idx, c] : a.terms()) {
    for (const auto& target : targets) {
      QMatrix minor(k, k);
      bool nonzero_row = true;
      for (int r = 0; r < k && nonzero_row; ++r) {
        bool any = false;
        for (int s = 0; s < k; ++s) {
          minor(r, s) = f(idx[r] - 1, target[s] - 1);
          if (minor(r, s) != 0) any = true;
        }
        nonzero_row = any;
      }
      if (!nonzero_row) continue;
      Rational det = k == 0 ? Rational(1) : determinant(minor);
      if (det != 0) out.add(target, c * det);
    }
  }
  return out;
}

KForm embed(const KForm& a, int new_dim, int offset) {
  KForm out(new_dim, a.degree());
  for (const auto& [idx, c] : a.terms()) {
    IndexSet shifted = idx;
    for (int& i : shifted) i += offset;
    out.add(shifted, c);
  }
  return out;
}

KForm canonical(Structure s, int m) {
  switch (s) {
    case Structure::g2_phi:
      return from_list(7, 3, {{+1, {1, 2, 3}}, {+1, {1, 4, 5}}, {+1, {1, 6, 7}}, {+1, {2, 4, 6}},
                              {-1, {2, 5, 7}}, {-1, {3, 4, 7}}, {-1, {3, 5, 6}}});
    case Structure::g2_star_phi:
      return from_list(7, 4, {{+1, {4, 5, 6, 7}}, {+1, {2, 3, 6, 7}}, {+1, {2, 3, 4, 5}}, {+1, {1, 3, 5, 7}},
                              {-1, {1, 3, 4, 6}}, {-1, {1, 2, 5, 6}}, {-1, {1, 2, 4, 7}}});
    case Structure::spin7_omega:
      return from_list(8, 4, {{+1, {1, 2, 3, 4}}, {+1, {1, 2, 5, 6}}, {+1, {1, 2, 7, 8}}, {+1, {1, 3, 5, 7}},
                              {-1, {1, 3, 6, 8}}, {-1, {1, 4, 5, 8}}, {-1, {1, 4, 6, 7}}, {-1, {2, 3, 5, 8}},
                              {-1, {2, 3, 6, 7}}, {-1, {2, 4, 5, 7}}, {+1, {2, 4, 6, 8}}, {+1, {3, 4, 5, 6}},
                              {+1, {3, 4, 7, 8}}, {+1, {5, 6, 7, 8}}});
    case Structure::su_omega: {
      if (m < 1) throw std::invalid_argument("SU(m) forms need m >= 1");
      // (i/2) dz ∧ dz̄ = dx ∧ dy for z = x + i y
      KForm f(2 * m, 2);
      for (int j = 1; j <= m; ++j) f.add({2 * j - 1, 2 * j}, 1);
      return f;
    }
    case Structure::su_re_theta:
    case Structure::su_im_theta: {
      if (m < 1) throw std::invalid_argument("SU(m) forms need m >= 1");
      // Expand prod_j (dx_{2j-1} + i dx_{2j}); picking the imaginary part in
      // p factors contributes i^p.
      const bool real_part = s == Structure::su_re_theta;
      KForm f(2 * m, m);
      for (unsigned mask = 0; mask < (1u << m); ++mask) {
        const int p = __builtin_popcount(mask);
        if ((p % 2 == 0) != real_part) continue;
        const int sign = ((real_part ? p / 2 : (p - 1) / 2) % 2) ? -1 : 1;
        IndexSet idx(m);
        for (int j = 0; j < m; ++j) idx[j] = (mask >> j & 1u) ? 2 * j + 2 : 2 * j + 1;
        f.add(idx, sign);
      }
      return f;
    }
  }
  throw std::invalid_argument("unknown structure");
}

const char* identity_name(Identity id) {
  switch (id) {
    case Identity::g2_from_su3: return "g2_from_su3";
    case Identity::g2_dual_from_su3: return "g2_dual_from_su3";
    case Identity::g2_from_su2: return "g2_from_su2";
    case Identity::g2_dual_from_su2: return "g2_dual_from_su2";
    case Identity::spin7_from_su4: return "spin7_from_su4";
  }
  return "?";
}

std::vector<Identity> all_identities() {
  return {Identity::g2_from_su3, Identity::g2_dual_from_su3, Identity::g2_from_su2, Identity::g2_dual_from_su2,
          Identity::spin7_from_su4};
}

IdentityCheck verify_identity(Identity id) {
  const Rational half(1, 2);
  auto dx = [](IndexSet idx) { return KForm::term(7, std::move(idx)); };
  KForm assembled(1, 0);
  KForm expected(1, 0);
  switch (id) {
    case Identity::g2_from_su3:
    case Identity::g2_dual_from_su3: {
      // R ⊕ C^3 with x1 on R and z_j = x_{2j} + i x_{2j+1}
      KForm omega = embed(canonical(Structure::su_omega, 3), 7, 1);
      KForm re = embed(canonical(Structure::su_re_theta, 3), 7, 1);
      KForm im = embed(canonical(Structure::su_im_theta, 3), 7, 1);
      if (id == Identity::g2_from_su3) {
        assembled = wedge(dx({1}), omega) + re;
        expected = canonical(Structure::g2_phi);
      } else {
        assembled = half * wedge(omega, omega) - wedge(dx({1}), im);
        expected = canonical(Structure::g2_star_phi);
      }
      break;
    }
    case Identity::g2_from_su2:
    case Identity::g2_dual_from_su2: {
      // R^3 ⊕ C^2 with z1 = x4 + i x5, z2 = x6 + i x7
      KForm omega = embed(canonical(Structure::su_omega, 2), 7, 3);
      KForm re = embed(canonical(Structure::su_re_theta, 2), 7, 3);
      KForm im = embed(canonical(Structure::su_im_theta, 2), 7, 3);
      if (id == Identity::g2_from_su2) {
        assembled = dx({1, 2, 3}) + wedge(dx({1}), omega) + wedge(dx({2}), re) - wedge(dx({3}), im);
        expected = canonical(Structure::g2_phi);
      } else {
        assembled = half * wedge(omega, omega) + wedge(dx({2, 3}), omega) - wedge(dx({1, 3}), re) -
                    wedge(dx({1, 2}), im);
        expected = canonical(Structure::g2_star_phi);
      }
      break;
    }
    case Identity::spin7_from_su4: {
      KForm omega = canonical(Structure::su_omega, 4);
      assembled = half * wedge(omega, omega) + canonical(Structure::su_re_theta, 4);
      expected = canonical(Structure::spin7_omega);
      break;
    }
  }
  KForm discrepancy = assembled - expected;
  return {discrepancy.is_zero(), assembled, expected, discrepancy};
}

std::string to_text(const KForm& a) {
  std::ostringstream os;
  for (const auto& [idx, c] : a.terms()) {
    os << (c < 0 ? '-' : '+') << to_string(c < 0 ? Rational(-c) : c) << " dx{";
    for (std::size_t i = 0; i < idx.size(); ++i) os << (i ? " " : "") << idx[i];
    os << "}\n";
  }
  return os.str();
}

KForm parse_form(std::string_view text, int dim, int degree) {
  KForm out(dim, degree);
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto open = line.find("dx{");
    const auto close = line.find('}', open == std::string::npos ? 0 : open);
    if (open == std::string::npos || close == std::string::npos)
      throw ParseError("expected '<coefficient> dx{...}'", line_no, 1);
    std::string coeff = line.substr(0, open);
    coeff.erase(std::remove_if(coeff.begin(), coeff.end(), [](char ch) { return ch == ' ' || ch == '\t'; }),
                coeff.end());
    Rational c;
    try {
      c = parse_rational(coeff);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), line_no, 1);
    }
    IndexSet idx;
    std::istringstream ids(line.substr(open + 3, close - open - 3));
    int i;
    while (ids >> i) idx.push_back(i);
    if (!ids.eof()) throw ParseError("malformed index list", line_no, static_cast<int>(open) + 4);
    try {
      out.add(idx, c);
    } catch (const std::exception& e) {
      throw ParseError(e.what(), line_no, static_cast<int>(open) + 1);
    }
  }
  return out;
}

}  // namespace holonomy::forms

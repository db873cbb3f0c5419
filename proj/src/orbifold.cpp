#include "holonomy/orbifold.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace holonomy::orbifold {

namespace {

RationalVector reduce(RationalVector v) {
  for (auto& x : v) x = mod1(x);
  return v;
}

IntMatrix stack_rows(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t cols = a.rows() ? a.cols() : b.cols();
  IntMatrix out(a.rows() + b.rows(), cols);
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < cols; ++c) out(r, c) = a(r, c);
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < cols; ++c) out(a.rows() + r, c) = b(r, c);
  return out;
}

// Row basis of span_R(rows) ∩ Z^n, in Hermite form.
IntMatrix saturated_hermite(const IntMatrix& rows, std::size_t n) {
  if (rows.rows() == 0) return IntMatrix(0, n);
  IntMatrix perp = integer_kernel(rows);                // n x (n - r), columns
  IntMatrix back = integer_kernel(perp.transposed());   // n x r, columns
  return hermite_rows(back.transposed());
}

std::vector<std::size_t> pivots_of(const IntMatrix& h) {
  std::vector<std::size_t> piv;
  for (std::size_t r = 0; r < h.rows(); ++r) {
    std::size_t c = 0;
    while (h(r, c) == 0) ++c;
    piv.push_back(c);
  }
  return piv;
}

// Subtracts real multiples of the Hermite rows so every pivot coordinate is 0.
void clear_pivots(RationalVector& x, const IntMatrix& h, const std::vector<std::size_t>& piv) {
  for (std::size_t r = 0; r < h.rows(); ++r) {
    const Rational f = x[piv[r]] / Rational(h(r, piv[r]));
    if (f == 0) continue;
    for (std::size_t c = 0; c < x.size(); ++c) x[c] -= f * Rational(h(r, c));
  }
}

// Least representative of x in R^n / (span_R(h) + Z^n); h must be saturated Hermite.
RationalVector canonical_offset(RationalVector x, const IntMatrix& h) {
  const std::size_t n = x.size();
  const auto piv = pivots_of(h);
  clear_pivots(x, h, piv);
  x = reduce(std::move(x));
  if (h.rows() == 0) return x;

  // The integer vectors e_p at pivots project to a finite subgroup of the
  // non-pivot torus; enumerate it and take the least translate.
  std::vector<RationalVector> gens;
  for (std::size_t p : piv) {
    RationalVector e(n, Rational(0));
    e[p] = 1;
    clear_pivots(e, h, piv);
    e = reduce(std::move(e));
    if (std::any_of(e.begin(), e.end(), [](const Rational& q) { return q != 0; })) gens.push_back(std::move(e));
  }
  std::set<RationalVector> group{RationalVector(n, Rational(0))};
  std::deque<RationalVector> queue{RationalVector(n, Rational(0))};
  while (!queue.empty()) {
    RationalVector v = std::move(queue.front());
    queue.pop_front();
    for (const auto& g : gens) {
      RationalVector w(n);
      for (std::size_t c = 0; c < n; ++c) w[c] = mod1(v[c] + g[c]);
      if (group.insert(w).second) queue.push_back(std::move(w));
    }
  }
  RationalVector best;
  for (const auto& g : group) {
    RationalVector cand(n);
    for (std::size_t c = 0; c < n; ++c) cand[c] = mod1(x[c] + g[c]);
    if (best.empty() || cand < best) best = std::move(cand);
  }
  return best;
}

bool matrix_less(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) return a.rows() < b.rows();
  if (a.cols() != b.cols()) return a.cols() < b.cols();
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (a(r, c) != b(r, c)) return a(r, c) < b(r, c);
  return false;
}

}  // namespace

AffineIsometry::AffineIsometry(IntMatrix linear, RationalVector translation)
    : linear_(std::move(linear)), translation_(std::move(translation)) {
  if (!linear_.is_square()) throw ValidationError("linear part is not square");
  if (translation_.size() != linear_.rows())
    throw DimensionMismatch("translation of length " + std::to_string(translation_.size()) + " for a " +
                            std::to_string(linear_.rows()) + "x" + std::to_string(linear_.rows()) + " linear part");
  if (linear_.transposed() * linear_ != IntMatrix::identity(linear_.rows()))
    throw ValidationError("linear part is not orthogonal");
  translation_ = reduce(std::move(translation_));
}

AffineIsometry AffineIsometry::identity(std::size_t n) {
  return AffineIsometry(IntMatrix::identity(n), RationalVector(n, Rational(0)));
}

AffineIsometry AffineIsometry::linear_only(IntMatrix linear) {
  const std::size_t n = linear.rows();
  return AffineIsometry(std::move(linear), RationalVector(n, Rational(0)));
}

bool AffineIsometry::is_identity() const {
  return linear_ == IntMatrix::identity(dim()) &&
         std::all_of(translation_.begin(), translation_.end(), [](const Rational& q) { return q == 0; });
}

RationalVector AffineIsometry::apply(const RationalVector& x) const {
  if (x.size() != dim()) throw DimensionMismatch("point dimension does not match isometry");
  RationalVector y = linear_ * x;
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += translation_[i];
  return y;
}

bool operator<(const AffineIsometry& a, const AffineIsometry& b) {
  if (a.linear_ != b.linear_) return matrix_less(a.linear_, b.linear_);
  return a.translation_ < b.translation_;
}

AffineIsometry compose(const AffineIsometry& g, const AffineIsometry& h) {
  if (g.dim() != h.dim()) throw DimensionMismatch("composing isometries of different dimension");
  RationalVector b = g.linear() * h.translation();
  for (std::size_t i = 0; i < b.size(); ++i) b[i] += g.translation()[i];
  return AffineIsometry(g.linear() * h.linear(), std::move(b));
}

AffineIsometry inverse(const AffineIsometry& g) {
  IntMatrix at = g.linear().transposed();
  RationalVector b = at * g.translation();
  for (auto& x : b) x = -x;
  return AffineIsometry(std::move(at), std::move(b));
}

std::size_t element_order(const AffineIsometry& g, std::size_t limit) {
  AffineIsometry p = g;
  for (std::size_t k = 1; k <= limit; ++k) {
    if (p.is_identity()) return k;
    p = compose(p, g);
  }
  throw std::runtime_error("element order exceeds " + std::to_string(limit));
}

bool FiniteIsomGroup::is_abelian() const {
  for (std::size_t i = 0; i < elements.size(); ++i)
    for (std::size_t j = i + 1; j < elements.size(); ++j)
      if (compose(elements[i], elements[j]) != compose(elements[j], elements[i])) return false;
  return true;
}

std::optional<std::size_t> FiniteIsomGroup::index_of(const AffineIsometry& g) const {
  for (std::size_t i = 0; i < elements.size(); ++i)
    if (elements[i] == g) return i;
  return std::nullopt;
}

std::size_t FiniteIsomGroup::multiply(std::size_t a, std::size_t b) const {
  auto idx = index_of(compose(elements.at(a), elements.at(b)));
  if (!idx) throw std::logic_error("group is not closed");
  return *idx;
}

FiniteIsomGroup generate_group(std::size_t dim, const std::vector<AffineIsometry>& generators,
                               std::size_t max_order, std::vector<std::string> generator_names) {
  if (max_order < 1) throw std::invalid_argument("max_order must be at least 1");
  for (const auto& g : generators)
    if (g.dim() != dim) throw DimensionMismatch("generator of dimension " + std::to_string(g.dim()) +
                                                " in a group acting on T^" + std::to_string(dim));
  for (std::size_t i = generator_names.size(); i < generators.size(); ++i)
    generator_names.push_back("g" + std::to_string(i + 1));

  FiniteIsomGroup group;
  group.dim = dim;
  std::map<AffineIsometry, std::size_t> seen;
  auto insert = [&](AffineIsometry g, std::string name) {
    if (seen.count(g)) return;
    if (group.elements.size() >= max_order) throw ClosureExceeded(max_order);
    seen.emplace(g, group.elements.size());
    group.elements.push_back(std::move(g));
    group.names.push_back(std::move(name));
  };
  insert(AffineIsometry::identity(dim), "1");
  for (std::size_t head = 0; head < group.elements.size(); ++head)
    for (std::size_t k = 0; k < generators.size(); ++k) {
      const std::string& base = group.names[head];
      insert(compose(group.elements[head], generators[k]),
             base == "1" ? generator_names[k] : base + "*" + generator_names[k]);
    }
  return group;
}

std::vector<std::vector<std::size_t>> subgroups(const FiniteIsomGroup& group) {
  const std::size_t n = group.order();
  std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) table[a][b] = group.multiply(a, b);

  auto closure = [&](std::set<std::size_t> s) {
    std::deque<std::size_t> queue(s.begin(), s.end());
    while (!queue.empty()) {
      std::size_t a = queue.front();
      queue.pop_front();
      std::vector<std::size_t> cur(s.begin(), s.end());
      for (std::size_t b : cur)
        for (std::size_t c : {table[a][b], table[b][a]})
          if (s.insert(c).second) queue.push_back(c);
    }
    return s;
  };

  std::set<std::set<std::size_t>> found{{0}};
  std::deque<std::set<std::size_t>> queue{{0}};
  while (!queue.empty()) {
    auto s = queue.front();
    queue.pop_front();
    for (std::size_t g = 0; g < n; ++g) {
      if (s.count(g)) continue;
      auto t = s;
      t.insert(g);
      t = closure(std::move(t));
      if (found.insert(t).second) queue.push_back(t);
    }
  }
  std::vector<std::vector<std::size_t>> out;
  for (const auto& s : found) out.emplace_back(s.begin(), s.end());
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.size() != b.size() ? a.size() < b.size() : a < b; });
  return out;
}

FiniteIsomGroup restrict_to(const FiniteIsomGroup& group, const std::vector<std::size_t>& indices) {
  if (indices.empty() || indices.front() != 0) throw std::invalid_argument("subgroup must contain the identity");
  FiniteIsomGroup sub;
  sub.dim = group.dim;
  for (std::size_t i : indices) {
    sub.elements.push_back(group.elements.at(i));
    sub.names.push_back(group.names.at(i));
  }
  for (std::size_t a = 0; a < sub.order(); ++a)
    for (std::size_t b = 0; b < sub.order(); ++b)
      if (!sub.index_of(compose(sub.elements[a], sub.elements[b])))
        throw std::invalid_argument("index set is not closed under composition");
  return sub;
}

bool preserves(const AffineIsometry& g, const forms::KForm& form) {
  return forms::pullback(to_rational(g.linear()), form) == form;
}

Subtorus::Subtorus(RationalVector offset, const IntMatrix& directions) {
  const std::size_t n = offset.size();
  if (directions.rows() != 0 && directions.cols() != n)
    throw DimensionMismatch("subtorus directions do not match the offset dimension");
  directions_ = saturated_hermite(directions, n);
  offset_ = canonical_offset(std::move(offset), directions_);
}

bool Subtorus::contains(const RationalVector& point) const {
  if (point.size() != ambient_dim()) throw DimensionMismatch("point dimension does not match subtorus");
  return canonical_offset(point, directions_) == offset_;
}

std::string Subtorus::to_string() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < offset_.size(); ++i) os << (i ? "," : "") << holonomy::to_string(offset_[i]);
  os << ")";
  for (std::size_t r = 0; r < directions_.rows(); ++r) {
    os << (r ? " " : " + <");
    os << "(";
    for (std::size_t c = 0; c < directions_.cols(); ++c) os << (c ? "," : "") << directions_(r, c);
    os << ")";
  }
  if (directions_.rows()) os << ">";
  return os.str();
}

bool operator<(const Subtorus& a, const Subtorus& b) {
  if (a.directions_ != b.directions_) return matrix_less(a.directions_, b.directions_);
  return a.offset_ < b.offset_;
}

Subtorus image(const AffineIsometry& g, const Subtorus& s) {
  if (g.dim() != s.ambient_dim()) throw DimensionMismatch("isometry and subtorus dimensions differ");
  const IntMatrix moved = (g.linear() * s.directions().transposed()).transposed();
  return Subtorus(g.apply(s.offset()), s.dim() ? moved : IntMatrix(0, s.ambient_dim()));
}

bool intersects(const Subtorus& a, const Subtorus& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw DimensionMismatch("subtori in different tori");
  const std::size_t n = a.ambient_dim();
  IntMatrix h = saturated_hermite(stack_rows(a.directions(), b.directions()), n);
  RationalVector diff(n);
  for (std::size_t i = 0; i < n; ++i) diff[i] = b.offset()[i] - a.offset()[i];
  RationalVector c = canonical_offset(std::move(diff), h);
  return std::all_of(c.begin(), c.end(), [](const Rational& q) { return q == 0; });
}

FixedLocus fixed_locus(const AffineIsometry& g) {
  const std::size_t n = g.dim();
  FixedLocus locus;
  locus.owner = g;

  IntMatrix m = g.linear();
  for (std::size_t i = 0; i < n; ++i) m(i, i) -= 1;
  const SmithForm s = smith_normal_form(m);

  // With x = V y the congruence reads D y = U (-b) mod Z^n.
  RationalVector rhs = g.translation();
  for (auto& q : rhs) q = -q;
  const RationalVector c = s.U * rhs;

  std::vector<std::vector<Rational>> choices(n);
  std::vector<std::size_t> free_cols;
  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t d = s.D(i, i);
    if (d == 0) {
      if (!is_integer(c[i])) return locus;
      choices[i] = {Rational(0)};
      free_cols.push_back(i);
    } else {
      for (std::int64_t k = 0; k < d; ++k) choices[i].push_back(mod1((c[i] + k) / Rational(d)));
    }
  }

  IntMatrix dirs(free_cols.size(), n);
  for (std::size_t r = 0; r < free_cols.size(); ++r)
    for (std::size_t k = 0; k < n; ++k) dirs(r, k) = s.V(k, free_cols[r]);

  std::vector<std::size_t> pick(n, 0);
  for (;;) {
    RationalVector y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = choices[i][pick[i]];
    locus.components.emplace_back(s.V * y, dirs);
    std::size_t i = 0;
    while (i < n && ++pick[i] == choices[i].size()) pick[i++] = 0;
    if (i == n) break;
  }
  std::sort(locus.components.begin(), locus.components.end());
  locus.component_dim = static_cast<int>(free_cols.size());
  return locus;
}

SingularSet singular_set(const FiniteIsomGroup& group, const forms::KForm& structure) {
  for (std::size_t i = 0; i < group.order(); ++i)
    if (!preserves(group.elements[i], structure)) throw StructureNotPreserved(group.names[i]);

  std::map<Subtorus, std::vector<std::size_t>> sources;
  for (std::size_t i = 0; i < group.order(); ++i) {
    if (group.elements[i].is_identity()) continue;
    for (auto& comp : fixed_locus(group.elements[i]).components) sources[comp].push_back(i);
  }

  SingularSet out;
  out.total_components = sources.size();

  std::vector<Subtorus> all;
  for (const auto& [comp, src] : sources) all.push_back(comp);
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j)
      if (intersects(all[i], all[j])) out.intersections.push_back({all[i], all[j]});

  std::set<Subtorus> visited;
  for (const auto& [comp, src] : sources) {
    if (visited.count(comp)) continue;
    SingularComponent sc;
    sc.representative = comp;
    sc.dim = comp.dim();
    sc.sources = src;
    std::set<Subtorus> orbit;
    for (std::size_t h = 0; h < group.order(); ++h) {
      Subtorus moved = image(group.elements[h], comp);
      if (moved == comp) sc.stabilizer.push_back(h);
      orbit.insert(std::move(moved));
    }
    for (const auto& o : orbit) visited.insert(o);
    sc.orbit.assign(orbit.begin(), orbit.end());
    sc.orbit_size = sc.orbit.size();

    for (std::size_t h : sc.stabilizer) {
      const AffineIsometry& e = group.elements[h];
      bool pointwise = true;
      for (std::size_t r = 0; r < comp.dim() && pointwise; ++r) {
        IntVector u = comp.directions().row(r);
        if (e.linear() * u != u) pointwise = false;
      }
      if (pointwise) {
        RationalVector moved = e.apply(comp.offset());
        for (std::size_t k = 0; k < moved.size(); ++k)
          if (mod1(moved[k] - comp.offset()[k]) != 0) pointwise = false;
      }
      if (pointwise) sc.isotropy.push_back(h);
    }
    out.components.push_back(std::move(sc));
  }
  return out;
}

}  // namespace holonomy::orbifold

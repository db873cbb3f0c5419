#pragma once

// Brute-force oracles shared by the unit tests and the acceptance run.

#include "holonomy/orbifold.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

namespace oracles {

using namespace holonomy;
using namespace holonomy::orbifold;

// Fixed points of g on the grid (1/N)Z^n / Z^n, grouped into components by
// joining grid neighbours along a rational basis of ker(A - I). Valid when
// that basis is saturated and N is a multiple of every fixed-point
// denominator, which holds for signed permutations with translations in (1/q)Z
// and N = 2q.
struct GridComponents {
  std::vector<std::vector<long>> fixed;
  std::vector<int> label;
  int count = 0;
};

inline GridComponents grid_oracle(const AffineIsometry& g, long N) {
  const std::size_t n = g.dim();
  GridComponents out;
  std::map<std::vector<long>, int> index;
  std::vector<long> x(n, 0);
  while (true) {
    RationalVector p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = Rational(x[i], N);
    const RationalVector q = g.apply(p);
    bool fixed = true;
    for (std::size_t i = 0; i < n; ++i) fixed = fixed && is_integer(q[i] - p[i]);
    if (fixed) {
      index[x] = static_cast<int>(out.fixed.size());
      out.fixed.push_back(x);
    }
    std::size_t k = 0;
    while (k < n && ++x[k] == N) x[k++] = 0;
    if (k == n) break;
  }

  QMatrix m = to_rational(g.linear());
  for (std::size_t i = 0; i < n; ++i) m(i, i) -= 1;
  std::vector<std::vector<long>> steps;
  for (const auto& v : nullspace(m)) {
    Integer den = common_denominator(v);
    std::vector<long> step;
    for (const auto& c : v) step.push_back(static_cast<long>(numerator(c * den)));
    steps.push_back(step);
  }

  std::vector<int> parent(out.fixed.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (std::size_t a = 0; a < out.fixed.size(); ++a)
    for (const auto& s : steps) {
      std::vector<long> y = out.fixed[a];
      for (std::size_t i = 0; i < n; ++i) y[i] = ((y[i] + s[i]) % N + N) % N;
      auto it = index.find(y);
      if (it != index.end()) parent[find(static_cast<int>(a))] = find(it->second);
    }
  std::map<int, int> roots;
  for (std::size_t a = 0; a < out.fixed.size(); ++a) {
    const int r = find(static_cast<int>(a));
    if (!roots.count(r)) roots[r] = out.count++;
    out.label.push_back(roots[r]);
  }
  return out;
}

// True when fixed_locus(g) agrees with the grid: same component count, each
// fixed grid point on exactly one component, grid classes kept together.
inline bool matches_grid(const AffineIsometry& g, long N) {
  const FixedLocus fl = fixed_locus(g);
  const GridComponents grid = grid_oracle(g, N);
  if (static_cast<int>(fl.components.size()) != grid.count) return false;
  std::map<int, std::size_t> class_to_component;
  for (std::size_t a = 0; a < grid.fixed.size(); ++a) {
    RationalVector p;
    for (long v : grid.fixed[a]) p.emplace_back(v, N);
    int hits = 0;
    std::size_t which = 0;
    for (std::size_t c = 0; c < fl.components.size(); ++c)
      if (fl.components[c].contains(p)) {
        ++hits;
        which = c;
      }
    if (hits != 1) return false;
    auto [it, fresh] = class_to_component.emplace(grid.label[a], which);
    if (!fresh && it->second != which) return false;
  }
  for (const auto& c : fl.components)
    if (static_cast<int>(c.dim()) != fl.component_dim) return false;
  return true;
}


inline std::vector<std::vector<int>> subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i < n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

// Leibniz expansion; fine for the small minors used here.
inline std::int64_t leibniz_det(const IntMatrix& a, const std::vector<int>& rows, const std::vector<int>& cols) {
  const std::size_t k = rows.size();
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  std::int64_t total = 0;
  do {
    std::int64_t term = 1;
    for (std::size_t i = 0; i < k && term != 0; ++i) term *= a(rows[i], cols[perm[i]]);
    if (term == 0) continue;
    int inversions = 0;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) inversions += perm[i] > perm[j];
    total += inversions % 2 ? -term : term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

// Matrix of g acting on Λ^k, as the k-th compound matrix.
inline QMatrix compound(const IntMatrix& a, int k) {
  const auto sets = subsets(static_cast<int>(a.rows()), k);
  QMatrix c(sets.size(), sets.size());
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = 0; j < sets.size(); ++j) c(i, j) = leibniz_det(a, sets[i], sets[j]);
  return c;
}

// Oracle 1: rank of the averaging projector onto the invariant forms.
inline std::vector<std::int64_t> betti_by_projector(const FiniteIsomGroup& g) {
  const int n = static_cast<int>(g.dim);
  std::vector<std::int64_t> b;
  for (int k = 0; k <= n; ++k) {
    if (k == 0) {
      b.push_back(1);
      continue;
    }
    QMatrix p;
    for (const auto& e : g.elements) {
      const QMatrix c = compound(e.linear(), k);
      if (p.rows() == 0) p = QMatrix(c.rows(), c.cols());
      for (std::size_t i = 0; i < c.rows(); ++i)
        for (std::size_t j = 0; j < c.cols(); ++j) p(i, j) += c(i, j) / static_cast<long>(g.order());
    }
    b.push_back(static_cast<std::int64_t>(rank(p)));
  }
  return b;
}

// Oracle 2: nullity of the stacked (C_g - I) over all elements.
inline std::vector<std::int64_t> betti_by_stacked_nullity(const FiniteIsomGroup& g) {
  const int n = static_cast<int>(g.dim);
  std::vector<std::int64_t> b;
  for (int k = 0; k <= n; ++k) {
    const std::size_t dim = subsets(n, k).size();
    QMatrix stack(dim * g.order(), dim);
    for (std::size_t e = 0; e < g.order(); ++e) {
      const QMatrix c = k == 0 ? QMatrix::identity(1) : compound(g.elements[e].linear(), k);
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) stack(e * dim + i, j) = c(i, j) - (i == j ? 1 : 0);
    }
    b.push_back(static_cast<std::int64_t>(dim - rank(stack)));
  }
  return b;
}

}  // namespace oracles

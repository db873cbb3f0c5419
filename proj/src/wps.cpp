#include "holonomy/wps.hpp"

#include "holonomy/matrix.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

namespace holonomy::wps {

namespace {

int gcd_of(const std::vector<int>& weights, unsigned mask) {
  int g = 0;
  for (std::size_t j = 0; j < weights.size(); ++j)
    if (mask >> j & 1u) g = std::gcd(g, weights[j]);
  return g;
}

unsigned support_mask(const std::vector<int>& exponents) {
  unsigned m = 0;
  for (std::size_t j = 0; j < exponents.size(); ++j)
    if (exponents[j] != 0) m |= 1u << j;
  return m;
}

unsigned support_mask(const WpsPoint& p) {
  unsigned m = 0;
  for (std::size_t j = 0; j < p.coords.size(); ++j)
    if (!p.coords[j].is_zero()) m |= 1u << j;
  return m;
}

Cyclo12 monomial_value(const Monomial& t, const std::vector<Cyclo12>& z) {
  Cyclo12 v = t.coefficient;
  for (std::size_t j = 0; j < z.size() && !v.is_zero(); ++j)
    if (t.exponents[j]) v *= z[j].pow(t.exponents[j]);
  return v;
}

Cyclo12 product_power(const std::vector<Cyclo12>& r, const std::vector<std::int64_t>& m) {
  Cyclo12 v(1);
  for (std::size_t j = 0; j < r.size(); ++j)
    if (m[j]) v *= r[j].pow(m[j]);
  return v;
}

}  // namespace

std::string WpsPoint::to_string() const {
  std::string s = "[";
  for (std::size_t j = 0; j < coords.size(); ++j) s += (j ? ", " : "") + coords[j].to_string();
  return s + "]";
}

WpsHypersurface::WpsHypersurface(std::vector<int> weights, int degree, std::vector<Monomial> terms)
    : weights_(std::move(weights)), degree_(degree) {
  if (weights_.empty()) throw ValidationError("weighted projective space needs at least one coordinate");
  if (weights_.size() > 16) throw ValidationError("at most 16 coordinates are supported");
  int g = 0;
  for (int a : weights_) {
    if (a <= 0) throw ValidationError("weights must be positive");
    g = std::gcd(g, a);
  }
  if (g != 1) throw ValidationError("weights must have gcd 1");
  if (degree_ <= 0) throw ValidationError("degree must be positive");
  std::map<std::vector<int>, Cyclo12> merged;
  for (auto& t : terms) {
    if (t.exponents.size() != weights_.size())
      throw DimensionMismatch("monomial with " + std::to_string(t.exponents.size()) + " exponents in CP^" +
                              std::to_string(weights_.size() - 1));
    long wdeg = 0;
    for (std::size_t j = 0; j < weights_.size(); ++j) {
      if (t.exponents[j] < 0) throw ValidationError("negative exponent");
      wdeg += static_cast<long>(weights_[j]) * t.exponents[j];
    }
    if (wdeg != degree_)
      throw ValidationError("monomial of weighted degree " + std::to_string(wdeg) + " in a degree " +
                            std::to_string(degree_) + " polynomial");
    merged[t.exponents] += t.coefficient;
  }
  for (auto& [e, c] : merged)
    if (!c.is_zero()) terms_.push_back({e, c});
}

Cyclo12 WpsHypersurface::evaluate(const std::vector<Cyclo12>& z) const {
  if (z.size() != coordinates()) throw DimensionMismatch("point has the wrong number of coordinates");
  Cyclo12 v;
  for (const auto& t : terms_) v += monomial_value(t, z);
  return v;
}

std::vector<Cyclo12> WpsHypersurface::gradient(const std::vector<Cyclo12>& z) const {
  if (z.size() != coordinates()) throw DimensionMismatch("point has the wrong number of coordinates");
  std::vector<Cyclo12> g(z.size());
  for (const auto& t : terms_)
    for (std::size_t k = 0; k < z.size(); ++k) {
      if (t.exponents[k] == 0) continue;
      Monomial d = t;
      d.coefficient *= Cyclo12(t.exponents[k]);
      --d.exponents[k];
      g[k] += monomial_value(d, z);
    }
  return g;
}

bool WpsHypersurface::is_fermat() const {
  if (terms_.size() != coordinates()) return false;
  std::vector<bool> seen(coordinates(), false);
  for (const auto& t : terms_) {
    unsigned m = support_mask(t.exponents);
    if (std::popcount(m) != 1) return false;
    const int j = std::countr_zero(m);
    if (seen[j]) return false;
    seen[j] = true;
  }
  return true;
}

bool is_weighted_unit(const std::vector<int>& weights, const std::vector<Cyclo12>& r,
                      std::vector<std::int64_t>* witness) {
  const std::size_t n = weights.size();
  if (r.size() != n) throw DimensionMismatch("multiplier vector has the wrong length");
  for (const auto& x : r)
    if (x.is_zero()) throw std::invalid_argument("weighted unit test needs nonzero entries");
  // Pair relations first: they give the most readable witness.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const int g = std::gcd(weights[i], weights[j]);
      std::vector<std::int64_t> m(n, 0);
      m[i] = weights[j] / g;
      m[j] = -(weights[i] / g);
      if (product_power(r, m) != Cyclo12(1)) {
        if (witness) *witness = m;
        return false;
      }
    }
  IntMatrix row(1, n);
  for (std::size_t j = 0; j < n; ++j) row(0, j) = weights[j];
  const IntMatrix kernel = integer_kernel(row);
  for (std::size_t c = 0; c < kernel.cols(); ++c) {
    std::vector<std::int64_t> m = kernel.col(c);
    if (product_power(r, m) != Cyclo12(1)) {
      if (witness) *witness = m;
      return false;
    }
  }
  return true;
}

bool same_point(const std::vector<int>& weights, const WpsPoint& a, const WpsPoint& b) {
  if (a.coords.size() != weights.size() || b.coords.size() != weights.size())
    throw DimensionMismatch("point has the wrong number of coordinates");
  const unsigned sa = support_mask(a), sb = support_mask(b);
  if (sa == 0 || sb == 0) throw std::invalid_argument("the zero vector is not a point");
  if (sa != sb) return false;
  std::vector<int> w;
  std::vector<Cyclo12> r;
  for (std::size_t j = 0; j < weights.size(); ++j)
    if (sa >> j & 1u) {
      w.push_back(weights[j]);
      r.push_back(b.coords[j] / a.coords[j]);
    }
  return is_weighted_unit(w, r);
}

std::vector<SingularPoint> singular_points(const WpsHypersurface& y) {
  const std::vector<int>& a = y.weights();
  const std::size_t n = a.size();
  std::vector<SingularPoint> found;

  // Larger strata first, so a stratum lying inside Y is reported as such
  // rather than through one of its vertices.
  std::vector<unsigned> masks;
  for (unsigned mask = 1; mask < (1u << n); ++mask) masks.push_back(mask);
  std::stable_sort(masks.begin(), masks.end(),
                   [](unsigned x, unsigned z) { return std::popcount(x) > std::popcount(z); });
  for (unsigned mask : masks) {
    const int g = gcd_of(a, mask);
    if (g <= 1) continue;
    std::vector<const Monomial*> local;
    for (const auto& t : y.terms())
      if ((support_mask(t.exponents) & ~mask) == 0) local.push_back(&t);
    const int size = std::popcount(mask);
    std::vector<WpsPoint> points;

    if (size == 1) {
      if (local.empty()) {
        WpsPoint p{std::vector<Cyclo12>(n)};
        p.coords[std::countr_zero(mask)] = Cyclo12(1);
        points.push_back(p);
      }
    } else if (size == 2) {
      const std::size_t i = std::countr_zero(mask);
      const std::size_t j = std::countr_zero(mask & (mask - 1));
      if (local.empty())
        throw PositiveDimensionalSingularLocus("Y contains the whole stratum spanned by z" + std::to_string(i) +
                                               " and z" + std::to_string(j));
      const Monomial* pure_i = nullptr;
      const Monomial* pure_j = nullptr;
      for (const Monomial* t : local) {
        const unsigned s = support_mask(t->exponents);
        if (s == (1u << i)) pure_i = t;
        else if (s == (1u << j)) pure_j = t;
        else throw UnsupportedModel("mixed monomial on the stratum spanned by z" + std::to_string(i) + " and z" +
                                    std::to_string(j));
      }
      if (pure_i && pure_j) {
        // Normalize z_i = 1; then c_j z_j^q = -c_i.
        const int q = pure_j->exponents[j];
        const auto roots = roots_of(-pure_i->coefficient / pure_j->coefficient, q);
        if (static_cast<int>(roots.size()) != q)
          throw UnsupportedModel("only " + std::to_string(roots.size()) + " of " + std::to_string(q) +
                                 " roots lie in Q(zeta12)");
        for (const auto& rho : roots) {
          WpsPoint p{std::vector<Cyclo12>(n)};
          p.coords[i] = Cyclo12(1);
          p.coords[j] = rho;
          if (std::none_of(points.begin(), points.end(), [&](const WpsPoint& x) { return same_point(a, x, p); }))
            points.push_back(p);
        }
      }
    } else if (local.size() != 1) {
      throw PositiveDimensionalSingularLocus("Y meets a weighted stratum of dimension " + std::to_string(size - 1) +
                                             " in a set of positive dimension");
    }

    for (auto& p : points) {
      const auto grad = y.gradient(p.coords);
      if (std::all_of(grad.begin(), grad.end(), [](const Cyclo12& c) { return c.is_zero(); }))
        throw DegenerateSingularPoint(p);
      found.push_back({std::move(p), g});
    }
  }
  std::sort(found.begin(), found.end(), [](const auto& x, const auto& z) { return x.point < z.point; });
  return found;
}

bool canonical_degree_check(const WpsHypersurface& y) {
  return y.degree() == std::accumulate(y.weights().begin(), y.weights().end(), 0);
}

WpsPoint AntiholInvolution::apply(const WpsPoint& p) const {
  if (p.coords.size() != source.size()) throw DimensionMismatch("point has the wrong number of coordinates");
  WpsPoint q{std::vector<Cyclo12>(source.size())};
  for (std::size_t j = 0; j < source.size(); ++j) q.coords[j] = Cyclo12(sign[j]) * p.coords[source[j]].conj();
  return q;
}

std::string AntiholInvolution::to_string() const {
  std::string s;
  for (std::size_t j = 0; j < source.size(); ++j)
    s += (j ? " " : "") + std::string(sign[j] > 0 ? "+" : "-") + "c" + std::to_string(source[j]);
  return s;
}

bool InvolutionReport::listed_all_fixed() const {
  return std::all_of(listed_fixed.begin(), listed_fixed.end(), [](bool b) { return b; });
}

InvolutionReport verify_involution(const WpsHypersurface& y, const AntiholInvolution& s,
                                   const std::vector<WpsPoint>& listed, std::size_t samples, std::uint32_t seed) {
  const std::vector<int>& a = y.weights();
  const std::size_t n = a.size();
  if (s.source.size() != n || s.sign.size() != n) throw DimensionMismatch("involution has the wrong number of coordinates");
  std::vector<bool> hit(n, false);
  for (std::size_t j = 0; j < n; ++j) {
    const int src = s.source[j];
    if (src < 0 || static_cast<std::size_t>(src) >= n || hit[src]) throw ValidationError("involution is not a permutation");
    hit[src] = true;
    if (s.sign[j] != 1 && s.sign[j] != -1) throw ValidationError("involution signs must be +1 or -1");
    if (a[src] != a[j])
      throw ValidationError("involution sends coordinate " + std::to_string(src) + " of weight " + std::to_string(a[src]) +
                            " to coordinate " + std::to_string(j) + " of weight " + std::to_string(a[j]));
  }

  InvolutionReport report;

  // f(σ z) = conj(h(z)) with h = Σ conj(c_m) Π sign_j^{m_j} z_{src_j}^{m_j}; need h = λ f.
  std::map<std::vector<int>, Cyclo12> h, f;
  for (const auto& t : y.terms()) {
    f[t.exponents] = t.coefficient;
    std::vector<int> e(n, 0);
    Cyclo12 c = t.coefficient.conj();
    for (std::size_t j = 0; j < n; ++j) {
      e[s.source[j]] += t.exponents[j];
      if (s.sign[j] < 0 && t.exponents[j] % 2) c = -c;
    }
    h[e] += c;
  }
  std::optional<Cyclo12> lambda;
  for (const auto& [e, c] : h) {
    if (c.is_zero()) continue;
    auto it = f.find(e);
    if (it == f.end()) throw NotWellDefined("image polynomial has a monomial absent from Y", e);
    const Cyclo12 ratio = c / it->second;
    if (lambda && *lambda != ratio) throw NotWellDefined("image polynomial is not proportional to Y's polynomial", e);
    lambda = ratio;
  }
  for (const auto& [e, c] : f)
    if (!h.count(e) || h[e].is_zero()) throw NotWellDefined("monomial of Y missing from the image polynomial", e);
  report.scale = lambda.value_or(Cyclo12(1));

  for (std::size_t j = 0; j < n; ++j)
    if (s.source[s.source[j]] != static_cast<int>(j))
      throw NotInvolutive("the coordinate permutation is not an involution", {});
  for (std::size_t j = 0; j < n; ++j) report.multipliers.push_back(Cyclo12(s.sign[j] * s.sign[s.source[j]]));
  std::vector<std::int64_t> witness;
  if (!is_weighted_unit(a, report.multipliers, &witness)) {
    std::string w;
    for (std::size_t j = 0; j < n; ++j) w += (j ? "," : "") + std::to_string(witness[j]);
    throw NotInvolutive("sigma^2 is not a weighted scalar; relation (" + w + ") fails", witness);
  }
  for (int k = 0; k < 12 && !report.unit; ++k) {
    const Cyclo12 u = Cyclo12::zeta(k);
    bool ok = true;
    for (std::size_t j = 0; j < n && ok; ++j) ok = u.pow(a[j]) == report.multipliers[j];
    if (ok) report.unit = u;
  }

  for (const auto& p : listed) report.listed_fixed.push_back(same_point(a, s.apply(p), p));

  if (samples > 0) {
    if (!y.is_fermat()) {
      report.sample_note = "sampling needs a Fermat-type polynomial; skipped";
    } else {
      for (const auto& p : sample_points(y, samples, seed)) {
        ++report.samples_tested;
        if (same_point(a, s.apply(p), p)) ++report.samples_fixed;
      }
      report.sample_note = std::to_string(report.samples_fixed) + " of " + std::to_string(report.samples_tested) +
                           " sampled smooth points are fixed";
    }
  }
  return report;
}

std::vector<WpsPoint> sample_points(const WpsHypersurface& y, std::size_t count, std::uint32_t seed) {
  if (!y.is_fermat()) throw UnsupportedModel("point sampling needs a Fermat-type polynomial");
  const std::size_t n = y.coordinates();
  if (n < 2) return {};
  std::vector<int> expo(n);
  std::vector<Cyclo12> coef(n);
  for (const auto& t : y.terms()) {
    const int j = std::countr_zero(support_mask(t.exponents));
    expo[j] = t.exponents[j];
    coef[j] = t.coefficient;
  }

  std::mt19937 rng(seed);
  auto draw = [&]() {
    std::uniform_int_distribution<int> num(1, 6), den(1, 4), coin(0, 1);
    Cyclo12 b(Rational(num(rng), den(rng)) * (coin(rng) ? 1 : -1));
    if (coin(rng)) b += Cyclo12(Rational(num(rng), den(rng))) * Cyclo12::i();
    return b;
  };

  // z_j = rho * b^(l/e_j) with rho^(e_j) = -c_i/c_j cancels c_i z_i^(e_i) for z_i = b^(l/e_i).
  auto pair_root = [&](std::size_t i, std::size_t j) -> std::optional<Cyclo12> {
    try {
      const auto roots = roots_of(-coef[i] / coef[j], expo[j]);
      if (roots.empty()) return std::nullopt;
      std::uniform_int_distribution<std::size_t> pick(0, roots.size() - 1);
      return roots[pick(rng)];
    } catch (const UnsupportedModel&) {
      return std::nullopt;
    }
  };

  std::vector<WpsPoint> out;
  std::size_t attempts = 0;
  while (out.size() < count && attempts < 50 * count + 50) {
    ++attempts;
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    WpsPoint p{std::vector<Cyclo12>(n)};
    std::vector<bool> used(n, false);
    // Pair coordinates greedily; a coordinate with no solvable partner stays 0.
    for (std::size_t x = 0; x < n; ++x) {
      const std::size_t i = perm[x];
      if (used[i]) continue;
      for (std::size_t w = x + 1; w < n; ++w) {
        const std::size_t j = perm[w];
        if (used[j]) continue;
        std::optional<Cyclo12> rho = pair_root(i, j);
        std::size_t lo = i, hi = j;
        if (!rho) {
          rho = pair_root(j, i);
          std::swap(lo, hi);
        }
        if (!rho) continue;
        const int l = std::lcm(expo[lo], expo[hi]);
        const Cyclo12 b = draw();
        p.coords[lo] = b.pow(l / expo[lo]);
        p.coords[hi] = *rho * b.pow(l / expo[hi]);
        used[lo] = used[hi] = true;
        break;
      }
    }
    if (support_mask(p) == 0 || gcd_of(y.weights(), support_mask(p)) != 1) continue;
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace holonomy::wps

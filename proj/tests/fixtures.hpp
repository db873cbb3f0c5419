#pragma once

#include "holonomy/orbifold.hpp"
#include "holonomy/specfile.hpp"

#include <string>

namespace fixtures {

inline holonomy::IntMatrix diag(std::initializer_list<int> d) {
  holonomy::IntMatrix m(d.size(), d.size());
  std::size_t i = 0;
  for (int x : d) {
    m(i, i) = x;
    ++i;
  }
  return m;
}

inline holonomy::RationalVector halves(std::initializer_list<int> numerators) {
  holonomy::RationalVector v;
  for (int x : numerators) v.emplace_back(x, 2);
  return v;
}

// The three commuting involutions of T^7 preserving phi0.
inline holonomy::orbifold::AffineIsometry alpha() {
  return {diag({1, 1, 1, -1, -1, -1, -1}), halves({0, 0, 0, 0, 0, 0, 0})};
}
inline holonomy::orbifold::AffineIsometry beta() {
  return {diag({1, -1, -1, 1, 1, -1, -1}), halves({0, 0, 0, 0, 0, 1, 0})};
}
inline holonomy::orbifold::AffineIsometry gamma() {
  return {diag({-1, 1, -1, 1, -1, 1, -1}), halves({0, 0, 0, 0, 1, 0, 1})};
}

inline holonomy::orbifold::FiniteIsomGroup example_group() {
  return holonomy::orbifold::generate_group(7, {alpha(), beta(), gamma()}, 1024, {"alpha", "beta", "gamma"});
}

inline std::string asset(const std::string& name) {
  return holonomy::specfile::read_file(std::string(TEST_ASSET_DIR) + "/" + name);
}

}  // namespace fixtures

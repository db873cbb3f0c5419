#pragma once

// Text formats for orbifold and weighted-hypersurface inputs.
//
// Orbifold file:
//   dim 7
//   structure g2            # or spin7
//   generator alpha         # optional name line opening a block
//   <n rows of n integers>
//   <one row of n rationals p/q: the translation>
//
// Weighted hypersurface file:
//   weights: 1 1 1 1 4 4
//   degree: 12
//   1 12 0 0 0 0 0          # coefficient, then exponents
//   sigma: +c1 -c0 +c3 -c2 +c5 +c4
//   point: 0, 0, 0, 0, 1, -1
//
// Field elements are sums like "1", "-3/2", "z^2", "2*z^-1", "1+i"; z is
// exp(2πi/12) and i = z^3. Coefficients contain no spaces.

#include "holonomy/cyclotomic.hpp"
#include "holonomy/errors.hpp"
#include "holonomy/forms.hpp"
#include "holonomy/orbifold.hpp"
#include "holonomy/wps.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace holonomy::specfile {

// A file could not be read.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::filesystem::path& path);

enum class StructureTag { g2, spin7 };
const char* structure_name(StructureTag s);
// φ0 for g2, Ω0 for spin7.
forms::KForm structure_form(StructureTag s);

struct OrbifoldSpec {
  std::size_t dim = 0;
  StructureTag structure = StructureTag::g2;
  std::vector<orbifold::AffineIsometry> generators;
  std::vector<std::string> names;
};

// Throws ParseError with line/column, or ValidationError naming the generator.
OrbifoldSpec parse_orbifold_spec(std::string_view text);

// Throws std::invalid_argument; the file parsers rewrap it as ParseError.
Cyclo12 parse_field_element(std::string_view text);

struct WpsSpec {
  wps::WpsHypersurface hypersurface;
  std::optional<wps::AntiholInvolution> sigma;
  std::vector<wps::WpsPoint> points;
};

WpsSpec parse_wps_spec(std::string_view text);

}  // namespace holonomy::specfile

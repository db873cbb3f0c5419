#include "holonomy/specfile.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace holonomy::specfile {

namespace {

struct Token {
  std::string text;
  int column;  // 1-based
};

// Splits on whitespace (and on commas when `commas` is set), keeping columns.
std::vector<Token> tokenize(const std::string& line, bool commas = false) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto is_sep = [&](char c) { return std::isspace(static_cast<unsigned char>(c)) || (commas && c == ','); };
  while (i < line.size()) {
    while (i < line.size() && is_sep(line[i])) ++i;
    if (i >= line.size()) break;
    std::size_t j = i;
    while (j < line.size() && !is_sep(line[j])) ++j;
    out.push_back({line.substr(i, j - i), static_cast<int>(i) + 1});
    i = j;
  }
  return out;
}

std::string strip_comment(const std::string& line) { return line.substr(0, line.find('#')); }

bool parse_int(const std::string& s, long& out) {
  if (s.empty()) return false;
  std::size_t k = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (k == s.size()) return false;
  for (std::size_t i = k; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  try {
    out = std::stol(s);
  } catch (const std::out_of_range&) {
    return false;
  }
  return true;
}

// Splits "key: rest" and returns rest, or nullopt if the line has another key.
std::optional<std::string> keyed(const std::string& line, const std::string& key) {
  std::size_t b = line.find_first_not_of(" \t");
  if (b == std::string::npos || line.compare(b, key.size(), key) != 0) return std::nullopt;
  std::size_t p = b + key.size();
  if (p < line.size() && line[p] == ':') return line.substr(p + 1);
  return std::nullopt;
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

const char* structure_name(StructureTag s) { return s == StructureTag::g2 ? "g2" : "spin7"; }

forms::KForm structure_form(StructureTag s) {
  return forms::canonical(s == StructureTag::g2 ? forms::Structure::g2_phi : forms::Structure::spin7_omega);
}

OrbifoldSpec parse_orbifold_spec(std::string_view text) {
  OrbifoldSpec spec;
  bool have_dim = false, have_structure = false;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;

  std::string block_name;
  std::vector<std::vector<long>> rows;

  auto flush = [&](RationalVector b) {
    const std::string name = block_name.empty() ? "g" + std::to_string(spec.generators.size() + 1) : block_name;
    IntMatrix a(spec.dim, spec.dim);
    for (std::size_t r = 0; r < spec.dim; ++r)
      for (std::size_t c = 0; c < spec.dim; ++c) a(r, c) = rows[r][c];
    try {
      spec.generators.emplace_back(std::move(a), std::move(b));
    } catch (const ValidationError& e) {
      throw ValidationError("generator " + name + ": " + e.what());
    }
    spec.names.push_back(name);
    rows.clear();
    block_name.clear();
  };

  while (std::getline(in, raw)) {
    ++line_no;
    const auto tokens = tokenize(strip_comment(raw));
    if (tokens.empty()) continue;
    const std::string& head = tokens[0].text;

    if (head == "dim") {
      long n = 0;
      if (have_dim) throw ParseError("duplicate dim line", line_no, tokens[0].column);
      if (tokens.size() != 2 || !parse_int(tokens[1].text, n) || n < 1 || n > 16)
        throw ParseError("expected 'dim n' with 1 <= n <= 16", line_no, tokens[0].column);
      spec.dim = static_cast<std::size_t>(n);
      have_dim = true;
      continue;
    }
    if (head == "structure") {
      if (tokens.size() != 2) throw ParseError("expected 'structure g2|spin7'", line_no, tokens[0].column);
      if (tokens[1].text == "g2") spec.structure = StructureTag::g2;
      else if (tokens[1].text == "spin7") spec.structure = StructureTag::spin7;
      else throw ParseError("unknown structure '" + tokens[1].text + "'", line_no, tokens[1].column);
      have_structure = true;
      continue;
    }
    if (!have_dim) throw ParseError("'dim n' must come first", line_no, tokens[0].column);
    if (head == "generator") {
      if (!rows.empty())
        throw ParseError("previous generator has " + std::to_string(rows.size()) + " rows, expected " +
                             std::to_string(spec.dim) + " plus a translation row",
                         line_no, tokens[0].column);
      if (tokens.size() != 2) throw ParseError("expected 'generator <name>'", line_no, tokens[0].column);
      block_name = tokens[1].text;
      continue;
    }

    if (tokens.size() != spec.dim)
      throw ParseError("expected " + std::to_string(spec.dim) + " entries, found " + std::to_string(tokens.size()),
                       line_no, tokens.size() > spec.dim ? tokens[spec.dim].column : tokens.back().column);
    if (rows.size() < spec.dim) {
      std::vector<long> row;
      for (const auto& t : tokens) {
        long v = 0;
        if (!parse_int(t.text, v)) throw ParseError("matrix entry '" + t.text + "' is not an integer", line_no, t.column);
        row.push_back(v);
      }
      rows.push_back(std::move(row));
    } else {
      RationalVector b;
      for (const auto& t : tokens) {
        try {
          b.push_back(parse_rational(t.text));
        } catch (const std::invalid_argument&) {
          throw ParseError("translation entry '" + t.text + "' is not a rational p/q", line_no, t.column);
        }
      }
      flush(std::move(b));
    }
  }
  if (!rows.empty() || !block_name.empty())
    throw ParseError("generator " + (block_name.empty() ? std::to_string(spec.generators.size() + 1) : block_name) +
                         " is incomplete",
                     line_no, 1);
  if (!have_dim) throw ParseError("missing 'dim n' line", 0, 0);
  if (!have_structure) throw ParseError("missing 'structure g2|spin7' line", 0, 0);
  if (spec.structure == StructureTag::g2 && spec.dim != 7) throw ValidationError("a g2 structure needs dim 7");
  if (spec.structure == StructureTag::spin7 && spec.dim != 8) throw ValidationError("a spin7 structure needs dim 8");
  return spec;
}

Cyclo12 parse_field_element(std::string_view text) {
  const std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty field element");
  // Split into signed terms, not splitting an exponent sign after '^'.
  std::vector<std::string> terms;
  std::string cur;
  for (std::size_t k = 0; k < s.size(); ++k) {
    const char c = s[k];
    if ((c == '+' || c == '-') && k > 0 && s[k - 1] != '^') {
      terms.push_back(cur);
      cur.clear();
    }
    cur += c;
  }
  terms.push_back(cur);

  Cyclo12 total;
  for (std::string t : terms) {
    Rational sign = 1;
    if (!t.empty() && (t[0] == '+' || t[0] == '-')) {
      if (t[0] == '-') sign = -1;
      t.erase(0, 1);
    }
    if (t.empty()) throw std::invalid_argument("dangling sign in '" + s + "'");
    Cyclo12 base(1);
    std::string coeff = t;
    const auto star = t.find('*');
    std::string tail;
    if (star != std::string::npos) {
      coeff = t.substr(0, star);
      tail = t.substr(star + 1);
    } else if (t[0] == 'z' || t[0] == 'i') {
      coeff = "1";
      tail = t;
    }
    if (!tail.empty()) {
      if (tail == "i") base = Cyclo12::i();
      else if (tail == "z") base = Cyclo12::zeta(1);
      else if (tail.rfind("z^", 0) == 0) {
        long k = 0;
        if (!parse_int(tail.substr(2), k)) throw std::invalid_argument("bad exponent in '" + tail + "'");
        base = Cyclo12::zeta(static_cast<int>(k % 12));
      } else {
        throw std::invalid_argument("unknown factor '" + tail + "'");
      }
    }
    total += Cyclo12(sign * parse_rational(coeff)) * base;
  }
  return total;
}

WpsSpec parse_wps_spec(std::string_view text) {
  std::optional<std::vector<int>> weights;
  std::optional<int> degree;
  std::vector<wps::Monomial> terms;
  std::optional<wps::AntiholInvolution> sigma;
  std::vector<std::pair<int, std::vector<Token>>> point_lines;

  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = strip_comment(raw);
    if (tokenize(line).empty()) continue;

    if (auto rest = keyed(line, "weights")) {
      std::vector<int> w;
      for (const auto& t : tokenize(*rest)) {
        long v = 0;
        if (!parse_int(t.text, v) || v <= 0)
          throw ParseError("weight '" + t.text + "' is not a positive integer", line_no, t.column + 8);
        w.push_back(static_cast<int>(v));
      }
      if (w.empty()) throw ParseError("no weights given", line_no, 1);
      weights = w;
      continue;
    }
    if (auto rest = keyed(line, "degree")) {
      const auto toks = tokenize(*rest);
      long d = 0;
      if (toks.size() != 1 || !parse_int(toks[0].text, d) || d <= 0)
        throw ParseError("expected 'degree: d' with d > 0", line_no, 1);
      degree = static_cast<int>(d);
      continue;
    }
    if (auto rest = keyed(line, "sigma")) {
      wps::AntiholInvolution s;
      for (const auto& t : tokenize(*rest)) {
        long src = 0;
        if (t.text.size() < 3 || (t.text[0] != '+' && t.text[0] != '-') || t.text[1] != 'c' ||
            !parse_int(t.text.substr(2), src))
          throw ParseError("expected a signed conjugate like '+c1' or '-c0', got '" + t.text + "'", line_no,
                           t.column + 6);
        s.sign.push_back(t.text[0] == '+' ? 1 : -1);
        s.source.push_back(static_cast<int>(src));
      }
      sigma = s;
      continue;
    }
    if (auto rest = keyed(line, "point")) {
      point_lines.emplace_back(line_no, tokenize(*rest, true));
      continue;
    }

    if (!weights) throw ParseError("monomial before 'weights:'", line_no, 1);
    const auto toks = tokenize(line);
    if (toks.size() != weights->size() + 1)
      throw ParseError("expected a coefficient and " + std::to_string(weights->size()) + " exponents", line_no,
                       toks.back().column);
    wps::Monomial m;
    try {
      m.coefficient = parse_field_element(toks[0].text);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), line_no, toks[0].column);
    }
    for (std::size_t k = 1; k < toks.size(); ++k) {
      long v = 0;
      if (!parse_int(toks[k].text, v) || v < 0)
        throw ParseError("exponent '" + toks[k].text + "' is not a nonnegative integer", line_no, toks[k].column);
      m.exponents.push_back(static_cast<int>(v));
    }
    terms.push_back(std::move(m));
  }
  if (!weights) throw ParseError("missing 'weights:' line", 0, 0);
  if (!degree) throw ParseError("missing 'degree:' line", 0, 0);

  WpsSpec spec{wps::WpsHypersurface(*weights, *degree, std::move(terms)), sigma, {}};
  for (const auto& [ln, toks] : point_lines) {
    if (toks.size() != weights->size())
      throw ParseError("point needs " + std::to_string(weights->size()) + " coordinates", ln, 1);
    wps::WpsPoint p;
    for (const auto& t : toks) {
      try {
        p.coords.push_back(parse_field_element(t.text));
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), ln, t.column + 6);
      }
    }
    if (std::all_of(p.coords.begin(), p.coords.end(), [](const Cyclo12& c) { return c.is_zero(); }))
      throw ParseError("the zero vector is not a point", ln, 1);
    spec.points.push_back(std::move(p));
  }
  if (sigma && sigma->source.size() != weights->size())
    throw ParseError("sigma needs " + std::to_string(weights->size()) + " entries", 0, 0);
  return spec;
}

}  // namespace holonomy::specfile

#pragma once

#include <stdexcept>
#include <string>

namespace holonomy {

// Operands live in different ambient dimensions.
struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Input text could not be parsed. Line and column are 1-based; 0 means unknown.
struct ParseError : std::runtime_error {
  ParseError(const std::string& what, int line, int column)
      : std::runtime_error(format(what, line, column)), line(line), column(column) {}
  int line;
  int column;

 private:
  static std::string format(const std::string& what, int line, int column) {
    if (line <= 0) return what;
    return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what;
  }
};

// Parsed input violates a semantic constraint (e.g. a non-orthogonal generator).
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A local model or configuration the tool deliberately does not handle.
struct UnsupportedModel : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace holonomy

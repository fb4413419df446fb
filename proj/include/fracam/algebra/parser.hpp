#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "fracam/algebra/expr.hpp"

namespace fracam::algebra {

class ParseError : public std::runtime_error {
 public:
  enum class Kind { syntax, unknown_symbol, non_monomial_division, negative_exponent, division_by_zero };

  ParseError(Kind kind, std::size_t position, const std::string& message);

  Kind kind() const { return kind_; }
  /// Zero-based byte offset into the source.
  std::size_t position() const { return position_; }

 private:
  Kind kind_;
  std::size_t position_;
};

/// Parses the phase-space expression language (see docs/expression_grammar.md).
Expr parse_expr(std::string_view src);

}  // namespace fracam::algebra

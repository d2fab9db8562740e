#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "jsv/exact/laurent.hpp"
#include "jsv/exact/mpoly.hpp"

namespace jsv {

class PolyParseError : public std::runtime_error {
 public:
  PolyParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at column " + std::to_string(position + 1)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

struct Token {
  enum class Kind { Number, Identifier, StructureConstant, Symbol, End };
  Kind kind;
  std::string text;
  std::size_t position;
};

/// Splits polynomial text into tokens. `cIJ^K` (single-digit indices) is a
/// single StructureConstant token; symbols are + - * / ^ ( ) = ,
std::vector<Token> tokenize_poly(std::string_view text);

/// Parses the polynomial syntax: rational coefficients, identifiers, `cIJ^K`
/// structure constants, ^ with nonnegative integer exponents, parentheses, and
/// multiplication by `*` or juxtaposition. Division only by nonzero constants.
MPoly parse_poly(std::string_view text);

/// As parse_poly, but `param` may carry negative exponents.
LaurentPoly parse_laurent(std::string_view text, const std::string& param = "t");

}  // namespace jsv

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pythlab/poly.hpp"

namespace pythlab {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Variables are single letters; their position in `vars` gives the slot in Mono.
// Grammar: sums/differences of products, '^' with nonnegative integer exponents,
// '/' by nonzero constants, parentheses, and implicit multiplication ("3x^2y").
Poly parse_poly(std::string_view text, const std::vector<std::string>& vars = {"x", "y"});

// Canonical text form in descending grlex order; parse_poly(to_string(p)) == p.
std::string to_string(const Poly& p, const std::vector<std::string>& vars = {"x", "y", "z"});

}  // namespace pythlab

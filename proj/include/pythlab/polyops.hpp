#pragma once

#include <optional>
#include <utility>

#include "pythlab/linmap.hpp"
#include "pythlab/poly.hpp"

namespace pythlab {

// f(M (x, y)^T), expanded exactly. f must not involve z.
Poly compose_linear(const Poly& f, const LinMap& m);

// f(x, x^r) as a polynomial in x alone.
Poly substitute_power(const Poly& f, unsigned r);

struct BinomialDivision {
  Poly quotient;
  Poly remainder;  // equals substitute_power(f, r)
};

// f = quotient * (y - x^r) + remainder, remainder free of y.
BinomialDivision divide_binomial(const Poly& f, unsigned r);

// y - x^r
Poly binomial(unsigned r);

struct LeadingBlock {
  unsigned b = 0;  // largest x-exponent among monomials of maximal y-degree
  unsigned d = 0;  // degree in y
  Rat alpha;       // coefficient of x^b y^d

  friend bool operator==(const LeadingBlock&, const LeadingBlock&) = default;
};

// Throws std::domain_error on the zero polynomial.
LeadingBlock leading_block(const Poly& f);

// Homogeneous component of top total degree. Throws std::domain_error on zero.
Poly top_form(const Poly& f);

// g with g^2 == f and positive grlex-leading coefficient, if one exists over Q.
std::optional<Poly> is_perfect_square(const Poly& f);

struct ScaledSquare {
  Rat scale;  // > 0
  Poly root;  // leading coefficient 1
};

// f == scale * root^2 with scale > 0: exactly the polynomials that are squares
// over the reals. The zero polynomial yields scale 1, root 0.
std::optional<ScaledSquare> real_square_root(const Poly& f);

}  // namespace pythlab

#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace pythlab {

// Exact rational. mpq_class keeps results canonical after arithmetic; values
// built from raw numerator/denominator pairs go through make_rat().
using Rat = mpq_class;
using Int = mpz_class;

Rat make_rat(const Int& num, const Int& den);

// Accepts "p" or "p/q" with optional leading sign. Throws std::invalid_argument.
Rat parse_rat(std::string_view text);

std::string to_string(const Rat& q);

// Exact square root when q is the square of a rational.
std::optional<Rat> rat_sqrt(const Rat& q);

// Closest rational to x with denominator at most max_den (continued fractions).
Rat approximate(double x, const Int& max_den);

inline double to_double(const Rat& q) { return q.get_d(); }

}  // namespace pythlab

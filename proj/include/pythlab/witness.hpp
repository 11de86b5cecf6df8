#pragma once

#include <stdexcept>
#include <vector>

#include "pythlab/json_io.hpp"
#include "pythlab/poly.hpp"

namespace pythlab {

// Exponents r_1 < r_2 < ... and the polynomials F_1 = 1, F_n = F_{n-1} (y - x^{r_{n-1}})^2 + 1.
struct AssocSequence {
  Poly base;
  std::vector<unsigned> exps;  // r_1 .. r_{m-1}
  std::vector<Poly> polys;     // F_1 .. F_m
};

class FamilyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Scan limit used when none is given: sum(prior) + deg f + 64.
unsigned default_scan_bound(const Poly& f, const std::vector<unsigned>& prior);

// Smallest admissible next exponent. Throws FamilyError when the scan limit is hit.
unsigned next_exponent(const Poly& f, const std::vector<unsigned>& prior, unsigned scan_bound = 0);

// Whether r may follow `prior` in a sequence for f.
bool exponent_valid(const Poly& f, const std::vector<unsigned>& prior, unsigned r);

// F_1 .. F_m. Throws std::invalid_argument unless f is strictly admissible and m >= 1.
AssocSequence build_family(const Poly& f, std::size_t m);

// n polynomials whose squares sum to F_n (1-based). Throws std::out_of_range.
std::vector<Poly> constructive_decomposition(const AssocSequence& seq, std::size_t n);

// g (y - x^r)^2 + 1. Throws std::invalid_argument unless 2r > deg g.
Poly cldr_step(const Poly& g, unsigned r);

// {"f", "r", "F", "decompositions"}
Json family_to_json(const AssocSequence& seq);
AssocSequence family_from_json(const Json& j);

}  // namespace pythlab

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pythlab/sos.hpp"

namespace pythlab {

// Exact reason why f is not a sum of two squares of real polynomials.
struct TwoSquaresObstruction {
  enum class Kind {
    // deg_y f == 2 and 4 c2 c0 - c1^2 is not a real square.
    QuadraticDiscriminant,
    // f(x, x^r) == c > 0, f - c == c' (y - x^r)^2 h with 2r > deg h, h not a real square.
    BinomialCurve,
  };
  Kind kind;
  bool swapped = false;  // criterion applied to f(y, x)
  unsigned r = 0;
  Rat c;
  Poly witness;  // the discriminant or the cofactor h
};

std::optional<TwoSquaresObstruction> two_squares_obstruction(const Poly& f);
bool verify_two_squares_obstruction(const Poly& f, const TwoSquaresObstruction& obs);

enum class LowerBound {
  Trivial,        // length 1: nothing to exclude
  NotRealSquare,  // length >= 2: f is not (positive constant) * square
  NotTwoSquares,  // length >= 3: two-squares obstruction
  Inconclusive,   // k - 1 >= 3 squares not excluded
};

struct LengthResult {
  std::size_t length = 0;  // squares in the decomposition below
  std::vector<WeightedSquare> decomposition;
  LowerBound lower_bound = LowerBound::Inconclusive;
  std::optional<TwoSquaresObstruction> obstruction;

  bool certified() const { return lower_bound != LowerBound::Inconclusive; }
};

const char* to_string(LowerBound b);

// Fewest squares found (at most max_k) with the exact lower-bound evidence available
// for k - 1 <= 2. Empty when no decomposition with at most max_k squares is found.
std::optional<LengthResult> min_length(const Poly& f, std::size_t max_k, const SosOptions& opts = {});

}  // namespace pythlab

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pythlab/exact_linalg.hpp"
#include "pythlab/json_io.hpp"
#include "pythlab/poly.hpp"
#include "pythlab/sos.hpp"
#include "pythlab/witness.hpp"

namespace pythlab {

// h1 + sqrt(f) h2 in R[x, y, sqrt f].
class RingElem {
 public:
  // Throws std::invalid_argument when f is a real square.
  RingElem(Poly h1, Poly h2, Poly modulus);

  const Poly& h1() const { return h1_; }
  const Poly& h2() const { return h2_; }
  const Poly& modulus() const { return modulus_; }

  friend bool operator==(const RingElem&, const RingElem&) = default;

 private:
  Poly h1_, h2_, modulus_;
};

// Throws std::invalid_argument on different moduli.
RingElem ring_mul(const RingElem& u, const RingElem& v);
RingElem ring_add(const RingElem& u, const RingElem& v);

using PolyPair = std::pair<Poly, Poly>;

struct SquareSum {
  Poly sym;    // sum f_i^2 + modulus * sum g_i^2
  Poly cross;  // 2 sum f_i g_i
};

// sum (f_i + sqrt(modulus) g_i)^2 == sym + sqrt(modulus) cross. Throws on an empty list.
SquareSum expand_square_sum(const std::vector<PolyPair>& pairs, const Poly& modulus);

// target == sum f_i^2 + modulus * (sum g_i^2 + sum u_j^2), and sum f_i g_i == 0 when
// cross_required. The u_j are modulus-side terms left without a partner by a reduction.
struct RingRepresentation {
  Poly modulus;
  std::vector<PolyPair> pairs;
  Poly target;
  std::vector<Poly> unpaired;
  bool cross_required = true;
};

struct RepresentationCheck {
  bool ok = false;
  std::string failed;  // "sum identity" or "cross identity"
  Poly residual;

  explicit operator bool() const { return ok; }
};

RepresentationCheck verify_representation(const RingRepresentation& rep);

class ReductionError : public std::runtime_error {
 public:
  ReductionError(int step, const std::string& what)
      : std::runtime_error("step " + std::to_string(step) + ": " + what), step_(step) {}
  // 0 for input validation, otherwise the reduction step that failed.
  int step() const { return step_; }

 private:
  int step_;
};

struct ReductionTrace {
  std::size_t n = 0;  // input target is F_n
  unsigned r = 0;
  std::vector<Rat> constants;  // a_i
  RatMatrix reflection;        // H with H a = e_last
  Poly last_cofactor;          // quotient of the last rotated cofactor by (y - x^r)
};

// One step of the descent F_n -> F_{n-1}; the result has one pair fewer.
RingRepresentation reduce_representation(const RingRepresentation& rep, const AssocSequence& seq,
                                         ReductionTrace* trace = nullptr);

enum class RepresentationShape {
  Mixed,           // pairs (f_i, g_i)
  PolynomialOnly,  // g_i == 0
  ModulusOnly,     // f_i == 0
};

struct SearchOptions {
  RepresentationShape shape = RepresentationShape::Mixed;
  SosOptions sos;
  Int denominator_bound = Int(1) << 20;
};

// Representation with at most k pairs and cofactor degrees <= deg_bound, if one is found.
std::optional<RingRepresentation> search_representation(const Poly& target, const Poly& modulus, std::size_t k,
                                                        int deg_bound, const SearchOptions& opts = {},
                                                        std::string* note = nullptr);

// Exact quotient a / b, if b divides a.
std::optional<Poly> divide_exact(const Poly& a, const Poly& b);

// Writes a positive rational as a sum of at most max_terms rational squares (roots returned).
std::optional<std::vector<Rat>> rational_square_split(const Rat& w, std::size_t max_terms);

Json representation_to_json(const RingRepresentation& rep);
RingRepresentation representation_from_json(const Json& j);

}  // namespace pythlab

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pythlab/gram.hpp"
#include "pythlab/poly.hpp"

namespace pythlab {

struct SupportBasis {
  std::vector<Mono> monos;  // grlex ascending, no duplicates
};

// Lattice points of half the Newton polytope; empty for odd total degree.
SupportBasis support_basis(const Poly& f);

// Products of basis pairs grouped by the monomial they produce.
struct GramSystem {
  Poly target;
  SupportBasis basis;
  std::map<Mono, std::vector<std::pair<std::size_t, std::size_t>>, GrlexDesc> classes;
  std::vector<Mono> stray;  // target monomials no basis product reaches

  GramSystem(Poly target, SupportBasis basis);
  GramProblem problem() const;
};

// Drops basis monomials whose diagonal Gram entry is forced to zero. If such an
// entry is forced negative instead, that monomial is reported and pruning stops.
struct PrunedBasis {
  SupportBasis basis;
  std::optional<Mono> negative_diagonal;
};
PrunedBasis prune_basis(const Poly& f, SupportBasis basis);

// sum weight * root^2
struct WeightedSquare {
  Rat weight;  // > 0
  Poly root;
};

// Linear functional on monomials whose moment matrix over `basis` is PSD and
// whose value on the target is negative.
struct DualWitness {
  std::vector<Mono> basis;
  std::map<Mono, Rat, GrlexDesc> values;

  Rat apply(const Poly& p) const;
  RatMatrix moment_matrix() const;
};

enum class SosKind { Decomposition, NotSos, Inconclusive };

struct SosCertificate {
  SosKind kind = SosKind::Inconclusive;
  std::vector<WeightedSquare> squares;
  std::optional<DualWitness> dual;
  std::string method;

  std::size_t length() const { return squares.size(); }
};

struct SosOptions {
  double tolerance = 1e-9;
  long max_iterations = 100000;
  Int denominator_bound = Int(1) << 32;
  // Try exact structural decompositions (scaled squares, (y - x^r)^2 g + c) before Gram search.
  bool use_structure = true;
};

const char* to_string(SosKind k);

Poly sum_of_squares(const std::vector<WeightedSquare>& squares, int nvars = 2);
bool verify_decomposition(const Poly& target, const std::vector<WeightedSquare>& squares);
// Exact check of a not-SOS witness; `why` receives the first failed condition.
bool verify_dual(const Poly& target, const DualWitness& w, std::string* why = nullptr);
// Re-verifies whichever certificate is attached. Inconclusive never verifies.
bool verify_certificate(const Poly& target, const SosCertificate& cert);

// Folds rational-square weights into the roots and drops zero roots.
std::vector<WeightedSquare> normalize_squares(std::vector<WeightedSquare> squares);

SosCertificate decompose_sos(const Poly& f, const SosOptions& opts = {});
std::optional<DualWitness> certify_not_sos(const Poly& f, const SosOptions& opts = {});

// The numeric-then-exact Gram route alone, on a fixed basis.
SosCertificate gram_decompose(const Poly& f, const SupportBasis& basis, const SosOptions& opts);

// Points tried for evaluation witnesses; deterministic.
std::vector<std::array<Rat, 2>> sample_points();

}  // namespace pythlab

#pragma once

#include <array>
#include <optional>
#include <string>

#include "pythlab/linmap.hpp"
#include "pythlab/poly.hpp"
#include "pythlab/sos.hpp"

namespace pythlab {

bool is_strictly_admissible(const Poly& f);

// Rational direction P != 0 with h(P) > 0 among the first `budget` primitive integer
// directions ordered by height. h must be homogeneous and nonzero.
std::optional<std::array<Rat, 2>> positive_direction(const Poly& h, long budget = 10000);

struct WitnessBudget {
  long height = 8;           // entry bound for the exhaustive integer-matrix grid
  long directions = 10000;   // positive_direction budget
  SosOptions sos;
};

struct SearchReport {
  long directions_tried = 0;
  long matrices_tried = 0;
  long height = 0;
  bool certificate_attempted = false;
};

enum class AdmissibilityKind { StrictlyAdmissible, AdmissibleWith, NotAdmissible, Unknown };

struct AdmissibilityVerdict {
  AdmissibilityKind kind = AdmissibilityKind::Unknown;
  std::optional<LinMap> witness;                  // AdmissibleWith
  std::vector<WeightedSquare> certificate;        // NotAdmissible: sum == -f
  SearchReport report;
  std::string stage;                              // which search stage decided
};

const char* to_string(AdmissibilityKind k);

// Exact SOS decomposition of -f, when one is found.
std::optional<std::vector<WeightedSquare>> certify_not_admissible(const Poly& f, const SosOptions& opts = {});

// Throws std::invalid_argument unless f is non-constant with f(0,0) == 0.
AdmissibilityVerdict find_witness(const Poly& f, const WitnessBudget& budget = {});

// Re-checks the attached evidence exactly.
bool verify_verdict(const Poly& f, const AdmissibilityVerdict& v);

}  // namespace pythlab

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pythlab/admissibility.hpp"
#include "pythlab/polyops.hpp"
#include "pythlab/sos.hpp"

namespace pythlab {

enum class VerdictKind { Infinite, Finite, Unknown };
enum class VerdictRule { Main, SosLength, NegSos, SquareDegenerate, None };

// Pythagoras number of R[x,y,z]/(z^2 - f) with the evidence for the rule that fired.
struct SurfaceVerdict {
  VerdictKind kind = VerdictKind::Unknown;
  VerdictRule rule = VerdictRule::None;
  std::optional<ScaledSquare> square_root;            // SquareDegenerate
  std::vector<WeightedSquare> decomposition;          // SosLength: of f; NegSos: of -f
  std::optional<AdmissibilityVerdict> admissibility;  // Main
  // Unknown only: "a" (positive, not SOS), "b" (negative, -f not SOS), "c" (indefinite),
  // from sampled signs; empty when no sign was observed.
  std::string problem_case;
  std::string note;
};

struct ClassifyBudget {
  WitnessBudget witness;
  SosOptions sos;
};

const char* to_string(VerdictKind k);
const char* to_string(VerdictRule r);

SurfaceVerdict classify_surface(const Poly& f, const ClassifyBudget& budget = {});

// Re-checks the evidence of a verdict against f exactly.
bool verify_surface_verdict(const Poly& f, const SurfaceVerdict& v);

// False only when f and f o M receive opposite definite verdicts.
bool classify_invariance_check(const Poly& f, const LinMap& m, const ClassifyBudget& budget = {});

enum class DuValFamily { A, D, E6, E7, E8 };

struct DuValSpec {
  DuValFamily family = DuValFamily::A;
  unsigned n = 1;  // used by A (n >= 1) and D (n >= 4)
};

struct DuValResult {
  Poly equation;  // in x, y, z
  Poly f;         // equation == z^2 - f
  SurfaceVerdict verdict;
};

// Throws std::invalid_argument on an invalid index.
Poly du_val_equation(const DuValSpec& spec);
DuValResult du_val(const DuValSpec& spec, const ClassifyBudget& budget = {});
// "A3", "D5", "E6", ...
DuValSpec parse_du_val(const std::string& family, unsigned n = 0);
std::string to_string(const DuValSpec& spec);

// f with c z^2 + r(x, y) == c (z^2 - f). Throws std::invalid_argument for other shapes.
Poly surface_to_f(const Poly& surface);

}  // namespace pythlab

#include "pythlab/classify.hpp"

#include <stdexcept>

#include "pythlab/parser.hpp"

namespace pythlab {

namespace {

const char* kConjecture =
    "expected infinite for cases a and c and finite for case b; not decided by any implemented rule";

std::string sign_case(const Poly& f) {
  bool pos = false, neg = false;
  for (const auto& p : sample_points()) {
    int s = sgn(f.eval(std::span<const Rat>(p.data(), 2)));
    pos |= s > 0;
    neg |= s < 0;
  }
  if (pos && neg) return "c";
  if (pos) return "a";
  if (neg) return "b";
  return "";
}

bool witness_applicable(const Poly& f) {
  return !(f.nvars() > 2 && f.uses_var(2)) && !f.is_constant() && sgn(f.constant_term()) == 0;
}

}  // namespace

const char* to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::Infinite: return "Infinite";
    case VerdictKind::Finite: return "Finite";
    case VerdictKind::Unknown: return "Unknown";
  }
  return "?";
}

const char* to_string(VerdictRule r) {
  switch (r) {
    case VerdictRule::Main: return "Main";
    case VerdictRule::SosLength: return "SosLength";
    case VerdictRule::NegSos: return "NegSos";
    case VerdictRule::SquareDegenerate: return "SquareDegenerate";
    case VerdictRule::None: return "None";
  }
  return "?";
}

SurfaceVerdict classify_surface(const Poly& f, const ClassifyBudget& budget) {
  if (f.nvars() > 2 && f.uses_var(2)) throw std::invalid_argument("classify_surface: f must not involve z");
  SurfaceVerdict v;
  if (f.is_zero()) {
    v.note = "f is zero";
    return v;
  }
  if (auto sq = real_square_root(f)) {
    v.kind = VerdictKind::Infinite;
    v.rule = VerdictRule::SquareDegenerate;
    v.square_root = std::move(sq);
    return v;
  }
  SosCertificate pos = decompose_sos(f, budget.sos);
  if (pos.kind == SosKind::Decomposition) {
    v.kind = VerdictKind::Infinite;
    v.rule = VerdictRule::SosLength;
    v.decomposition = std::move(pos.squares);
    v.note = "sum of " + std::to_string(v.decomposition.size()) + " squares, not a real square";
    return v;
  }
  std::optional<std::vector<WeightedSquare>> neg;
  if (witness_applicable(f)) {
    AdmissibilityVerdict a = find_witness(f, budget.witness);
    if (a.kind == AdmissibilityKind::StrictlyAdmissible || a.kind == AdmissibilityKind::AdmissibleWith) {
      v.kind = VerdictKind::Infinite;
      v.rule = VerdictRule::Main;
      v.admissibility = std::move(a);
      return v;
    }
    if (a.kind == AdmissibilityKind::NotAdmissible) neg = std::move(a.certificate);
    else if (a.report.certificate_attempted) neg = std::vector<WeightedSquare>{};
  }
  if (!neg) neg = certify_not_admissible(f, budget.sos);
  if (neg && !neg->empty()) {
    v.kind = VerdictKind::Finite;
    v.rule = VerdictRule::NegSos;
    v.decomposition = std::move(*neg);
    return v;
  }
  v.problem_case = sign_case(f);
  v.note = kConjecture;
  return v;
}

bool verify_surface_verdict(const Poly& f, const SurfaceVerdict& v) {
  switch (v.rule) {
    case VerdictRule::SquareDegenerate:
      return v.kind == VerdictKind::Infinite && v.square_root && sgn(v.square_root->scale) > 0 &&
             f == v.square_root->scale * v.square_root->root.pow(2);
    case VerdictRule::SosLength:
      return v.kind == VerdictKind::Infinite && verify_decomposition(f, v.decomposition) && !real_square_root(f);
    case VerdictRule::Main:
      return v.kind == VerdictKind::Infinite && v.admissibility && !real_square_root(f) &&
             (v.admissibility->kind == AdmissibilityKind::StrictlyAdmissible ||
              v.admissibility->kind == AdmissibilityKind::AdmissibleWith) &&
             verify_verdict(f, *v.admissibility);
    case VerdictRule::NegSos:
      return v.kind == VerdictKind::Finite && !f.is_zero() && verify_decomposition(-f, v.decomposition);
    case VerdictRule::None: return v.kind == VerdictKind::Unknown;
  }
  return false;
}

bool classify_invariance_check(const Poly& f, const LinMap& m, const ClassifyBudget& budget) {
  VerdictKind a = classify_surface(f, budget).kind;
  if (a == VerdictKind::Unknown) return true;
  VerdictKind b = classify_surface(compose_linear(f, m), budget).kind;
  return b == VerdictKind::Unknown || a == b;
}

Poly du_val_equation(const DuValSpec& spec) {
  const Poly x = Poly::var(0, 3), y = Poly::var(1, 3), z = Poly::var(2, 3);
  const Poly z2 = z * z;
  switch (spec.family) {
    case DuValFamily::A:
      if (spec.n < 1) throw std::invalid_argument("A_n needs n >= 1");
      return z2 + x * x + y.pow(spec.n + 1);
    case DuValFamily::D:
      if (spec.n < 4) throw std::invalid_argument("D_n needs n >= 4");
      return z2 + x * x * y + y.pow(spec.n - 1);
    case DuValFamily::E6: return z2 + x.pow(3) + y.pow(4);
    case DuValFamily::E7: return z2 + x.pow(3) + x * y * y;
    case DuValFamily::E8: return z2 + x.pow(3) + y.pow(5);
  }
  throw std::invalid_argument("unknown du Val family");
}

DuValResult du_val(const DuValSpec& spec, const ClassifyBudget& budget) {
  DuValResult out;
  out.equation = du_val_equation(spec);
  out.f = surface_to_f(out.equation);
  out.verdict = classify_surface(out.f, budget);
  return out;
}

DuValSpec parse_du_val(const std::string& family, unsigned n) {
  std::string fam = family;
  if (fam.size() > 1 && (fam[0] == 'A' || fam[0] == 'D')) {
    std::size_t used = 0;
    unsigned long idx = 0;
    try {
      idx = std::stoul(fam.substr(1), &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad du Val index in '" + family + "'");
    }
    if (used != fam.size() - 1) throw std::invalid_argument("bad du Val index in '" + family + "'");
    n = static_cast<unsigned>(idx);
    fam = fam.substr(0, 1);
  }
  DuValSpec spec;
  if (fam == "A") spec = {DuValFamily::A, n};
  else if (fam == "D") spec = {DuValFamily::D, n};
  else if (fam == "E6") spec = {DuValFamily::E6, 0};
  else if (fam == "E7") spec = {DuValFamily::E7, 0};
  else if (fam == "E8") spec = {DuValFamily::E8, 0};
  else throw std::invalid_argument("unknown du Val family '" + family + "'");
  du_val_equation(spec);
  return spec;
}

std::string to_string(const DuValSpec& spec) {
  switch (spec.family) {
    case DuValFamily::A: return "A" + std::to_string(spec.n);
    case DuValFamily::D: return "D" + std::to_string(spec.n);
    case DuValFamily::E6: return "E6";
    case DuValFamily::E7: return "E7";
    case DuValFamily::E8: return "E8";
  }
  return "?";
}

Poly surface_to_f(const Poly& surface) {
  Poly rest = Poly::zero(3);
  Rat c = 0;
  for (const auto& [m, coef] : surface.terms()) {
    if (m[2] == 0) rest.add_term(m, coef);
    else if (m[2] == 2 && m[0] == 0 && m[1] == 0) c = coef;
    else throw std::invalid_argument("surface must have the form c*z^2 + r(x, y); found term " +
                                     to_string(Poly::monomial(m, coef, 3)));
  }
  if (sgn(c) == 0) throw std::invalid_argument("surface has no z^2 term");
  return (-rest / c).with_nvars(2);
}

}  // namespace pythlab

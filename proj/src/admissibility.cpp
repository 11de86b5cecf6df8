#include "pythlab/admissibility.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <tuple>

#include "pythlab/parallel.hpp"
#include "pythlab/polyops.hpp"

namespace pythlab {

namespace {

using IntVec = std::array<long, 2>;

// Primitive integer vectors of max-norm h in a fixed order: smaller |p|+|q| first,
// then upper half-plane before lower, right before left, then by |q|.
std::vector<IntVec> directions_of_height(long h) {
  std::vector<IntVec> out;
  for (long p = -h; p <= h; ++p)
    for (long q = -h; q <= h; ++q)
      if (std::max(std::labs(p), std::labs(q)) == h && std::gcd(p, q) == 1) out.push_back({p, q});
  std::sort(out.begin(), out.end(), [](const IntVec& a, const IntVec& b) {
    auto key = [](const IntVec& v) { return std::make_tuple(std::labs(v[0]) + std::labs(v[1]), v[1] < 0, v[0] < 0, std::labs(v[1])); };
    return key(a) < key(b);
  });
  return out;
}

// Up to sign.
std::vector<IntVec> primitive_columns(long height) {
  std::vector<IntVec> out;
  for (long h = 1; h <= height; ++h)
    for (const auto& v : directions_of_height(h))
      if (v[0] > 0 || (v[0] == 0 && v[1] > 0)) out.push_back(v);
  return out;
}

void require_witness_precondition(const Poly& f) {
  if (f.nvars() > 2 && f.uses_var(2)) throw std::invalid_argument("admissibility: bivariate polynomial expected");
  if (f.is_constant()) throw std::invalid_argument("admissibility: polynomial must be non-constant");
  if (sgn(f.constant_term()) != 0) throw std::invalid_argument("admissibility: f(0,0) must vanish");
}

// Invertible integer M with M e2 = P.
LinMap map_second_axis_to(const std::array<Rat, 2>& p) {
  if (sgn(p[1]) != 0) return LinMap(1, p[0], 0, p[1]);
  return LinMap(0, p[0], 1, 0);
}

}  // namespace

const char* to_string(AdmissibilityKind k) {
  switch (k) {
    case AdmissibilityKind::StrictlyAdmissible: return "StrictlyAdmissible";
    case AdmissibilityKind::AdmissibleWith: return "AdmissibleWith";
    case AdmissibilityKind::NotAdmissible: return "NotAdmissible";
    case AdmissibilityKind::Unknown: return "Unknown";
  }
  return "?";
}

bool is_strictly_admissible(const Poly& f) {
  if (f.nvars() > 2 && f.uses_var(2)) return false;
  if (f.is_constant() || sgn(f.constant_term()) != 0) return false;
  LeadingBlock lb = leading_block(f);
  if (lb.b % 2 == 1 || lb.d % 2 == 1) return true;
  return sgn(lb.alpha) > 0;
}

std::optional<std::array<Rat, 2>> positive_direction(const Poly& h, long budget) {
  if (h.is_zero()) throw std::invalid_argument("positive_direction: zero form");
  if (!h.is_homogeneous()) throw std::invalid_argument("positive_direction: form must be homogeneous");
  if (h.nvars() > 2 && h.uses_var(2)) throw std::invalid_argument("positive_direction: bivariate form expected");
  long tried = 0;
  for (long height = 1; tried < budget; ++height) {
    for (const auto& v : directions_of_height(height)) {
      if (tried++ >= budget) break;
      std::array<Rat, 2> p{Rat(v[0]), Rat(v[1])};
      if (sgn(h.eval(std::span<const Rat>(p.data(), 2))) > 0) return p;
    }
  }
  return std::nullopt;
}

std::optional<std::vector<WeightedSquare>> certify_not_admissible(const Poly& f, const SosOptions& opts) {
  SosCertificate cert = decompose_sos(-f, opts);
  if (cert.kind != SosKind::Decomposition || !verify_decomposition(-f, cert.squares)) return std::nullopt;
  return cert.squares;
}

AdmissibilityVerdict find_witness(const Poly& f, const WitnessBudget& budget) {
  require_witness_precondition(f);
  AdmissibilityVerdict v;
  if (is_strictly_admissible(f)) {
    v.kind = AdmissibilityKind::StrictlyAdmissible;
    v.stage = "definition";
    return v;
  }
  ++v.report.matrices_tried;
  if (is_strictly_admissible(compose_linear(f, LinMap::swap()))) {
    v.kind = AdmissibilityKind::AdmissibleWith;
    v.witness = LinMap::swap();
    v.stage = "swap";
    return v;
  }
  Poly h = top_form(f);
  if (auto p = positive_direction(h, budget.directions)) {
    LinMap m = map_second_axis_to(*p);
    ++v.report.matrices_tried;
    if (is_strictly_admissible(compose_linear(f, m))) {
      v.kind = AdmissibilityKind::AdmissibleWith;
      v.witness = m;
      v.stage = "top-form direction";
      return v;
    }
  }
  v.report.directions_tried = budget.directions;
  // No positive direction of the top form: SOS certificate for -f before the grid.
  v.report.certificate_attempted = true;
  if (auto cert = certify_not_admissible(f, budget.sos)) {
    v.kind = AdmissibilityKind::NotAdmissible;
    v.certificate = std::move(*cert);
    v.stage = "-f is a sum of squares";
    return v;
  }
  // Primitive columns up to sign.
  auto cols = primitive_columns(budget.height);
  std::vector<std::pair<std::size_t, std::size_t>> candidates;
  for (long h2 = 1; h2 <= budget.height; ++h2)
    for (std::size_t i = 0; i < cols.size(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j) {
        long hi = std::max(std::labs(cols[i][0]), std::labs(cols[i][1]));
        long hj = std::max(std::labs(cols[j][0]), std::labs(cols[j][1]));
        if (std::max(hi, hj) != h2) continue;
        if (cols[i][0] * cols[j][1] - cols[j][0] * cols[i][1] == 0) continue;
        candidates.emplace_back(i, j);
      }
  auto make = [&](std::size_t k) {
    const auto& a = cols[candidates[k].first];
    const auto& b = cols[candidates[k].second];
    return LinMap(Rat(a[0]), Rat(b[0]), Rat(a[1]), Rat(b[1]));
  };
  auto hit = find_first(candidates.size(), [&](std::size_t k) { return is_strictly_admissible(compose_linear(f, make(k))); });
  v.report.height = budget.height;
  v.report.matrices_tried += static_cast<long>(hit ? *hit + 1 : candidates.size());
  if (hit) {
    v.kind = AdmissibilityKind::AdmissibleWith;
    v.witness = make(*hit);
    v.stage = "matrix grid";
    return v;
  }
  v.kind = AdmissibilityKind::Unknown;
  v.stage = "search budget exhausted";
  return v;
}

bool verify_verdict(const Poly& f, const AdmissibilityVerdict& v) {
  switch (v.kind) {
    case AdmissibilityKind::StrictlyAdmissible: return is_strictly_admissible(f);
    case AdmissibilityKind::AdmissibleWith: return v.witness && is_strictly_admissible(compose_linear(f, *v.witness));
    case AdmissibilityKind::NotAdmissible:
      return !v.certificate.empty() && verify_decomposition(-f, v.certificate) && !f.is_constant() &&
             sgn(f.constant_term()) == 0;
    case AdmissibilityKind::Unknown: return true;
  }
  return false;
}

}  // namespace pythlab

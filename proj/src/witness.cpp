#include "pythlab/witness.hpp"

#include <numeric>
#include <string>

#include "pythlab/admissibility.hpp"
#include "pythlab/polyops.hpp"

namespace pythlab {

unsigned default_scan_bound(const Poly& f, const std::vector<unsigned>& prior) {
  return std::accumulate(prior.begin(), prior.end(), 0u) + static_cast<unsigned>(std::max(f.degree(), 0)) + 64u;
}

bool exponent_valid(const Poly& f, const std::vector<unsigned>& prior, unsigned r) {
  unsigned floor = prior.empty() ? static_cast<unsigned>(std::max(f.degree(), 0))
                                 : std::accumulate(prior.begin(), prior.end(), 0u);
  if (r <= floor) return false;
  Poly s = substitute_power(f, r);
  if (s.is_constant() || sgn(s.constant_term()) != 0) return false;
  return s.degree() % 2 == 1 || sgn(s.leading_coeff()) > 0;
}

unsigned next_exponent(const Poly& f, const std::vector<unsigned>& prior, unsigned scan_bound) {
  if (scan_bound == 0) scan_bound = default_scan_bound(f, prior);
  unsigned start = prior.empty() ? static_cast<unsigned>(std::max(f.degree(), 0)) + 1
                                 : std::accumulate(prior.begin(), prior.end(), 0u) + 1;
  for (unsigned r = start; r <= scan_bound; ++r)
    if (exponent_valid(f, prior, r)) return r;
  throw FamilyError("no valid exponent up to " + std::to_string(scan_bound) + "; is f strictly admissible?");
}

Poly cldr_step(const Poly& g, unsigned r) {
  if (2 * static_cast<long>(r) <= g.degree())
    throw std::invalid_argument("cldr_step: need 2r > deg g (r = " + std::to_string(r) + ", deg g = " +
                                std::to_string(g.degree()) + ")");
  return g * binomial(r).pow(2) + Poly(1);
}

AssocSequence build_family(const Poly& f, std::size_t m) {
  if (m == 0) throw std::invalid_argument("build_family: m must be positive");
  if (!is_strictly_admissible(f)) throw std::invalid_argument("build_family: f must be strictly admissible");
  AssocSequence seq;
  seq.base = f.with_nvars(2);
  seq.polys.push_back(Poly(1));
  while (seq.polys.size() < m) {
    unsigned r = next_exponent(seq.base, seq.exps);
    seq.exps.push_back(r);
    seq.polys.push_back(cldr_step(seq.polys.back(), r));
  }
  return seq;
}

std::vector<Poly> constructive_decomposition(const AssocSequence& seq, std::size_t n) {
  if (n == 0 || n > seq.polys.size())
    throw std::out_of_range("constructive_decomposition: index " + std::to_string(n) + " outside 1.." +
                            std::to_string(seq.polys.size()));
  std::vector<Poly> parts{Poly(1)};
  for (std::size_t k = 2; k <= n; ++k) {
    Poly w = binomial(seq.exps[k - 2]);
    for (auto& p : parts) p *= w;
    parts.push_back(Poly(1));
  }
  return parts;
}

Json family_to_json(const AssocSequence& seq) {
  Json j;
  j["f"] = poly_to_json(seq.base);
  j["r"] = seq.exps;
  j["F"] = Json::array();
  j["decompositions"] = Json::array();
  for (std::size_t n = 1; n <= seq.polys.size(); ++n) {
    j["F"].push_back(poly_to_json(seq.polys[n - 1]));
    Json parts = Json::array();
    for (const auto& p : constructive_decomposition(seq, n)) parts.push_back(poly_to_json(p));
    j["decompositions"].push_back(parts);
  }
  return j;
}

AssocSequence family_from_json(const Json& j) {
  AssocSequence seq;
  seq.base = poly_from_json(j.at("f"));
  seq.exps = j.at("r").get<std::vector<unsigned>>();
  for (const auto& p : j.at("F")) seq.polys.push_back(poly_from_json(p));
  if (seq.polys.empty() || seq.exps.size() + 1 != seq.polys.size())
    throw std::invalid_argument("family: need one more polynomial than exponents");
  return seq;
}

}  // namespace pythlab

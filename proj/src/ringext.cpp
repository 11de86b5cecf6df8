#include "pythlab/ringext.hpp"

#include <algorithm>
#include <map>

#include "pythlab/gram.hpp"
#include "pythlab/parser.hpp"
#include "pythlab/polyops.hpp"

namespace pythlab {

namespace {

void require_same_modulus(const RingElem& u, const RingElem& v) {
  if (!(u.modulus() == v.modulus())) throw std::invalid_argument("ring elements have different moduli");
}

std::vector<Mono> monomials_up_to(int deg) {
  std::vector<Mono> out;
  for (int d = 0; d <= deg; ++d)
    for (int i = d; i >= 0; --i) out.push_back(Mono{static_cast<uint32_t>(i), static_cast<uint32_t>(d - i), 0});
  return out;
}

Poly combine(const std::vector<Mono>& basis, const std::vector<Rat>& coeffs, std::size_t offset) {
  Poly p;
  for (std::size_t i = 0; i < basis.size(); ++i) p.add_term(basis[i], coeffs[offset + i]);
  return p;
}

// Scaled roots s_k with sum s_k^2 == w, folded into (f, g) pairs.
bool append_weighted(std::vector<PolyPair>& out, const Rat& w, const Poly& f, const Poly& g, std::size_t k) {
  if (out.size() >= k) return false;
  auto split = rational_square_split(w, k - out.size());
  if (!split) return false;
  for (const Rat& s : *split) out.emplace_back(f * s, g * s);
  return true;
}

std::optional<std::vector<PolyPair>> pairs_from_squares(const std::vector<WeightedSquare>& squares, bool modulus_side,
                                                        std::size_t k) {
  std::vector<PolyPair> out;
  for (const auto& sq : normalize_squares(squares)) {
    Poly zero;
    bool ok = modulus_side ? append_weighted(out, sq.weight, zero, sq.root, k)
                           : append_weighted(out, sq.weight, sq.root, zero, k);
    if (!ok) return std::nullopt;
  }
  return out;
}

struct JointLayout {
  std::vector<Mono> fbasis, gbasis;
  std::size_t size() const { return fbasis.size() + gbasis.size(); }
};

// Gram matrix over (fbasis, sqrt(modulus) gbasis): the diagonal blocks must reproduce the
// target, the off-diagonal block must cancel.
GramProblem joint_problem(const JointLayout& lay, const Poly& target, const Poly& modulus,
                          std::vector<Mono>* unreachable) {
  const std::size_t a = lay.fbasis.size();
  GramProblem prob(lay.size());
  std::map<Mono, std::vector<std::pair<std::size_t, Rat>>, GrlexDesc> sym, cross;
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t j = i; j < a; ++j)
      sym[lay.fbasis[i] * lay.fbasis[j]].emplace_back(prob.slot(i, j), Rat(i == j ? 1 : 2));
  for (std::size_t i = 0; i < lay.gbasis.size(); ++i)
    for (std::size_t j = i; j < lay.gbasis.size(); ++j)
      for (const auto& [m, c] : modulus.terms())
        sym[m * lay.gbasis[i] * lay.gbasis[j]].emplace_back(prob.slot(a + i, a + j), c * (i == j ? 1 : 2));
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t j = 0; j < lay.gbasis.size(); ++j)
      cross[lay.fbasis[i] * lay.gbasis[j]].emplace_back(prob.slot(i, a + j), Rat(1));
  for (const auto& [m, c] : target.terms())
    if (!sym.count(m) && unreachable) unreachable->push_back(m);
  for (auto& [m, terms] : sym) {
    std::map<std::size_t, Rat> merged;
    for (auto& [s, c] : terms) merged[s] += c;
    GramProblem::Constraint con;
    for (auto& [s, c] : merged)
      if (sgn(c) != 0) con.terms.emplace_back(s, c);
    con.rhs = target.coeff(m);
    prob.add_constraint(std::move(con));
  }
  for (auto& [m, terms] : cross) prob.add_constraint({std::move(terms), Rat(0)});
  return prob;
}

// Basis indices whose diagonal entry is forced to zero by a constraint of diagonal slots of one sign.
std::vector<bool> forced_zero(const GramProblem& prob) {
  std::vector<bool> out(prob.dim(), false);
  for (const auto& con : prob.constraints()) {
    if (sgn(con.rhs) != 0 || con.terms.empty()) continue;
    int sign = 0;
    bool ok = true;
    for (const auto& [s, c] : con.terms) {
      const auto& [i, j] = prob.slot_position(s);
      if (i != j || (sign != 0 && sgn(c) != sign)) ok = false;
      sign = sgn(c);
    }
    if (ok)
      for (const auto& [s, c] : con.terms) out[prob.slot_position(s).first] = true;
  }
  return out;
}

void prune_layout(JointLayout& lay, const Poly& target, const Poly& modulus) {
  for (;;) {
    std::vector<bool> drop = forced_zero(joint_problem(lay, target, modulus, nullptr));
    if (std::find(drop.begin(), drop.end(), true) == drop.end()) return;
    const std::size_t a = lay.fbasis.size();
    JointLayout next;
    for (std::size_t i = 0; i < a; ++i)
      if (!drop[i]) next.fbasis.push_back(lay.fbasis[i]);
    for (std::size_t i = 0; i < lay.gbasis.size(); ++i)
      if (!drop[a + i]) next.gbasis.push_back(lay.gbasis[i]);
    lay = std::move(next);
  }
}

std::optional<RingRepresentation> joint_search(const Poly& target, const Poly& modulus, std::size_t k,
                                               const JointLayout& lay, const SearchOptions& opts, std::string* note) {
  std::vector<Mono> unreachable;
  GramProblem prob = joint_problem(lay, target, modulus, &unreachable);
  if (!unreachable.empty()) {
    if (note) *note = "target monomial " + to_string(Poly::monomial(unreachable.front(), 1)) + " is unreachable";
    return std::nullopt;
  }
  AffineProjector proj(prob);
  if (!proj.project_exact(RatMatrix(prob.dim(), prob.dim()))) {
    if (note) *note = "coefficient system is inconsistent";
    return std::nullopt;
  }
  NumericOptions nopts{opts.sos.tolerance, opts.sos.max_iterations, 0.0};
  NumericResult res = alternating_projections(prob, proj, nopts);
  auto q = round_to_psd(prob, proj, res.affine_point, opts.denominator_bound);
  if (!q) {
    if (note) *note = res.converged ? "rounding failed at every denominator" : "no PSD Gram point found numerically";
    return std::nullopt;
  }
  PsdFactorization fac = ldlt_psd(*q);
  RingRepresentation rep{modulus, {}, target, {}, true};
  for (const auto& row : fac.rows) {
    if (!append_weighted(rep.pairs, row.weight, combine(lay.fbasis, row.coeffs, 0),
                         combine(lay.gbasis, row.coeffs, lay.fbasis.size()), k)) {
      if (note) *note = "Gram point has rank above " + std::to_string(k);
      return std::nullopt;
    }
  }
  if (rep.pairs.empty()) rep.pairs.emplace_back(Poly(), Poly());
  if (!verify_representation(rep)) {
    if (note) *note = "rounded representation failed exact verification";
    return std::nullopt;
  }
  return rep;
}

}  // namespace

RingElem::RingElem(Poly h1, Poly h2, Poly modulus)
    : h1_(std::move(h1)), h2_(std::move(h2)), modulus_(std::move(modulus)) {
  if (real_square_root(modulus_))
    throw std::invalid_argument("modulus " + to_string(modulus_) +
                                " is a square; R[x,y,sqrt f] is then isomorphic to R[x,y] x R[x,y]");
}

RingElem ring_mul(const RingElem& u, const RingElem& v) {
  require_same_modulus(u, v);
  return RingElem(u.h1() * v.h1() + u.modulus() * u.h2() * v.h2(), u.h1() * v.h2() + u.h2() * v.h1(), u.modulus());
}

RingElem ring_add(const RingElem& u, const RingElem& v) {
  require_same_modulus(u, v);
  return RingElem(u.h1() + v.h1(), u.h2() + v.h2(), u.modulus());
}

SquareSum expand_square_sum(const std::vector<PolyPair>& pairs, const Poly& modulus) {
  if (pairs.empty()) throw std::invalid_argument("expand_square_sum: empty pair list");
  Poly ff, gg, fg;
  for (const auto& [f, g] : pairs) {
    ff += f * f;
    gg += g * g;
    fg += f * g;
  }
  return {ff + modulus * gg, Rat(2) * fg};
}

RepresentationCheck verify_representation(const RingRepresentation& rep) {
  Poly ff, gg, fg;
  for (const auto& [f, g] : rep.pairs) {
    ff += f * f;
    gg += g * g;
    fg += f * g;
  }
  for (const auto& u : rep.unpaired) gg += u * u;
  RepresentationCheck out;
  Poly r = rep.target - ff - rep.modulus * gg;
  if (!r.is_zero()) {
    out.failed = "sum identity";
    out.residual = r;
    return out;
  }
  if (rep.cross_required && !fg.is_zero()) {
    out.failed = "cross identity";
    out.residual = fg;
    return out;
  }
  out.ok = true;
  return out;
}

RingRepresentation reduce_representation(const RingRepresentation& rep, const AssocSequence& seq,
                                         ReductionTrace* trace) {
  if (!(rep.modulus == seq.base)) throw ReductionError(0, "modulus differs from the family's base polynomial");
  auto check = verify_representation(rep);
  if (!check) throw ReductionError(0, "input " + check.failed + " fails, residual " + to_string(check.residual));
  std::size_t n = 0;
  for (std::size_t i = 1; i < seq.polys.size(); ++i)
    if (rep.target == seq.polys[i]) n = i + 1;
  if (n < 2) throw ReductionError(0, "target is not F_n for any n >= 2 of the family");
  const unsigned r = seq.exps[n - 2];
  const Poly& lower = seq.polys[n - 2];
  if (2 * static_cast<long>(r) <= lower.degree()) throw ReductionError(0, "family violates 2r > deg F_{n-1}");
  const std::size_t len = rep.pairs.size();

  // (1) restriction to the curve y = x^r
  Poly ss, tt;
  std::vector<Poly> s(len);
  for (std::size_t i = 0; i < len; ++i) {
    s[i] = substitute_power(rep.pairs[i].first, r);
    Poly t = substitute_power(rep.pairs[i].second, r);
    ss += s[i] * s[i];
    tt += t * t;
  }
  for (const auto& u : rep.unpaired) {
    Poly t = substitute_power(u, r);
    tt += t * t;
  }
  Poly restricted = ss + substitute_power(rep.modulus, r) * tt;
  if (!(restricted == Poly(1)))
    throw ReductionError(1, "restricted identity is " + to_string(restricted) + ", expected 1");

  // (2) constants and cofactors
  std::vector<Rat> a(len);
  std::vector<Poly> fq(len), gq(len), uq;
  Rat norm = 0;
  for (std::size_t i = 0; i < len; ++i) {
    if (!s[i].is_constant()) throw ReductionError(2, "f_" + std::to_string(i + 1) + " is not constant on the curve");
    a[i] = s[i].constant_term();
    norm += a[i] * a[i];
    auto fd = divide_binomial(rep.pairs[i].first - Poly(a[i]), r);
    auto gd = divide_binomial(rep.pairs[i].second, r);
    if (!gd.remainder.is_zero())
      throw ReductionError(2, "g_" + std::to_string(i + 1) + " is not divisible by y - x^" + std::to_string(r));
    fq[i] = fd.quotient;
    gq[i] = gd.quotient;
  }
  for (std::size_t j = 0; j < rep.unpaired.size(); ++j) {
    auto ud = divide_binomial(rep.unpaired[j], r);
    if (!ud.remainder.is_zero()) throw ReductionError(2, "unpaired term is not divisible by the binomial");
    uq.push_back(ud.quotient);
  }
  if (norm != 1) throw ReductionError(2, "constants satisfy sum a_i^2 = " + to_string(norm) + ", expected 1");

  // (3) orthogonal normalisation
  RatMatrix h = householder_to_last(a);
  std::vector<Poly> fr(len), gr(len);
  for (std::size_t i = 0; i < len; ++i)
    for (std::size_t j = 0; j < len; ++j) {
      if (sgn(h(i, j)) == 0) continue;
      fr[i] += h(i, j) * fq[j];
      gr[i] += h(i, j) * gq[j];
    }

  // (4) the last cofactor is divisible by the binomial and vanishes by degree
  auto last = divide_binomial(fr[len - 1], r);
  if (!last.remainder.is_zero())
    throw ReductionError(4, "last cofactor is not divisible by y - x^" + std::to_string(r));
  if (!fr[len - 1].is_zero())
    throw ReductionError(4, "last cofactor is nonzero, contradicting 2r > deg F_{n-1}");
  if (trace) *trace = ReductionTrace{n, r, a, h, last.quotient};

  // (5) representation of F_{n-1}
  RingRepresentation out{rep.modulus, {}, lower, uq, rep.cross_required};
  for (std::size_t i = 0; i + 1 < len; ++i) out.pairs.emplace_back(fr[i], gr[i]);
  if (!gr[len - 1].is_zero()) {
    out.unpaired.push_back(gr[len - 1]);
    out.cross_required = false;
  }
  auto ok = verify_representation(out);
  if (!ok) throw ReductionError(5, "output " + ok.failed + " fails, residual " + to_string(ok.residual));
  return out;
}

std::optional<Poly> divide_exact(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::invalid_argument("division by the zero polynomial");
  Poly rest = a, q;
  const Mono& lm = b.leading_mono();
  const Rat& lc = b.leading_coeff();
  while (!rest.is_zero()) {
    const Mono& m = rest.leading_mono();
    if (!lm.divides(m)) return std::nullopt;
    Poly t = Poly::monomial(m / lm, rest.leading_coeff() / lc, std::max(a.nvars(), b.nvars()));
    rest -= t * b;
    q += t;
  }
  return q;
}

std::optional<std::vector<Rat>> rational_square_split(const Rat& w, std::size_t max_terms) {
  if (sgn(w) < 0 || max_terms == 0) return std::nullopt;
  if (sgn(w) == 0) return std::vector<Rat>{};
  const Int den = w.get_den();
  const Int n = w.get_num() * den;  // w = n / den^2
  auto is_sq = [](const Int& v, Int& root) {
    if (sgn(v) < 0 || !mpz_perfect_square_p(v.get_mpz_t())) return false;
    root = sqrt(v);
    return true;
  };
  auto scaled = [&](std::initializer_list<Int> roots) {
    std::vector<Rat> out;
    for (const Int& x : roots)
      if (sgn(x) != 0) out.push_back(Rat(x, den));
    for (auto& q : out) q.canonicalize();
    return out;
  };
  Int r0;
  if (is_sq(n, r0)) return scaled({r0});
  const Int limit2 = Int(100000000), limit3 = Int(1000000);
  if (max_terms >= 2 && n <= limit2)
    for (Int x = 1; x * x <= n; ++x) {
      Int y;
      if (is_sq(n - x * x, y)) return scaled({x, y});
    }
  if (max_terms >= 3 && n <= limit3)
    for (Int x = 1; x * x <= n; ++x)
      for (Int y = x; x * x + y * y <= n; ++y) {
        Int z;
        if (is_sq(n - x * x - y * y, z)) return scaled({x, y, z});
      }
  if (max_terms >= 4 && n <= limit3)
    for (Int x = 1; x * x <= n; ++x)
      for (Int y = x; x * x + y * y <= n; ++y)
        for (Int z = y; x * x + y * y + z * z <= n; ++z) {
          Int t;
          if (is_sq(n - x * x - y * y - z * z, t)) return scaled({x, y, z, t});
        }
  return std::nullopt;
}

std::optional<RingRepresentation> search_representation(const Poly& target, const Poly& modulus, std::size_t k,
                                                        int deg_bound, const SearchOptions& opts,
                                                        std::string* note) {
  if (k == 0) throw std::invalid_argument("search_representation: k must be positive");
  if (deg_bound < 0 || deg_bound > 8) throw std::invalid_argument("search_representation: deg_bound must be in [0, 8]");
  if (target.is_zero()) return RingRepresentation{modulus, {{Poly(), Poly()}}, target, {}, true};
  const bool want_f = opts.shape != RepresentationShape::ModulusOnly;
  const bool want_g = opts.shape != RepresentationShape::PolynomialOnly;
  auto accept = [&](std::vector<PolyPair> pairs, const char* how) -> std::optional<RingRepresentation> {
    for (const auto& [f, g] : pairs)
      if (f.degree() > deg_bound || g.degree() > deg_bound) return std::nullopt;
    RingRepresentation rep{modulus, std::move(pairs), target, {}, true};
    if (!verify_representation(rep)) return std::nullopt;
    if (note) *note = how;
    return rep;
  };

  if (want_f && target.nvars() <= 2 && target.degree() % 2 == 0) {
    SosCertificate cert = decompose_sos(target, opts.sos);
    if (cert.kind == SosKind::Decomposition)
      if (auto pairs = pairs_from_squares(cert.squares, false, k))
        if (auto rep = accept(std::move(*pairs), "polynomial sum of squares")) return rep;
  }
  if (want_g)
    if (auto q = divide_exact(target, modulus); q && !q->is_zero() && q->degree() % 2 == 0) {
      SosCertificate cert = decompose_sos(*q, opts.sos);
      if (cert.kind == SosKind::Decomposition)
        if (auto pairs = pairs_from_squares(cert.squares, true, k))
          if (auto rep = accept(std::move(*pairs), "modulus times a sum of squares")) return rep;
    }

  JointLayout lay;
  if (want_f) lay.fbasis = monomials_up_to(deg_bound);
  if (want_g) lay.gbasis = monomials_up_to(deg_bound);
  prune_layout(lay, target, modulus);
  return joint_search(target, modulus, k, lay, opts, note);
}

Json representation_to_json(const RingRepresentation& rep) {
  Json j;
  j["modulus"] = poly_to_json(rep.modulus);
  j["target"] = poly_to_json(rep.target);
  j["pairs"] = Json::array();
  for (const auto& [f, g] : rep.pairs) j["pairs"].push_back({{"f", poly_to_json(f)}, {"g", poly_to_json(g)}});
  j["unpaired"] = Json::array();
  for (const auto& u : rep.unpaired) j["unpaired"].push_back(poly_to_json(u));
  j["cross_required"] = rep.cross_required;
  return j;
}

RingRepresentation representation_from_json(const Json& j) {
  RingRepresentation rep;
  rep.modulus = poly_from_json(j.at("modulus"));
  rep.target = poly_from_json(j.at("target"));
  for (const auto& p : j.at("pairs")) rep.pairs.emplace_back(poly_from_json(p.at("f")), poly_from_json(p.at("g")));
  if (j.contains("unpaired"))
    for (const auto& u : j.at("unpaired")) rep.unpaired.push_back(poly_from_json(u));
  rep.cross_required = j.value("cross_required", true);
  return rep;
}

}  // namespace pythlab

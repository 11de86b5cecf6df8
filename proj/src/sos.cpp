#include "pythlab/sos.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "pythlab/newton.hpp"
#include "pythlab/polyops.hpp"

namespace pythlab {

namespace {

Poly basis_poly(const std::vector<Mono>& basis, const std::vector<Rat>& coeffs, int nvars) {
  Poly p = Poly::zero(nvars);
  for (std::size_t i = 0; i < basis.size(); ++i) p.add_term(basis[i], coeffs[i]);
  return p;
}

double max_abs_coeff(const Poly& f) {
  double m = 0;
  for (const auto& [mono, c] : f.terms()) m = std::max(m, std::abs(c.get_d()));
  return m;
}

// Every monomial the functional must be defined on: basis products and target support.
std::vector<Mono> functional_domain(const std::vector<Mono>& basis, const Poly& target) {
  std::map<Mono, bool, GrlexDesc> seen;
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i; j < basis.size(); ++j) seen[basis[i] * basis[j]] = true;
  for (const auto& [m, c] : target.terms()) seen[m] = true;
  std::vector<Mono> out;
  for (const auto& [m, b] : seen) out.push_back(m);
  return out;
}

Rat mono_value(const Mono& m, const std::array<Rat, 2>& p) {
  Poly one = Poly::monomial(m, 1);
  return one.eval(std::span<const Rat>(p.data(), 2));
}

std::optional<DualWitness> evaluation_witness(const Poly& f) {
  if (f.nvars() > 2 && f.uses_var(2)) return std::nullopt;
  for (const auto& p : sample_points()) {
    double pd[2] = {p[0].get_d(), p[1].get_d()};
    double v = f.eval_double(pd);
    if (!(v < 1e-9 * std::max(1.0, std::abs(v)))) continue;
    if (sgn(f.eval(std::span<const Rat>(p.data(), 2))) >= 0) continue;
    DualWitness w;
    w.basis = half_newton_points(f);
    for (const auto& m : functional_domain(w.basis, f)) w.values[m] = mono_value(m, p);
    return w;
  }
  return std::nullopt;
}

std::optional<DualWitness> stray_witness(const GramSystem& sys) {
  if (sys.stray.empty()) return std::nullopt;
  DualWitness w;
  w.basis = sys.basis.monos;
  for (const auto& m : functional_domain(w.basis, sys.target)) w.values[m] = 0;
  const Mono& m = sys.stray.front();
  w.values[m] = sgn(sys.target.coeff(m)) > 0 ? Rat(-1) : Rat(1);
  return w;
}

std::optional<DualWitness> quick_refutation(const Poly& f, PrunedBasis* pruned_out, std::string* method) {
  if (auto w = evaluation_witness(f)) {
    *method = "negative value at a sample point";
    return w;
  }
  PrunedBasis pruned = prune_basis(f, SupportBasis{half_newton_points(f)});
  if (pruned_out) *pruned_out = pruned;
  if (pruned.negative_diagonal) {
    DualWitness w;
    w.basis = pruned.basis.monos;
    for (const auto& m : functional_domain(w.basis, f)) w.values[m] = 0;
    const Mono& root = *pruned.negative_diagonal;
    w.values[root * root] = 1;
    *method = "Gram diagonal entry forced negative";
    return w;
  }
  GramSystem sys(f, pruned.basis);
  *method = "monomial outside basis products";
  return stray_witness(sys);
}

std::vector<WeightedSquare> squares_from_factor(const PsdFactorization& fac, const std::vector<Mono>& basis,
                                                int nvars) {
  std::vector<WeightedSquare> out;
  for (const auto& row : fac.rows) out.push_back({row.weight, basis_poly(basis, row.coeffs, nvars)});
  return normalize_squares(std::move(out));
}

// Unique Gram matrix (every product class is a single slot).
bool gram_is_unique(const GramSystem& sys) {
  return std::all_of(sys.classes.begin(), sys.classes.end(), [](const auto& kv) { return kv.second.size() == 1; });
}

RatMatrix unique_gram(const GramSystem& sys) {
  const std::size_t n = sys.basis.monos.size();
  RatMatrix q(n, n);
  for (const auto& [m, slots] : sys.classes) {
    auto [i, j] = slots.front();
    Rat v = sys.target.coeff(m);
    if (i != j) v /= 2;
    q(i, j) = q(j, i) = v;
  }
  return q;
}

// Rational direction c with c^T Q c < 0 for the unique Gram matrix Q, as the
// functional L(b_i b_j) = c_i c_j.
std::optional<DualWitness> unique_gram_witness(const GramSystem& sys, const RatMatrix& q) {
  const auto n = static_cast<Eigen::Index>(q.rows());
  Eigen::MatrixXd qd(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) qd(i, j) = q(static_cast<std::size_t>(i), static_cast<std::size_t>(j)).get_d();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(qd);
  Eigen::VectorXd v = es.eigenvectors().col(0);
  double scale = v.cwiseAbs().maxCoeff();
  if (scale == 0) return std::nullopt;
  for (const Int& den : denominator_ladder(Int(1) << 32)) {
    std::vector<Rat> c(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) c[static_cast<std::size_t>(i)] = approximate(v(i) / scale, den);
    Rat val = 0;
    for (std::size_t i = 0; i < c.size(); ++i)
      for (std::size_t j = 0; j < c.size(); ++j) val += c[i] * q(i, j) * c[j];
    if (sgn(val) >= 0) continue;
    DualWitness w;
    w.basis = sys.basis.monos;
    for (const auto& [m, slots] : sys.classes) {
      auto [i, j] = slots.front();
      w.values[m] = c[i] * c[j];
    }
    for (const auto& [m, coef] : sys.target.terms()) w.values.try_emplace(m, 0);
    return w;
  }
  return std::nullopt;
}

// Separating functional from the negative part of the last affine iterate, rounded and
// nudged towards a strictly positive functional.
std::optional<DualWitness> numeric_dual(const GramSystem& sys, const Eigen::MatrixXd& x, const SosOptions& opts) {
  const std::size_t n = sys.basis.monos.size();
  if (n == 0) return std::nullopt;
  Eigen::MatrixXd d = project_psd(x) - x;
  std::map<Mono, double, GrlexDesc> lambda;
  double biggest = 0;
  for (const auto& [m, slots] : sys.classes) {
    double num = 0, den = 0;
    for (auto [i, j] : slots) {
      double w = i == j ? 1.0 : 2.0;
      num += w * d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      den += w;
    }
    lambda[m] = num / den;
    biggest = std::max(biggest, std::abs(lambda[m]));
  }
  if (biggest == 0) return std::nullopt;

  // Strictly positive reference functional: average of point evaluations on a grid
  // fine enough to separate the basis.
  unsigned k = 1;
  for (const auto& m : sys.basis.monos) k = std::max({k, m[0], m[1]});
  std::vector<std::array<Rat, 2>> grid;
  for (int i = -static_cast<int>(k); i <= static_cast<int>(k); ++i)
    for (int j = -static_cast<int>(k); j <= static_cast<int>(k); ++j) grid.push_back({Rat(i, k), Rat(j, k)});
  std::map<Mono, Rat, GrlexDesc> reference;
  for (const auto& [m, slots] : sys.classes) {
    Rat s = 0;
    for (const auto& p : grid) s += mono_value(m, p);
    reference[m] = s / static_cast<long>(grid.size());
  }

  const Int max_den = std::min<Int>(opts.denominator_bound, Int(1) << 24);
  for (const Int& den : denominator_ladder(max_den)) {
    std::map<Mono, Rat, GrlexDesc> rounded;
    for (const auto& [m, v] : lambda) rounded[m] = approximate(v / biggest, den);
    for (int e = 0; e <= 10; ++e) {
      Int p = 1;
      for (int t = 0; t < e; ++t) p *= 10;
      Rat eps = e == 0 ? Rat(0) : make_rat(1, p);
      DualWitness w;
      w.basis = sys.basis.monos;
      for (const auto& [m, v] : rounded) w.values[m] = v + eps * reference[m];
      Rat value = w.apply(sys.target);
      if (sgn(value) >= 0) continue;
      if (ldlt_psd(w.moment_matrix()).psd) return w;
    }
  }
  return std::nullopt;
}

std::optional<SosCertificate> structured_decomposition(const Poly& f, const SosOptions& opts);

// Univariate polynomials over Q as coefficient vectors, lowest degree first.
using Uni = std::vector<Rat>;

void trim(Uni& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

Uni derivative(const Uni& p) {
  Uni d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(Rat(static_cast<long>(i)) * p[i]);
  trim(d);
  return d;
}

Uni remainder(Uni a, const Uni& b) {
  trim(a);
  while (a.size() >= b.size()) {
    Rat c = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    trim(a);
  }
  return a;
}

Uni quotient(Uni a, const Uni& b) {
  trim(a);
  Uni q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0);
  while (a.size() >= b.size()) {
    Rat c = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    trim(a);
  }
  return q;
}

Uni gcd(Uni a, Uni b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Uni r = remainder(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Rat eval(const Uni& p, const Rat& t) {
  Rat v = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * t + *it;
  return v;
}

// Nonzero rational t with (x - t y)^2 dividing the binary form h.
std::optional<Rat> repeated_linear_factor(const Poly& h) {
  const int d = h.degree();
  Uni p(static_cast<std::size_t>(d) + 1);
  for (const auto& [m, c] : h.terms()) p[m.e[0]] = c;
  trim(p);
  Uni g = gcd(p, derivative(p));
  if (g.size() < 2) return std::nullopt;
  Uni simple = quotient(g, gcd(g, derivative(g)));
  trim(simple);
  std::vector<double> roots;
  if (simple.size() == 2) {
    roots.push_back(Rat(-simple[0] / simple[1]).get_d());
  } else if (simple.size() > 2) {
    const auto n = static_cast<Eigen::Index>(simple.size() - 1);
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 1; i < n; ++i) comp(i, i - 1) = 1;
    for (Eigen::Index i = 0; i < n; ++i) comp(i, n - 1) = -Rat(simple[static_cast<std::size_t>(i)] / simple.back()).get_d();
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
    for (Eigen::Index i = 0; i < n; ++i)
      if (std::abs(es.eigenvalues()(i).imag()) < 1e-9) roots.push_back(es.eigenvalues()(i).real());
  }
  for (double r : roots)
    for (long den : {1L, 100L, 10000L, 1000000L}) {
      Rat t = approximate(r, Int(den));
      if (sgn(t) != 0 && sgn(eval(simple, t)) == 0) return t;
    }
  return std::nullopt;
}

}  // namespace

const char* to_string(SosKind k) {
  switch (k) {
    case SosKind::Decomposition: return "Decomposition";
    case SosKind::NotSos: return "NotSos";
    case SosKind::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::vector<std::array<Rat, 2>> sample_points() {
  static const std::vector<std::array<Rat, 2>> points = [] {
    std::vector<Rat> small{Rat(0), Rat(1), Rat(-1), Rat(1, 2), Rat(-1, 2), Rat(2), Rat(-2), Rat(1, 3), Rat(-1, 3),
                           Rat(2, 3), Rat(-2, 3), Rat(3, 2), Rat(-3, 2), Rat(3), Rat(-3), Rat(5, 4), Rat(-5, 4),
                           Rat(1, 10), Rat(-1, 10)};
    std::vector<std::array<Rat, 2>> pts;
    for (const auto& a : small)
      for (const auto& b : small) pts.push_back({a, b});
    for (long t : {4L, 16L, 64L, 256L, 1024L})
      for (long p = -2; p <= 2; ++p)
        for (long q = -2; q <= 2; ++q)
          if (p != 0 || q != 0) pts.push_back({Rat(t * p), Rat(t * q)});
    return pts;
  }();
  return points;
}

SupportBasis support_basis(const Poly& f) {
  if (f.is_zero() || f.degree() % 2 != 0) return {};
  return {half_newton_points(f)};
}

GramSystem::GramSystem(Poly t, SupportBasis b) : target(std::move(t)), basis(std::move(b)) {
  const auto& ms = basis.monos;
  for (std::size_t i = 0; i < ms.size(); ++i)
    for (std::size_t j = i; j < ms.size(); ++j) classes[ms[i] * ms[j]].emplace_back(i, j);
  for (const auto& [m, c] : target.terms())
    if (!classes.count(m)) stray.push_back(m);
}

GramProblem GramSystem::problem() const {
  GramProblem p(basis.monos.size());
  for (const auto& [m, slots] : classes) {
    GramProblem::Constraint c;
    for (auto [i, j] : slots) c.terms.emplace_back(p.slot(i, j), i == j ? Rat(1) : Rat(2));
    c.rhs = target.coeff(m);
    p.add_constraint(std::move(c));
  }
  return p;
}

PrunedBasis prune_basis(const Poly& f, SupportBasis basis) {
  PrunedBasis out;
  bool changed = true;
  while (changed) {
    changed = false;
    GramSystem sys(f, basis);
    for (std::size_t i = 0; i < basis.monos.size(); ++i) {
      const Mono sq = basis.monos[i] * basis.monos[i];
      const auto& slots = sys.classes.at(sq);
      if (slots.size() != 1) continue;
      int s = sgn(f.coeff(sq));
      if (s < 0) {
        out.negative_diagonal = basis.monos[i];
        out.basis = basis;
        return out;
      }
      if (s == 0) {
        basis.monos.erase(basis.monos.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  out.basis = std::move(basis);
  return out;
}

Rat DualWitness::apply(const Poly& p) const {
  Rat s = 0;
  for (const auto& [m, c] : p.terms()) {
    auto it = values.find(m);
    if (it == values.end()) throw std::invalid_argument("functional undefined on a target monomial");
    s += c * it->second;
  }
  return s;
}

RatMatrix DualWitness::moment_matrix() const {
  const std::size_t n = basis.size();
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto it = values.find(basis[i] * basis[j]);
      if (it == values.end()) throw std::invalid_argument("functional undefined on a basis product");
      m(i, j) = it->second;
    }
  return m;
}

Poly sum_of_squares(const std::vector<WeightedSquare>& squares, int nvars) {
  Poly s = Poly::zero(nvars);
  for (const auto& sq : squares) s += sq.weight * (sq.root * sq.root);
  return s;
}

bool verify_decomposition(const Poly& target, const std::vector<WeightedSquare>& squares) {
  for (const auto& sq : squares)
    if (sgn(sq.weight) <= 0) return false;
  return sum_of_squares(squares, target.nvars()) == target;
}

bool verify_dual(const Poly& target, const DualWitness& w, std::string* why) {
  auto fail = [why](const char* msg) {
    if (why) *why = msg;
    return false;
  };
  if (target.is_zero()) return fail("target is zero");
  if (target.nvars() > 2 && target.uses_var(2)) return fail("target is not bivariate");
  auto required = prune_basis(target, SupportBasis{half_newton_points(target)}).basis.monos;
  for (const auto& m : required)
    if (std::find(w.basis.begin(), w.basis.end(), m) == w.basis.end())
      return fail("witness basis misses a possible square-root monomial");
  RatMatrix mm;
  Rat value;
  try {
    mm = w.moment_matrix();
    value = w.apply(target);
  } catch (const std::invalid_argument&) {
    return fail("functional is not defined on every needed monomial");
  }
  if (sgn(value) >= 0) return fail("functional is not negative on the target");
  if (!ldlt_psd(mm).psd) return fail("moment matrix is not positive semidefinite");
  return true;
}

bool verify_certificate(const Poly& target, const SosCertificate& cert) {
  switch (cert.kind) {
    case SosKind::Decomposition: return verify_decomposition(target, cert.squares);
    case SosKind::NotSos: return cert.dual && verify_dual(target, *cert.dual);
    case SosKind::Inconclusive: return false;
  }
  return false;
}

std::vector<WeightedSquare> normalize_squares(std::vector<WeightedSquare> squares) {
  std::vector<WeightedSquare> out;
  for (auto& sq : squares) {
    if (sq.root.is_zero() || sgn(sq.weight) == 0) continue;
    Rat lc = sq.root.leading_coeff();
    sq.weight *= lc * lc;
    sq.root = sq.root / lc;
    if (auto r = rat_sqrt(sq.weight)) {
      sq.root *= *r;
      sq.weight = 1;
    }
    out.push_back(std::move(sq));
  }
  return out;
}

SosCertificate gram_decompose(const Poly& f, const SupportBasis& basis, const SosOptions& opts) {
  SosCertificate cert;
  GramSystem sys(f, basis);
  if (auto w = stray_witness(sys)) {
    cert.kind = SosKind::NotSos;
    cert.dual = std::move(w);
    cert.method = "monomial outside basis products";
    return cert;
  }
  if (basis.monos.empty()) {
    cert.method = "empty basis";
    return cert;
  }
  if (gram_is_unique(sys)) {
    RatMatrix q = unique_gram(sys);
    auto fac = ldlt_psd(q);
    if (fac.psd) {
      cert.kind = SosKind::Decomposition;
      cert.squares = squares_from_factor(fac, basis.monos, f.nvars());
      cert.method = "unique Gram matrix";
      return cert;
    }
    if (auto w = unique_gram_witness(sys, q)) {
      cert.kind = SosKind::NotSos;
      cert.dual = std::move(w);
      cert.method = "unique Gram matrix is indefinite";
      return cert;
    }
  }
  GramProblem problem = sys.problem();
  AffineProjector projector(problem);
  NumericOptions nopts;
  nopts.tolerance = opts.tolerance;
  nopts.max_iterations = opts.max_iterations;
  NumericResult last;
  double floor_scale = max_abs_coeff(f) / static_cast<double>(basis.monos.size());
  for (double floor : {1e-3 * floor_scale, 0.0}) {
    nopts.eigen_floor = floor;
    NumericResult res = alternating_projections(problem, projector, nopts, floor == 0.0 && last.iterations ? &last.affine_point : nullptr);
    if (auto q = round_to_psd(problem, projector, res.affine_point, opts.denominator_bound)) {
      auto squares = squares_from_factor(ldlt_psd(*q), basis.monos, f.nvars());
      if (verify_decomposition(f, squares)) {
        cert.kind = SosKind::Decomposition;
        cert.squares = std::move(squares);
        cert.method = "Gram matrix (numeric search, exact rounding)";
        return cert;
      }
    }
    last = std::move(res);
  }
  if (!last.converged) {
    if (auto w = numeric_dual(sys, last.affine_point, opts)) {
      cert.kind = SosKind::NotSos;
      cert.dual = std::move(w);
      cert.method = "numeric dual (exact rounding)";
      return cert;
    }
  }
  cert.method = last.converged ? "numeric Gram point did not round to an exact certificate"
                               : "alternating projections did not converge; no exact dual found";
  return cert;
}

namespace {

std::optional<SosCertificate> structured_decomposition(const Poly& f, const SosOptions& opts) {
  if (f.nvars() > 2 && f.uses_var(2)) return std::nullopt;
  for (bool swapped : {false, true}) {
    Poly g = swapped ? compose_linear(f, LinMap::swap()) : f;
    for (int r = 1; r <= g.degree(); ++r) {
      Poly s = substitute_power(g, static_cast<unsigned>(r));
      if (!s.is_constant() || sgn(s.constant_term()) <= 0) continue;
      Rat c = s.constant_term();
      auto first = divide_binomial(g - Poly(c), static_cast<unsigned>(r));
      auto second = divide_binomial(first.quotient, static_cast<unsigned>(r));
      if (!second.remainder.is_zero() || second.quotient.is_zero()) continue;
      SosCertificate inner = decompose_sos(second.quotient, opts);
      if (inner.kind != SosKind::Decomposition) continue;
      Poly w = binomial(static_cast<unsigned>(r));
      SosCertificate cert;
      cert.kind = SosKind::Decomposition;
      for (const auto& sq : inner.squares) cert.squares.push_back({c * sq.weight, w * sq.root});
      cert.squares.push_back({c, Poly(1)});
      if (swapped)
        for (auto& sq : cert.squares) sq.root = compose_linear(sq.root, LinMap::swap());
      cert.squares = normalize_squares(std::move(cert.squares));
      cert.method = "c((y - x^r)^2 g + 1) structure";
      if (verify_decomposition(f, cert.squares)) return cert;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<DualWitness> certify_not_sos(const Poly& f, const SosOptions& opts) {
  if (f.is_zero()) throw std::invalid_argument("certify_not_sos: zero polynomial");
  PrunedBasis pruned;
  std::string method;
  if (auto w = quick_refutation(f, &pruned, &method)) return w;
  SosCertificate cert = gram_decompose(f, pruned.basis, opts);
  if (cert.kind == SosKind::NotSos) return cert.dual;
  return std::nullopt;
}

namespace {

SosCertificate decompose(const Poly& f, const SosOptions& opts, bool allow_shear);

// f o (x + t y, y) moves a repeated top-form factor x - t y onto the x axis.
std::optional<SosCertificate> sheared_decomposition(const Poly& f, const SosOptions& opts) {
  if (f.degree() < 2) return std::nullopt;
  auto t = repeated_linear_factor(top_form(f));
  if (!t) return std::nullopt;
  LinMap m(1, *t, 0, 1);
  SosCertificate moved = decompose(compose_linear(f, m), opts, false);
  if (moved.kind != SosKind::Decomposition) return std::nullopt;
  std::vector<WeightedSquare> back;
  for (const auto& sq : moved.squares) back.push_back({sq.weight, compose_linear(sq.root, m.inverse())});
  if (!verify_decomposition(f, back)) return std::nullopt;
  SosCertificate cert;
  cert.kind = SosKind::Decomposition;
  cert.squares = normalize_squares(std::move(back));
  cert.method = moved.method + " after shearing a repeated top-form factor to an axis";
  return cert;
}

SosCertificate decompose(const Poly& f, const SosOptions& opts, bool allow_shear) {
  SosCertificate cert;
  PrunedBasis pruned;
  if (auto w = quick_refutation(f, &pruned, &cert.method)) {
    cert.kind = SosKind::NotSos;
    cert.dual = std::move(w);
    return cert;
  }
  if (opts.use_structure) {
    if (auto sq = real_square_root(f)) {
      cert.kind = SosKind::Decomposition;
      cert.squares = normalize_squares({{sq->scale, sq->root}});
      cert.method = "scaled perfect square";
      return cert;
    }
    if (auto s = structured_decomposition(f, opts)) return *s;
  }
  if (allow_shear)
    if (auto s = sheared_decomposition(f, opts)) return *s;
  return gram_decompose(f, pruned.basis, opts);
}

}  // namespace

SosCertificate decompose_sos(const Poly& f, const SosOptions& opts) {
  if (f.is_zero()) throw std::invalid_argument("decompose_sos: zero polynomial");
  if (f.nvars() > 2 && f.uses_var(2)) throw std::invalid_argument("decompose_sos: bivariate input expected");
  return decompose(f, opts, true);
}

}  // namespace pythlab

#include "pythlab/polyops.hpp"

#include <stdexcept>
#include <vector>

namespace pythlab {

namespace {

void require_bivariate(const Poly& f, const char* what) {
  if (f.nvars() > 2 && f.uses_var(2)) throw std::invalid_argument(std::string(what) + ": polynomial involves z");
}

}  // namespace

Poly compose_linear(const Poly& f, const LinMap& m) {
  require_bivariate(f, "compose_linear");
  if (f.is_zero()) return Poly::zero(f.nvars());
  Poly x_img = Poly::monomial({1, 0}, m(0, 0)) + Poly::monomial({0, 1}, m(0, 1));
  Poly y_img = Poly::monomial({1, 0}, m(1, 0)) + Poly::monomial({0, 1}, m(1, 1));
  std::vector<Poly> xp{Poly(1)}, yp{Poly(1)};
  for (int i = 1; i <= f.degree_in(0); ++i) xp.push_back(xp.back() * x_img);
  for (int j = 1; j <= f.degree_in(1); ++j) yp.push_back(yp.back() * y_img);
  Poly out = Poly::zero(f.nvars());
  for (const auto& [mono, c] : f.terms()) out += c * (xp[mono[0]] * yp[mono[1]]);
  return out;
}

Poly substitute_power(const Poly& f, unsigned r) {
  require_bivariate(f, "substitute_power");
  Poly out = Poly::zero(f.nvars());
  for (const auto& [m, c] : f.terms()) out.add_term(Mono{m[0] + r * m[1], 0}, c);
  return out;
}

Poly binomial(unsigned r) { return Poly::monomial({0, 1}, 1) - Poly::monomial({r, 0}, 1); }

BinomialDivision divide_binomial(const Poly& f, unsigned r) {
  require_bivariate(f, "divide_binomial");
  // y^b = (y - x^r) * sum_{j<b} y^{b-1-j} x^{rj} + x^{rb}
  Poly q = Poly::zero(f.nvars());
  for (const auto& [m, c] : f.terms())
    for (unsigned j = 0; j < m[1]; ++j) q.add_term(Mono{m[0] + r * j, m[1] - 1 - j}, c);
  return {std::move(q), substitute_power(f, r)};
}

LeadingBlock leading_block(const Poly& f) {
  require_bivariate(f, "leading_block");
  if (f.is_zero()) throw std::domain_error("leading_block of the zero polynomial");
  LeadingBlock lb;
  lb.d = static_cast<unsigned>(f.degree_in(1));
  bool found = false;
  for (const auto& [m, c] : f.terms()) {
    if (m[1] != lb.d) continue;
    if (!found || m[0] > lb.b) {
      lb.b = m[0];
      lb.alpha = c;
      found = true;
    }
  }
  return lb;
}

Poly top_form(const Poly& f) {
  if (f.is_zero()) throw std::domain_error("top_form of the zero polynomial");
  return f.homogeneous_part(f.degree());
}

std::optional<Poly> is_perfect_square(const Poly& f) {
  if (f.is_zero()) return Poly::zero(f.nvars());
  const Mono& lm = f.leading_mono();
  for (auto e : lm.e)
    if (e % 2) return std::nullopt;
  auto lc_root = rat_sqrt(f.leading_coeff());
  if (!lc_root) return std::nullopt;
  Mono head_mono{lm[0] / 2, lm[1] / 2, lm[2] / 2};
  Poly root = Poly::monomial(head_mono, *lc_root, f.nvars());
  Rat twice_head = 2 * *lc_root;
  Poly rest = f - root * root;
  // Each new term of the root is fixed by the leading term of the residual.
  Mono last = head_mono;
  while (!rest.is_zero()) {
    const Mono& m = rest.leading_mono();
    if (!head_mono.divides(m)) return std::nullopt;
    Mono t = m / head_mono;
    if (grlex_compare(t, last) >= 0) return std::nullopt;
    Poly term = Poly::monomial(t, rest.leading_coeff() / twice_head, f.nvars());
    rest -= term * (Rat(2) * root + term);
    root += term;
    last = t;
  }
  return root;
}

std::optional<ScaledSquare> real_square_root(const Poly& f) {
  if (f.is_zero()) return ScaledSquare{Rat(1), Poly::zero(f.nvars())};
  Rat lc = f.leading_coeff();
  if (sgn(lc) < 0) return std::nullopt;
  auto root = is_perfect_square(f / lc);
  if (!root) return std::nullopt;
  return ScaledSquare{lc, *root};
}

}  // namespace pythlab

#include "pythlab/length.hpp"

#include <stdexcept>

#include "pythlab/polyops.hpp"

namespace pythlab {

namespace {

Poly y_coefficient(const Poly& g, unsigned k) {
  Poly out = Poly::zero(g.nvars());
  for (const auto& [m, c] : g.terms())
    if (m[1] == k) out.add_term(Mono{m[0], 0}, c);
  return out;
}

std::optional<TwoSquaresObstruction> discriminant_test(const Poly& g, bool swapped) {
  if (g.degree_in(1) != 2) return std::nullopt;
  // With p = p1 y + p0, q = q1 y + q0: 4 c2 c0 - c1^2 = 4 (p1 q0 - q1 p0)^2.
  Poly disc = Rat(4) * y_coefficient(g, 2) * y_coefficient(g, 0) - y_coefficient(g, 1).pow(2);
  if (disc.is_zero() || real_square_root(disc)) return std::nullopt;
  return TwoSquaresObstruction{TwoSquaresObstruction::Kind::QuadraticDiscriminant, swapped, 0, Rat(0), disc};
}

// f(x, x^r) = c > 0 and f - c = w^2 h, w = y - x^r, 2r > deg h: f is a sum of two
// squares only if h is a real square.
std::optional<TwoSquaresObstruction> binomial_curve_test(const Poly& g, bool swapped) {
  for (int r = 1; r <= g.degree(); ++r) {
    const auto ur = static_cast<unsigned>(r);
    Poly s = substitute_power(g, ur);
    if (!s.is_constant() || sgn(s.constant_term()) <= 0) continue;
    Rat c = s.constant_term();
    auto first = divide_binomial(g - Poly(c), ur);
    auto second = divide_binomial(first.quotient, ur);
    if (!second.remainder.is_zero() || second.quotient.is_zero()) continue;
    const Poly& h = second.quotient;
    if (2 * r <= h.degree()) continue;
    if (real_square_root(h)) continue;
    return TwoSquaresObstruction{TwoSquaresObstruction::Kind::BinomialCurve, swapped, ur, c, h};
  }
  return std::nullopt;
}

}  // namespace

std::optional<TwoSquaresObstruction> two_squares_obstruction(const Poly& f) {
  if (f.is_zero()) return std::nullopt;
  if (f.nvars() > 2 && f.uses_var(2)) throw std::invalid_argument("two_squares_obstruction: bivariate input expected");
  for (bool swapped : {false, true}) {
    Poly g = swapped ? compose_linear(f, LinMap::swap()) : f;
    if (auto o = discriminant_test(g, swapped)) return o;
    if (auto o = binomial_curve_test(g, swapped)) return o;
  }
  return std::nullopt;
}

bool verify_two_squares_obstruction(const Poly& f, const TwoSquaresObstruction& obs) {
  Poly g = obs.swapped ? compose_linear(f, LinMap::swap()) : f;
  if (obs.kind == TwoSquaresObstruction::Kind::QuadraticDiscriminant) {
    auto o = discriminant_test(g, obs.swapped);
    return o && o->witness == obs.witness;
  }
  if (obs.r == 0 || sgn(obs.c) <= 0) return false;
  Poly w = binomial(obs.r);
  return g == Poly(obs.c) + w * w * obs.witness && substitute_power(g, obs.r) == Poly(obs.c) &&
         2 * static_cast<int>(obs.r) > obs.witness.degree() && !real_square_root(obs.witness);
}

const char* to_string(LowerBound b) {
  switch (b) {
    case LowerBound::Trivial: return "Trivial";
    case LowerBound::NotRealSquare: return "NotRealSquare";
    case LowerBound::NotTwoSquares: return "NotTwoSquares";
    case LowerBound::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::optional<LengthResult> min_length(const Poly& f, std::size_t max_k, const SosOptions& opts) {
  if (f.is_zero()) throw std::invalid_argument("min_length: zero polynomial");
  if (max_k < 1) throw std::invalid_argument("min_length: max_k must be at least 1");
  LengthResult res;
  if (auto sq = real_square_root(f)) {
    res.length = 1;
    res.decomposition = normalize_squares({{sq->scale, sq->root}});
    res.lower_bound = LowerBound::Trivial;
    return res;
  }
  if (max_k < 2) return std::nullopt;
  SosCertificate cert = decompose_sos(f, opts);
  if (cert.kind != SosKind::Decomposition || !verify_decomposition(f, cert.squares)) return std::nullopt;
  res.decomposition = cert.squares;
  res.length = cert.squares.size();
  if (res.length > max_k) return std::nullopt;
  if (res.length <= 2) {
    res.lower_bound = LowerBound::NotRealSquare;
    return res;
  }
  if (res.length == 3) {
    if (auto o = two_squares_obstruction(f)) {
      res.lower_bound = LowerBound::NotTwoSquares;
      res.obstruction = std::move(o);
      return res;
    }
  }
  res.lower_bound = LowerBound::Inconclusive;
  return res;
}

}  // namespace pythlab

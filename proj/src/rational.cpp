#include "pythlab/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace pythlab {

Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

namespace {

bool valid_integer(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

Int parse_int(std::string_view s) {
  if (!valid_integer(s)) throw std::invalid_argument("malformed integer '" + std::string(s) + "'");
  if (s[0] == '+') s.remove_prefix(1);
  return Int(std::string(s), 10);
}

}  // namespace

Rat parse_rat(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rat(parse_int(text));
  return make_rat(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

std::string to_string(const Rat& q) { return q.get_str(10); }

std::optional<Rat> rat_sqrt(const Rat& q) {
  if (sgn(q) < 0) return std::nullopt;
  const Int& n = q.get_num();
  const Int& d = q.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
  Int rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  return make_rat(rn, rd);
}

Rat approximate(double x, const Int& max_den) {
  if (!std::isfinite(x)) throw std::invalid_argument("cannot approximate a non-finite value");
  Rat exact(x);
  if (exact.get_den() <= max_den) return exact;
  // Convergents p/q of the continued fraction of x, then the best semiconvergent.
  Int p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  Int n = exact.get_num(), d = exact.get_den();
  while (true) {
    Int a;
    mpz_fdiv_q(a.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    Int q2 = q0 + a * q1;
    if (q2 > max_den) break;
    Int p2 = p0 + a * p1;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    Int r = n - a * d;
    n = d;
    d = r;
    if (d == 0) break;
  }
  Int k = (max_den - q0) / q1;
  Rat bound1 = make_rat(p0 + k * p1, q0 + k * q1);
  Rat bound2 = make_rat(p1, q1);
  Rat e1 = abs(bound1 - exact), e2 = abs(bound2 - exact);
  return e2 <= e1 ? bound2 : bound1;
}

}  // namespace pythlab

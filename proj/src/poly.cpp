#include "pythlab/poly.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>
#include <stdexcept>

#include "pythlab/parser.hpp"

namespace pythlab {

std::strong_ordering grlex_compare(const Mono& a, const Mono& b) {
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  for (int i = 0; i < kMaxVars; ++i)
    if (auto c = a.e[i] <=> b.e[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

Poly::Poly(const Rat& c, int nvars) : nvars_(nvars) {
  if (sgn(c) != 0) terms_.emplace(Mono{}, c);
}

Poly Poly::monomial(const Mono& m, const Rat& c, int nvars) {
  Poly p = Poly::zero(nvars);
  p.add_term(m, c);
  return p;
}

Poly Poly::var(int index, int nvars) {
  if (index < 0 || index >= nvars) throw std::out_of_range("variable index");
  Mono m;
  m[index] = 1;
  return monomial(m, Rat(1), nvars);
}

Poly Poly::from_terms(const TermMap& terms, int nvars) {
  Poly p = Poly::zero(nvars);
  for (const auto& [m, c] : terms) p.add_term(m, c);
  return p;
}

Poly Poly::with_nvars(int n) const {
  for (int v = n; v < kMaxVars; ++v)
    if (uses_var(v)) throw std::invalid_argument("polynomial depends on a dropped variable");
  Poly p = *this;
  p.nvars_ = n;
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Mono{});
}

int Poly::degree() const {
  return terms_.empty() ? -1 : static_cast<int>(terms_.begin()->first.degree());
}

int Poly::degree_in(int var) const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m[var]));
  return d;
}

bool Poly::is_homogeneous() const {
  if (terms_.empty()) return true;
  auto d = terms_.begin()->first.degree();
  return std::all_of(terms_.begin(), terms_.end(), [d](const auto& t) { return t.first.degree() == d; });
}

Rat Poly::coeff(const Mono& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rat(0) : it->second;
}

const Mono& Poly::leading_mono() const {
  if (terms_.empty()) throw std::domain_error("zero polynomial has no leading term");
  return terms_.begin()->first;
}

const Rat& Poly::leading_coeff() const {
  if (terms_.empty()) throw std::domain_error("zero polynomial has no leading term");
  return terms_.begin()->second;
}

void Poly::add_term(const Mono& m, const Rat& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& o) {
  nvars_ = std::max(nvars_, o.nvars_);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  nvars_ = std::max(nvars_, o.nvars_);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly r = Poly::zero(std::max(a.nvars_, b.nvars_));
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly& Poly::operator*=(const Rat& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [m, v] : r.terms_) v = -v;
  return r;
}

Poly Poly::operator/(const Rat& c) const {
  if (sgn(c) == 0) throw std::domain_error("division by zero");
  Poly r = *this;
  for (auto& [m, v] : r.terms_) v /= c;
  return r;
}

Poly Poly::pow(unsigned k) const {
  Poly result(Rat(1), nvars_);
  Poly base = *this;
  while (k) {
    if (k & 1u) result *= base;
    k >>= 1;
    if (k) base *= base;
  }
  return result;
}

Rat Poly::eval(std::span<const Rat> point) const {
  Rat s = 0;
  for (const auto& [m, c] : terms_) {
    Rat t = c;
    for (int i = 0; i < kMaxVars; ++i) {
      if (m[i] == 0) continue;
      if (static_cast<std::size_t>(i) >= point.size()) throw std::invalid_argument("evaluation point too short");
      Rat pw;
      mpz_pow_ui(pw.get_num_mpz_t(), point[i].get_num_mpz_t(), m[i]);
      mpz_pow_ui(pw.get_den_mpz_t(), point[i].get_den_mpz_t(), m[i]);
      t *= pw;
    }
    s += t;
  }
  return s;
}

double Poly::eval_double(std::span<const double> point) const {
  double s = 0;
  for (const auto& [m, c] : terms_) {
    double t = c.get_d();
    for (int i = 0; i < kMaxVars; ++i)
      if (m[i]) t *= std::pow(point[i], static_cast<double>(m[i]));
    s += t;
  }
  return s;
}

Poly Poly::homogeneous_part(int deg) const {
  Poly r = Poly::zero(nvars_);
  for (const auto& [m, c] : terms_)
    if (static_cast<int>(m.degree()) == deg) r.terms_.emplace(m, c);
  return r;
}

std::size_t Poly::hash() const {
  std::size_t h = 0x9e3779b97f4a7c15ull;
  auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2); };
  for (const auto& [m, c] : terms_) {
    for (auto e : m.e) mix(e);
    mix(std::hash<std::string>{}(c.get_str()));
  }
  return h;
}

std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << to_string(p); }

}  // namespace pythlab

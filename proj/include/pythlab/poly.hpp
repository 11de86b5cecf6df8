#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "pythlab/rational.hpp"

namespace pythlab {

inline constexpr int kMaxVars = 3;

// Exponent vector over the fixed variable order (x, y, z). Unused slots stay 0.
struct Mono {
  std::array<std::uint32_t, kMaxVars> e{};

  constexpr Mono() = default;
  constexpr Mono(std::uint32_t a, std::uint32_t b, std::uint32_t c = 0) : e{a, b, c} {}

  std::uint32_t degree() const { return e[0] + e[1] + e[2]; }
  std::uint32_t operator[](int i) const { return e[i]; }
  std::uint32_t& operator[](int i) { return e[i]; }

  Mono operator*(const Mono& o) const { return {e[0] + o.e[0], e[1] + o.e[1], e[2] + o.e[2]}; }
  bool divides(const Mono& o) const {
    return e[0] <= o.e[0] && e[1] <= o.e[1] && e[2] <= o.e[2];
  }
  Mono operator/(const Mono& o) const { return {e[0] - o.e[0], e[1] - o.e[1], e[2] - o.e[2]}; }

  friend bool operator==(const Mono&, const Mono&) = default;
};

// Graded lexicographic order with x > y > z.
std::strong_ordering grlex_compare(const Mono& a, const Mono& b);

// Descending grlex: the first map element is the leading term.
struct GrlexDesc {
  bool operator()(const Mono& a, const Mono& b) const { return grlex_compare(a, b) > 0; }
};

// Sparse polynomial with exact rational coefficients in up to three variables.
class Poly {
 public:
  using TermMap = std::map<Mono, Rat, GrlexDesc>;

  Poly() = default;
  Poly(const Rat& c, int nvars = 2);
  Poly(long c, int nvars = 2) : Poly(Rat(c), nvars) {}

  static Poly zero(int nvars) {
    Poly p;
    p.nvars_ = nvars;
    return p;
  }
  static Poly monomial(const Mono& m, const Rat& c, int nvars = 2);
  static Poly var(int index, int nvars = 2);
  static Poly from_terms(const TermMap& terms, int nvars);

  int nvars() const { return nvars_; }
  Poly with_nvars(int n) const;
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // Total degree; -1 for the zero polynomial.
  int degree() const;
  int degree_in(int var) const;
  bool is_homogeneous() const;
  bool uses_var(int var) const { return degree_in(var) > 0; }

  Rat coeff(const Mono& m) const;
  Rat constant_term() const { return coeff(Mono{}); }
  // Requires a nonzero polynomial.
  const Mono& leading_mono() const;
  const Rat& leading_coeff() const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rat& c);
  Poly operator-() const;
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rat& c) { return a *= c; }
  friend Poly operator*(const Rat& c, Poly a) { return a *= c; }
  Poly pow(unsigned k) const;
  // Exact division by a nonzero rational.
  Poly operator/(const Rat& c) const;

  void add_term(const Mono& m, const Rat& c);

  Rat eval(std::span<const Rat> point) const;
  double eval_double(std::span<const double> point) const;

  // Homogeneous component of the given total degree.
  Poly homogeneous_part(int deg) const;

  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

  std::size_t hash() const;

 private:
  int nvars_ = 2;
  TermMap terms_;
};

std::ostream& operator<<(std::ostream& os, const Poly& p);

}  // namespace pythlab

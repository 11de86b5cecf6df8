#pragma once

#include <array>
#include <string>

#include "pythlab/rational.hpp"

namespace pythlab {

// Invertible 2x2 rational matrix acting on (x, y): (x, y) -> M * (x, y)^T.
class LinMap {
 public:
  using Entries = std::array<std::array<Rat, 2>, 2>;

  // Throws std::invalid_argument when the determinant vanishes.
  explicit LinMap(const Entries& entries);
  LinMap(Rat a, Rat b, Rat c, Rat d);

  static LinMap identity() { return LinMap(1, 0, 0, 1); }
  static LinMap swap() { return LinMap(0, 1, 1, 0); }

  const Rat& operator()(int r, int c) const { return m_[r][c]; }
  const Entries& entries() const { return m_; }
  Rat determinant() const { return m_[0][0] * m_[1][1] - m_[0][1] * m_[1][0]; }
  LinMap inverse() const;
  // (this * o) so that compose_linear(compose_linear(f, A), B) == compose_linear(f, A * B).
  LinMap operator*(const LinMap& o) const;
  // Largest |numerator| or denominator among the entries.
  Int height() const;

  friend bool operator==(const LinMap&, const LinMap&) = default;

 private:
  Entries m_;
};

std::string to_string(const LinMap& m);

}  // namespace pythlab

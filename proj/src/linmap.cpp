#include "pythlab/linmap.hpp"

#include <sstream>
#include <stdexcept>

namespace pythlab {

LinMap::LinMap(const Entries& entries) : m_(entries) {
  if (sgn(determinant()) == 0) throw std::invalid_argument("singular linear map");
}

LinMap::LinMap(Rat a, Rat b, Rat c, Rat d) : LinMap(Entries{{{a, b}, {c, d}}}) {}

LinMap LinMap::inverse() const {
  Rat det = determinant();
  return LinMap(m_[1][1] / det, -m_[0][1] / det, -m_[1][0] / det, m_[0][0] / det);
}

LinMap LinMap::operator*(const LinMap& o) const {
  Entries r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = m_[i][0] * o.m_[0][j] + m_[i][1] * o.m_[1][j];
  return LinMap(r);
}

Int LinMap::height() const {
  Int h = 0;
  for (const auto& row : m_)
    for (const auto& q : row) {
      Int n = abs(q.get_num());
      if (n > h) h = n;
      if (q.get_den() > h) h = q.get_den();
    }
  return h;
}

std::string to_string(const LinMap& m) {
  std::ostringstream os;
  os << "[[" << to_string(m(0, 0)) << ", " << to_string(m(0, 1)) << "], [" << to_string(m(1, 0)) << ", "
     << to_string(m(1, 1)) << "]]";
  return os.str();
}

}  // namespace pythlab

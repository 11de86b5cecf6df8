#include "pythlab/newton.hpp"

#include <algorithm>
#include <stdexcept>

namespace pythlab {

namespace {

long long cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

}  // namespace

std::vector<Point2> convex_hull(std::vector<Point2> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() <= 2) return pts;
  std::vector<Point2> h(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

bool hull_contains(const std::vector<Point2>& hull, const Point2& p) {
  if (hull.empty()) return false;
  if (hull.size() == 1) return hull[0] == p;
  if (hull.size() == 2) {
    if (cross(hull[0], hull[1], p) != 0) return false;
    return std::min(hull[0][0], hull[1][0]) <= p[0] && p[0] <= std::max(hull[0][0], hull[1][0]) &&
           std::min(hull[0][1], hull[1][1]) <= p[1] && p[1] <= std::max(hull[0][1], hull[1][1]);
  }
  for (std::size_t i = 0; i < hull.size(); ++i)
    if (cross(hull[i], hull[(i + 1) % hull.size()], p) < 0) return false;
  return true;
}

std::vector<Mono> half_newton_points(const Poly& f) {
  if (f.nvars() > 2 && f.uses_var(2)) throw std::invalid_argument("Newton polytope: bivariate input expected");
  if (f.is_zero()) return {};
  std::vector<Point2> pts;
  for (const auto& [m, c] : f.terms()) pts.push_back({m[0], m[1]});
  auto hull = convex_hull(pts);
  std::vector<Mono> out;
  const int mx = f.degree_in(0) / 2, my = f.degree_in(1) / 2;
  for (int i = 0; i <= mx; ++i)
    for (int j = 0; j <= my; ++j)
      if (hull_contains(hull, {2LL * i, 2LL * j})) out.push_back(Mono(i, j));
  std::sort(out.begin(), out.end(), [](const Mono& a, const Mono& b) { return grlex_compare(a, b) < 0; });
  return out;
}

}  // namespace pythlab

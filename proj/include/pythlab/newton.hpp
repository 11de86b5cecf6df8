#pragma once

#include <array>
#include <vector>

#include "pythlab/poly.hpp"

namespace pythlab {

using Point2 = std::array<long long, 2>;

// Vertices of the convex hull in counter-clockwise order (1, 2 or >= 3 points).
std::vector<Point2> convex_hull(std::vector<Point2> pts);
bool hull_contains(const std::vector<Point2>& hull, const Point2& p);

// Monomials m with 2m in the Newton polytope of a bivariate f, grlex ascending.
std::vector<Mono> half_newton_points(const Poly& f);

}  // namespace pythlab

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "oracle.hpp"
#include "pythlab/length.hpp"
#include "pythlab/newton.hpp"
#include "pythlab/parser.hpp"
#include "pythlab/polyops.hpp"
#include "pythlab/sos.hpp"
#include "pythlab/witness.hpp"

using namespace pythlab;

namespace {

Poly P(const char* s) { return parse_poly(s); }

const char* kMotzkin = "x^2*y^4 + x^4*y^2 - 3*x^2*y^2 + 1";

// Sum of weighted squares expanded with the dense oracle.
oracle::Table expand(const std::vector<WeightedSquare>& sq) {
  oracle::Table t;
  for (const auto& s : sq) t = oracle::add(t, oracle::power(oracle::table(s.root), 2), s.weight);
  return t;
}

// Lattice points of half the Newton polygon by brute force: (i, j) with 2(i, j) a
// convex combination of exponents, tested through all triangles of support points.
std::vector<std::pair<int, int>> half_points_oracle(const Poly& f) {
  std::vector<std::pair<long, long>> pts;
  for (const auto& [m, c] : f.terms()) pts.emplace_back(m[0], m[1]);
  auto in_triangle = [](std::pair<long, long> a, std::pair<long, long> b, std::pair<long, long> c,
                        std::pair<long, long> p) {
    auto cross = [](std::pair<long, long> o, std::pair<long, long> u, std::pair<long, long> v) {
      return (u.first - o.first) * (v.second - o.second) - (u.second - o.second) * (v.first - o.first);
    };
    long d1 = cross(a, b, p), d2 = cross(b, c, p), d3 = cross(c, a, p);
    bool neg = d1 < 0 || d2 < 0 || d3 < 0, pos = d1 > 0 || d2 > 0 || d3 > 0;
    if (neg && pos) return false;
    if (cross(a, b, c) != 0) return true;
    // degenerate triangle: p must lie within the bounding box of the segment set
    long lo_x = std::min({a.first, b.first, c.first}), hi_x = std::max({a.first, b.first, c.first});
    long lo_y = std::min({a.second, b.second, c.second}), hi_y = std::max({a.second, b.second, c.second});
    return p.first >= lo_x && p.first <= hi_x && p.second >= lo_y && p.second <= hi_y;
  };
  std::vector<std::pair<int, int>> out;
  int deg = f.degree();
  for (int i = 0; i <= deg; ++i)
    for (int j = 0; i + j <= deg; ++j) {
      std::pair<long, long> p{2 * i, 2 * j};
      bool inside = false;
      for (std::size_t a = 0; a < pts.size() && !inside; ++a)
        for (std::size_t b = a; b < pts.size() && !inside; ++b)
          for (std::size_t c = b; c < pts.size() && !inside; ++c) inside = in_triangle(pts[a], pts[b], pts[c], p);
      if (inside) out.emplace_back(i, j);
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<int, int>> as_pairs(const std::vector<Mono>& ms) {
  std::vector<std::pair<int, int>> out;
  for (const auto& m : ms) out.emplace_back(m[0], m[1]);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("support_basis") {
  CHECK(as_pairs(support_basis(P("x^2 + y^2")).monos) == std::vector<std::pair<int, int>>{{0, 1}, {1, 0}});
  auto motzkin = as_pairs(support_basis(P(kMotzkin)).monos);
  CHECK(motzkin == std::vector<std::pair<int, int>>{{0, 0}, {1, 1}, {1, 2}, {2, 1}});
  CHECK(motzkin == half_points_oracle(P(kMotzkin)));
  CHECK(support_basis(P("x^3")).monos.empty());
  for (const char* s : {"x^4 + y^4 + 1", "x^6 + y^2", "(y - x^2)^2 + 1", "x^2*y^2 + x^4 + 1 + x*y"})
    CHECK(as_pairs(support_basis(P(s)).monos) == half_points_oracle(P(s)));
}

TEST_CASE("convex hull helpers") {
  std::vector<Point2> pts{{0, 0}, {4, 0}, {0, 4}, {1, 1}, {2, 2}, {4, 0}};
  auto hull = convex_hull(pts);
  CHECK(hull.size() == 3);
  CHECK(hull_contains(hull, {2, 2}));
  CHECK_FALSE(hull_contains(hull, {3, 2}));
  CHECK(hull_contains(convex_hull({{0, 0}, {2, 2}}), {1, 1}));
  CHECK_FALSE(hull_contains(convex_hull({{0, 0}, {2, 2}}), {1, 0}));
}

TEST_CASE("decompose_sos on explicit squares") {
  auto c = decompose_sos(P("x^2 + y^2"));
  REQUIRE(c.kind == SosKind::Decomposition);
  CHECK(c.length() == 2);
  CHECK(expand(c.squares) == oracle::table(P("x^2 + y^2")));
  std::vector<Poly> roots;
  for (const auto& s : c.squares) roots.push_back(s.root * s.weight);
  CHECK(std::count(roots.begin(), roots.end(), P("x")) == 1);
  CHECK(std::count(roots.begin(), roots.end(), P("y")) == 1);

  Poly f2 = P("(y - x^2)^2 + 1");
  auto d = decompose_sos(f2);
  REQUIRE(d.kind == SosKind::Decomposition);
  CHECK(d.length() == 2);
  CHECK(expand(d.squares) == oracle::table(f2));
}

TEST_CASE("decompose_sos through the Gram search") {
  SosOptions plain;
  plain.use_structure = false;
  for (const char* s : {"x^4 + x^2*y^2 + y^4", "(x^2 + y^2 + 1)^2 + (x - y)^2 + (x*y - 1)^2", "2*x^2 + 3*x^4*y^2",
                        "(y - x^2)^2 + 1", "x^4 - 2*x^2*y + 2*y^2"}) {
    std::string text = s;
    CAPTURE(text);
    auto c = decompose_sos(P(s), plain);
    REQUIRE(c.kind == SosKind::Decomposition);
    CHECK(expand(c.squares) == oracle::table(P(s)));
    for (const auto& sq : c.squares) CHECK(sgn(sq.weight) > 0);
  }
}

TEST_CASE("Motzkin is not a sum of squares") {
  Poly m = P(kMotzkin);
  auto c = decompose_sos(m);
  REQUIRE(c.kind == SosKind::NotSos);
  REQUIRE(c.dual);
  CHECK(verify_dual(m, *c.dual));
  CHECK(sgn(c.dual->apply(m)) < 0);
  CHECK(ldlt_psd(c.dual->moment_matrix()).psd);
  // nonnegative on every sample point
  for (const auto& p : oracle::points(7, 50)) CHECK(oracle::eval(oracle::table(m), p.first, p.second) >= 0);
}

TEST_CASE("dual witness verification rejects tampering") {
  Poly m = P(kMotzkin);
  auto w = *certify_not_sos(m);
  std::string why;
  CHECK(verify_dual(m, w, &why));
  DualWitness bad = w;
  bad.values.begin()->second = -1;
  bool tampered = verify_dual(m, bad, &why);
  if (!tampered) CHECK_FALSE(why.empty());
  CHECK_FALSE(verify_dual(P("x^2 + y^2"), w));
  DualWitness shrunk = w;
  shrunk.basis.pop_back();
  CHECK_FALSE(verify_dual(m, shrunk, &why));
}

TEST_CASE("not-SOS via the numeric dual") {
  Poly robinson = P("x^6 + y^6 + 1 - x^4*y^2 - x^2*y^4 - x^4 - x^2 - y^4 - y^2 + 3*x^2*y^2");
  auto c = decompose_sos(robinson);
  REQUIRE(c.kind == SosKind::NotSos);
  CHECK(verify_dual(robinson, *c.dual));
  CHECK(c.method.find("numeric dual") != std::string::npos);
}

TEST_CASE("certify_not_sos") {
  auto w = certify_not_sos(Poly(-1));
  REQUIRE(w);
  CHECK(w->apply(Poly(-1)) == -1);
  CHECK(verify_dual(Poly(-1), *w));
  CHECK(certify_not_sos(P(kMotzkin)));
  CHECK_FALSE(certify_not_sos(P("x^2")));
  CHECK_FALSE(certify_not_sos(P("x^2 + 2*x*y + 3*y^2")));
}

TEST_CASE("odd degree and negative leading forms") {
  auto c = decompose_sos(P("x^3 + 1"));
  CHECK(c.kind == SosKind::NotSos);
  CHECK(verify_certificate(P("x^3 + 1"), c));
  auto d = decompose_sos(P("x^2 - y^4"));
  CHECK(d.kind == SosKind::NotSos);
  CHECK_THROWS_AS(decompose_sos(Poly()), std::invalid_argument);
}

TEST_CASE("normalize_squares") {
  auto n = normalize_squares({{Rat(4), P("2*x + 2")}, {Rat(3), P("x")}, {Rat(5), Poly()}});
  REQUIRE(n.size() == 2);
  CHECK(n[0].weight == 1);
  CHECK(n[0].root == P("4*x + 4"));
  CHECK(n[1].weight == 3);
  CHECK(sum_of_squares(n) == P("16*(x + 1)^2 + 3*x^2"));
}

TEST_CASE("min_length") {
  auto one = min_length(Poly(9), 3);
  REQUIRE(one);
  CHECK(one->length == 1);
  CHECK(one->lower_bound == LowerBound::Trivial);

  AssocSequence seq = build_family(P("y"), 3);
  auto two = min_length(seq.polys[1], 4);
  REQUIRE(two);
  CHECK(two->length == 2);
  CHECK(two->lower_bound == LowerBound::NotRealSquare);
  CHECK_FALSE(is_perfect_square(seq.polys[1]));

  auto three = min_length(seq.polys[2], 4);
  REQUIRE(three);
  CHECK(three->length == 3);
  CHECK(three->lower_bound == LowerBound::NotTwoSquares);
  REQUIRE(three->obstruction);
  CHECK(verify_two_squares_obstruction(seq.polys[2], *three->obstruction));
  CHECK(expand(three->decomposition) == oracle::table(seq.polys[2]));

  CHECK_FALSE(min_length(P(kMotzkin), 4));
  auto capped = min_length(seq.polys[2], 2);
  CHECK_FALSE(capped);
}

TEST_CASE("min_length is one exactly for real squares") {
  for (const char* s : {"4", "(x + y)^2", "3*(x*y - 1)^2", "x^2 + y^2", "(y - x^2)^2 + 1", "2*x^2 + 3*x^4*y^2"}) {
    std::string text = s;
    CAPTURE(text);
    auto r = min_length(P(s), 4);
    REQUIRE(r);
    CHECK((r->length == 1) == real_square_root(P(s)).has_value());
  }
}

TEST_CASE("two-squares obstruction") {
  // x^2 + y^2 + 1 in y: 4 (x^2 + 1) is not a square
  auto o = two_squares_obstruction(P("x^2 + y^2 + 1"));
  REQUIRE(o);
  CHECK(o->kind == TwoSquaresObstruction::Kind::QuadraticDiscriminant);
  CHECK(verify_two_squares_obstruction(P("x^2 + y^2 + 1"), *o));
  CHECK_FALSE(two_squares_obstruction(P("x^2 + y^2")));
  CHECK_FALSE(two_squares_obstruction(P("(x*y - 1)^2 + (x + y^2)^2")));
  // a two-square sum must never be flagged
  CHECK_FALSE(two_squares_obstruction(P("(y - x^2)^2 + 1")));
  TwoSquaresObstruction forged = *o;
  forged.witness = P("4*x^2");
  CHECK_FALSE(verify_two_squares_obstruction(P("x^2 + y^2 + 1"), forged));
}

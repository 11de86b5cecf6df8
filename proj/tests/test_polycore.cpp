#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracle.hpp"
#include "pythlab/json_io.hpp"
#include "pythlab/linmap.hpp"
#include "pythlab/parser.hpp"
#include "pythlab/polyops.hpp"

using namespace pythlab;
using oracle::Table;
using oracle::term;

TEST_CASE("rationals stay canonical") {
  Rat q = parse_rat("6/-4");
  CHECK(q.get_num() == -3);
  CHECK(q.get_den() == 2);
  CHECK(to_string(parse_rat("0/7")) == "0");
  CHECK_THROWS_AS(parse_rat("1/0"), std::invalid_argument);
  CHECK(approximate(0.333333333333, Int(10)) == Rat(1, 3));
  Rat h = approximate(-2.5, Int(1));
  CHECK((h == -2 || h == -3));
}

TEST_CASE("parse_poly single monomial and binomial") {
  Poly p = parse_poly("x^3*y");
  CHECK(p.size() == 1);
  CHECK(p.coeff(Mono{3, 1, 0}) == 1);
  Poly q = parse_poly("x^2 - y^2");
  CHECK(oracle::same(q, oracle::add(term(2, 0, 1), term(0, 2, -1))));
}

TEST_CASE("parse_poly matrix example input") {
  Poly p = parse_poly("-x^2*y^4 - x^4*y^2 + 3*x^3*y^3");
  Table t{{{2, 4}, -1}, {{4, 2}, -1}, {{3, 3}, 3}};
  CHECK(oracle::same(p, t));
}

TEST_CASE("parse_poly grammar details") {
  CHECK(parse_poly("2/3 x y") == parse_poly("2/3*x*y"));
  CHECK(parse_poly("(x+1)^2") == parse_poly("x^2 + 2*x + 1"));
  CHECK(parse_poly("-(x - y)") == parse_poly("y - x"));
  CHECK(parse_poly("x/2") == Rat(1, 2) * parse_poly("x"));
  CHECK(parse_poly("z^2 - x", {"x", "y", "z"}).nvars() == 3);
}

TEST_CASE("parse_poly errors carry positions") {
  CHECK_THROWS_AS(parse_poly("x^-1"), ParseError);
  CHECK_THROWS_AS(parse_poly("x + w"), ParseError);
  CHECK_THROWS_AS(parse_poly("x / y"), ParseError);
  CHECK_THROWS_AS(parse_poly(""), ParseError);
  CHECK_THROWS_AS(parse_poly("x + * y"), ParseError);
  try {
    parse_poly("x + w");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
    CHECK(std::string(e.what()).find("unknown variable") != std::string::npos);
  }
}

TEST_CASE("printing round trips") {
  for (const char* s : {"x^3*y - 2/3*x + 1", "-x^2*y^4 - x^4*y^2 + 3*x^3*y^3", "0", "-7/2", "y"}) {
    Poly p = parse_poly(s);
    CHECK(parse_poly(to_string(p)) == p);
  }
  CHECK(to_string(parse_poly("1 - 2/3*x + x^3*y")) == "x^3*y - 2/3*x + 1");
}

TEST_CASE("linmap basics") {
  CHECK_THROWS_AS(LinMap(1, 2, 2, 4), std::invalid_argument);
  LinMap m(1, -1, 1, 1);
  CHECK(m.determinant() == 2);
  CHECK(m * m.inverse() == LinMap::identity());
  CHECK(m.height() == 1);
  CHECK(LinMap(Rat(1, 7), 0, 0, 3).height() == 7);
}

TEST_CASE("compose_linear matrix example") {
  Poly f = parse_poly("-x^2*y^4 - x^4*y^2 + 3*x^3*y^3");
  Poly g = compose_linear(f, LinMap(1, -1, 1, 1));
  CHECK(oracle::same(g, oracle::compose(oracle::table(f), 1, -1, 1, 1)));
  // Expanding (x - y)^2 (x + y)^2 (5 y^2 - x^2) independently: f(x - y, x + y) is its negative.
  Table xm = oracle::add(term(1, 0, 1), term(0, 1, -1)), xp = oracle::add(term(1, 0, 1), term(0, 1, 1));
  Table last = oracle::add(term(0, 2, 5), term(2, 0, -1));
  Table stated = oracle::mul(oracle::mul(oracle::power(xm, 2), oracle::power(xp, 2)), last);
  CHECK(oracle::same(-g, stated));
  CHECK_FALSE(oracle::same(g, stated));
  CHECK(g.degree() == 6);
}

TEST_CASE("compose_linear identity and generic matrix") {
  Poly f = parse_poly("x^2*(1 - x^2)");
  CHECK(compose_linear(f, LinMap::identity()) == f);
  LinMap m(2, 3, 5, 7);
  Poly u = parse_poly("2*x + 3*y");
  CHECK(compose_linear(f, m) == u * u * (Poly(1) - u * u));
  CHECK_THROWS_AS(compose_linear(parse_poly("z", {"x", "y", "z"}), m), std::invalid_argument);
}

TEST_CASE("substitute_power") {
  CHECK(substitute_power(parse_poly("(y - x^2)^2 + 1"), 2) == Poly(1));
  CHECK(substitute_power(parse_poly("y"), 3) == parse_poly("x^3"));
  Poly s = substitute_power(parse_poly("x^2 - y^2"), 2);
  CHECK(oracle::same(s, oracle::add(term(2, 0, 1), term(4, 0, -1))));
}

TEST_CASE("divide_binomial") {
  auto d = divide_binomial(parse_poly("(y - x^3)*(x + y)"), 3);
  CHECK(d.quotient == parse_poly("x + y"));
  CHECK(d.remainder.is_zero());
  auto e = divide_binomial(Poly(1), 5);
  CHECK(e.quotient.is_zero());
  CHECK(e.remainder == Poly(1));
  auto g = divide_binomial(parse_poly("y^2"), 2);
  CHECK(g.quotient == parse_poly("y + x^2"));
  CHECK(g.remainder == parse_poly("x^4"));
  Table back = oracle::add(oracle::mul(oracle::table(g.quotient), oracle::add(term(0, 1, 1), term(2, 0, -1))),
                           oracle::table(g.remainder));
  CHECK(back == oracle::table(parse_poly("y^2")));
}

TEST_CASE("leading_block") {
  CHECK(leading_block(parse_poly("x^3*y")) == LeadingBlock{3, 1, 1});
  CHECK(leading_block(parse_poly("-2*x^2 - 3*x^4*y^2")) == LeadingBlock{4, 2, -3});
  CHECK(leading_block(parse_poly("x^2 - y^2")) == LeadingBlock{0, 2, -1});
  CHECK_THROWS_AS(leading_block(Poly()), std::domain_error);
}

TEST_CASE("top_form") {
  CHECK(top_form(parse_poly("x^2 + y^3")) == parse_poly("y^3"));
  CHECK(top_form(parse_poly("-x^6 + x^2*y^2")) == parse_poly("-x^6"));
  Poly h = parse_poly("x^3 - 2*x*y^2");
  CHECK(top_form(h) == h);
  CHECK_THROWS_AS(top_form(Poly()), std::domain_error);
}

TEST_CASE("is_perfect_square") {
  auto r = is_perfect_square(parse_poly("(x + y^2)^2"));
  REQUIRE(r);
  CHECK(*r == parse_poly("x + y^2"));
  CHECK_FALSE(is_perfect_square(parse_poly("x^2 - y^2")));
  auto z = is_perfect_square(Poly());
  REQUIRE(z);
  CHECK(z->is_zero());
  auto n = is_perfect_square(parse_poly("(1 - x*y)^2"));
  REQUIRE(n);
  CHECK(sgn(n->leading_coeff()) > 0);
  CHECK_FALSE(is_perfect_square(parse_poly("2*x^2")));
  CHECK_FALSE(is_perfect_square(parse_poly("-x^2")));
}

TEST_CASE("real_square_root") {
  auto r = real_square_root(parse_poly("2*x^2 + 4*x*y + 2*y^2"));
  REQUIRE(r);
  CHECK(r->scale == 2);
  CHECK(r->root == parse_poly("x + y"));
  CHECK_FALSE(real_square_root(parse_poly("-x^2")));
  CHECK(real_square_root(Poly(9))->scale == 9);
}

TEST_CASE("json forms") {
  Poly p = parse_poly("x^3*y - 2/3*x + 1");
  Json j = poly_to_json(p);
  CHECK(j[0]["exps"] == Json::array({3, 1}));
  CHECK(poly_from_json(j) == p);
  CHECK(poly_from_json(Json::parse(j.dump())) == p);
  CHECK_THROWS_AS(poly_from_json(Json::parse(R"([{"exps":[1,0,0,1],"num":"1","den":"1"}])")), std::invalid_argument);
  CHECK_THROWS_AS(poly_from_json(Json::parse(R"([{"exps":[-1,0],"num":"1","den":"1"}])")), std::invalid_argument);
  CHECK_THROWS_AS(poly_from_json(Json::parse(R"({"exps":[1,0]})")), std::invalid_argument);
  LinMap m(1, Rat(-1, 2), 3, 4);
  CHECK(linmap_from_json(linmap_to_json(m)) == m);
}

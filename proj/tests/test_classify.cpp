#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gen.hpp"
#include "pythlab/classify.hpp"
#include "pythlab/parser.hpp"

using namespace pythlab;

namespace {

Poly P(const char* s) { return parse_poly(s); }
Poly S(const char* s) { return parse_poly(s, {"x", "y", "z"}); }

bool definite(const SurfaceVerdict& v) { return v.kind != VerdictKind::Unknown; }

}  // namespace

TEST_CASE("classify ladder") {
  auto a = classify_surface(P("y"));
  CHECK(a.kind == VerdictKind::Infinite);
  CHECK(a.rule == VerdictRule::Main);
  REQUIRE(a.admissibility);
  CHECK(verify_surface_verdict(P("y"), a));

  auto e8 = classify_surface(P("-x^3 - y^5"));
  CHECK(e8.kind == VerdictKind::Infinite);
  CHECK(e8.rule == VerdictRule::Main);

  auto a1 = classify_surface(P("-(x^2 + y^2)"));
  CHECK(a1.kind == VerdictKind::Finite);
  CHECK(a1.rule == VerdictRule::NegSos);
  CHECK_FALSE(a1.decomposition.empty());
  CHECK(verify_surface_verdict(P("-(x^2 + y^2)"), a1));

  auto zero = classify_surface(Poly());
  CHECK(zero.kind == VerdictKind::Unknown);
  CHECK(zero.rule == VerdictRule::None);

  auto sq = classify_surface(P("(x - y^2)^2"));
  CHECK(sq.kind == VerdictKind::Infinite);
  CHECK(sq.rule == VerdictRule::SquareDegenerate);
  REQUIRE(sq.square_root);
  CHECK(verify_surface_verdict(P("(x - y^2)^2"), sq));

  Poly sos = P("(y - x^2)^2 + 1");
  auto len = classify_surface(sos);
  CHECK(len.kind == VerdictKind::Infinite);
  CHECK(len.rule == VerdictRule::SosLength);
  CHECK(verify_surface_verdict(sos, len));
}

TEST_CASE("unknown verdicts carry a problem case") {
  Poly motzkin = P("x^2*y^4 + x^4*y^2 - 3*x^2*y^2 + 1");
  auto a = classify_surface(motzkin);
  CHECK(a.kind == VerdictKind::Unknown);
  CHECK(a.problem_case == "a");
  CHECK_FALSE(a.note.empty());

  auto b = classify_surface(-motzkin);
  CHECK(b.kind == VerdictKind::Unknown);
  CHECK(b.problem_case == "b");
}

TEST_CASE("verdict tampering is detected") {
  Poly f = P("-(x^2 + y^4)");
  auto v = classify_surface(f);
  REQUIRE(v.kind == VerdictKind::Finite);
  CHECK(verify_surface_verdict(f, v));
  CHECK_FALSE(verify_surface_verdict(P("-(x^2 + 2*y^4)"), v));
  SurfaceVerdict flipped = v;
  flipped.kind = VerdictKind::Infinite;
  CHECK_FALSE(verify_surface_verdict(f, flipped));
}

TEST_CASE("du Val table") {
  auto a1 = du_val({DuValFamily::A, 1});
  CHECK(a1.f == P("-x^2 - y^2"));
  CHECK(a1.equation == S("z^2 + x^2 + y^2"));
  CHECK(du_val_equation({DuValFamily::E8, 0}) == S("z^2 + x^3 + y^5"));
  CHECK(a1.verdict.kind == VerdictKind::Finite);
  auto a2 = du_val({DuValFamily::A, 2});
  CHECK(a2.f == P("-x^2 - y^3"));
  CHECK(a2.verdict.kind == VerdictKind::Infinite);
  auto d4 = du_val({DuValFamily::D, 4});
  CHECK(d4.f == P("-x^2*y - y^3"));
  CHECK(d4.verdict.kind == VerdictKind::Infinite);

  std::vector<DuValSpec> all;
  for (unsigned n = 1; n <= 8; ++n) all.push_back({DuValFamily::A, n});
  for (unsigned n = 4; n <= 8; ++n) all.push_back({DuValFamily::D, n});
  for (auto fam : {DuValFamily::E6, DuValFamily::E7, DuValFamily::E8}) all.push_back({fam, 0});
  for (const auto& spec : all) {
    CAPTURE(to_string(spec));
    auto r = du_val(spec);
    bool finite = spec.family == DuValFamily::A && spec.n % 2 == 1;
    CHECK(r.verdict.kind == (finite ? VerdictKind::Finite : VerdictKind::Infinite));
    CHECK(surface_to_f(r.equation) == r.f);
    CHECK(verify_surface_verdict(r.f, r.verdict));
  }
  CHECK_THROWS_AS(du_val_equation({DuValFamily::A, 0}), std::invalid_argument);
  CHECK_THROWS_AS(du_val_equation({DuValFamily::D, 3}), std::invalid_argument);
}

TEST_CASE("du Val parsing") {
  CHECK(to_string(parse_du_val("A3")) == "A3");
  CHECK(to_string(parse_du_val("A", 3)) == "A3");
  CHECK(parse_du_val("E7").family == DuValFamily::E7);
  CHECK(parse_du_val("D", 6).n == 6);
  CHECK_THROWS_AS(parse_du_val("F4"), std::invalid_argument);
  CHECK_THROWS_AS(parse_du_val("D2"), std::invalid_argument);
}

TEST_CASE("surface_to_f") {
  CHECK(surface_to_f(S("z^2 - y")) == P("y"));
  CHECK(surface_to_f(S("z^2 + x^2 + y^3")) == P("-x^2 - y^3"));
  CHECK(surface_to_f(S("2*z^2 - 4*x")) == P("2*x"));
  CHECK_THROWS_AS(surface_to_f(S("z^3 - y")), std::invalid_argument);
  CHECK_THROWS_AS(surface_to_f(S("z^2 + x*z")), std::invalid_argument);
  CHECK_THROWS_AS(surface_to_f(S("x - y")), std::invalid_argument);
}

TEST_CASE("invariance examples") {
  CHECK(classify_invariance_check(P("y"), LinMap(0, 1, 1, 0)));
  gen::Rng rng(7);
  for (int i = 0; i < 5; ++i) {
    LinMap m = gen::linmap(rng, 3, true);
    Poly f = P("-x^2 - y^4");
    CHECK(classify_surface(compose_linear(f, m)).kind == VerdictKind::Finite);
    CHECK(classify_invariance_check(f, m));
  }
  CHECK(classify_invariance_check(P("x^2*y^4 + x^4*y^2 - 3*x^2*y^2 + 1"), LinMap(1, 1, 0, 1)));
}

TEST_CASE("no contradictory evidence") {
  for (const char* s : {"y", "-x^2 - y^2", "x^2 + y^2", "x^3 - y^2", "-(x^2 + y^4)", "x*y", "x^4 + y^4 - x^2*y^2"}) {
    Poly f = P(s);
    auto v = classify_surface(f);
    CAPTURE(std::string(s));
    CHECK(verify_surface_verdict(f, v));
    if (v.kind == VerdictKind::Finite) CHECK_FALSE(v.admissibility);
    if (v.kind == VerdictKind::Infinite) CHECK(v.rule != VerdictRule::NegSos);
    CHECK(definite(v));
  }
}

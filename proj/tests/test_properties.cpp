#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gen.hpp"
#include "oracle.hpp"
#include "pythlab/admissibility.hpp"
#include "pythlab/classify.hpp"
#include "pythlab/exact_linalg.hpp"
#include "pythlab/parser.hpp"
#include "pythlab/polyops.hpp"
#include "pythlab/ringext.hpp"
#include "pythlab/sos.hpp"

using namespace pythlab;

namespace {

constexpr int kCases = 200;
constexpr std::uint64_t kSeed = 20240917;

Poly nonzero_poly(gen::Rng& rng, int max_deg, int terms, bool rational = false) {
  for (;;) {
    Poly p = gen::poly(rng, max_deg, terms, rational);
    if (!p.is_zero()) return p;
  }
}

// Unit vector from inverse stereographic projection of a random rational point.
std::vector<Rat> unit_vector(gen::Rng& rng, std::size_t n) {
  std::vector<Rat> t(n - 1);
  Rat s = 0;
  for (auto& v : t) {
    v = gen::small_rat(rng, 4, 5);
    s += v * v;
  }
  std::vector<Rat> out(n);
  for (std::size_t i = 0; i + 1 < n; ++i) out[i] = 2 * t[i] / (1 + s);
  out[n - 1] = (1 - s) / (1 + s);
  return out;
}

}  // namespace

TEST_CASE("compose and invert round trip") {
  gen::Rng rng(kSeed);
  for (int i = 0; i < kCases; ++i) {
    Poly f = nonzero_poly(rng, 5, 6, i % 2 == 1);
    LinMap m = gen::linmap(rng, 4, i % 3 == 0);
    Poly g = compose_linear(f, m);
    CHECK(compose_linear(g, m.inverse()) == f);
    CHECK(g.degree() == f.degree());
    CHECK(oracle::same(g, oracle::compose(oracle::table(f), m(0, 0), m(0, 1), m(1, 0), m(1, 1))));
    LinMap n = gen::linmap(rng, 3);
    CHECK(compose_linear(g, n) == compose_linear(f, m * n));
  }
}

TEST_CASE("divide_binomial recombines") {
  gen::Rng rng(kSeed + 1);
  for (int i = 0; i < kCases; ++i) {
    Poly f = gen::poly(rng, 7, 7, i % 2 == 0);
    unsigned r = static_cast<unsigned>(gen::uniform(rng, 1, 5));
    auto [q, rem] = divide_binomial(f, r);
    CHECK(q * binomial(r) + rem == f);
    CHECK(rem == substitute_power(f, r));
    CHECK((rem.is_zero() || leading_block(rem).d == 0));
  }
}

TEST_CASE("parse and print round trip") {
  gen::Rng rng(kSeed + 2);
  for (int i = 0; i < kCases; ++i) {
    Poly f = gen::poly(rng, 6, 8, true);
    CHECK(parse_poly(to_string(f)) == f);
  }
}

TEST_CASE("squares are recognised") {
  gen::Rng rng(kSeed + 3);
  for (int i = 0; i < kCases; ++i) {
    Poly g = nonzero_poly(rng, 4, 5, i % 2 == 0);
    auto root = is_perfect_square(g * g);
    REQUIRE(root);
    CHECK((*root == g || *root == -g));
    Rat c = gen::small_rat(rng);
    if (sgn(c) > 0) {
      auto rs = real_square_root(c * g * g);
      REQUIRE(rs);
      CHECK(rs->scale * rs->root * rs->root == c * g * g);
    }
    if (!g.is_constant()) CHECK_FALSE(is_perfect_square(g * g + Poly(1)));
  }
}

TEST_CASE("ring expansion identity") {
  gen::Rng rng(kSeed + 4);
  for (int i = 0; i < kCases; ++i) {
    Poly f = nonzero_poly(rng, 3, 3);
    if (real_square_root(f)) continue;
    std::vector<PolyPair> pairs;
    RingElem acc(Poly(), Poly(), f);
    for (long k = gen::uniform(rng, 1, 3); k > 0; --k) {
      PolyPair p{gen::poly(rng, 3, 3, true), gen::poly(rng, 3, 3, true)};
      pairs.push_back(p);
      RingElem u(p.first, p.second, f);
      acc = ring_add(acc, ring_mul(u, u));
    }
    SquareSum s = expand_square_sum(pairs, f);
    CHECK(s.sym == acc.h1());
    CHECK(s.cross == acc.h2());
  }
}

TEST_CASE("Householder reflections are orthogonal") {
  gen::Rng rng(kSeed + 5);
  for (int i = 0; i < kCases; ++i) {
    std::size_t n = static_cast<std::size_t>(gen::uniform(rng, 2, 6));
    std::vector<Rat> a = unit_vector(rng, n);
    RatMatrix h = householder_to_last(a);
    CHECK(h.transpose() * h == RatMatrix::identity(n));
    CHECK(h.is_symmetric());
    std::vector<Rat> e(n, Rat(0));
    e[n - 1] = 1;
    CHECK(h * a == e);
  }
}

TEST_CASE("emitted certificates verify") {
  gen::Rng rng(kSeed + 6);
  auto points = oracle::points(kSeed, 12);
  int decomposed = 0, inconclusive = 0;
  for (int i = 0; i < kCases; ++i) {
    Poly f;
    if (i % 2 == 0) {
      for (long k = gen::uniform(rng, 1, 3); k > 0; --k) {
        Poly g = gen::poly(rng, 2, 3);
        f += Rat(gen::uniform(rng, 1, 3)) * g * g;
      }
    } else {
      f = gen::poly(rng, 4, 5);
    }
    if (f.is_zero()) continue;
    SosCertificate cert = decompose_sos(f);
    CAPTURE(to_string(f));
    if (cert.kind == SosKind::Inconclusive) {
      ++inconclusive;
      continue;
    }
    CHECK(verify_certificate(f, cert));
    if (cert.kind == SosKind::Decomposition) {
      ++decomposed;
      CHECK(verify_decomposition(f, cert.squares));
      for (const auto& [px, py] : points) {
        std::array<Rat, 2> pt{px, py};
        CHECK(sgn(f.eval(pt)) >= 0);
      }
    }
    if (cert.kind == SosKind::NotSos && cert.dual) CHECK(verify_dual(f, *cert.dual));
    if (i % 2 == 0) CHECK(cert.kind != SosKind::NotSos);
  }
  MESSAGE("decompositions: " << decomposed << ", inconclusive: " << inconclusive);
  CHECK(inconclusive <= kCases / 20);
}

TEST_CASE("witnesses are sound") {
  gen::Rng rng(kSeed + 7);
  const char* bases[] = {"y", "x^3*y", "x^2 + y^3", "y - x^2", "x*y^2 - x^5", "-y^3 + x*y"};
  WitnessBudget budget;
  budget.height = 3;
  for (int i = 0; i < kCases; ++i) {
    Poly f = compose_linear(parse_poly(bases[i % 6]), gen::linmap(rng, 3));
    AdmissibilityVerdict v = find_witness(f, budget);
    CAPTURE(to_string(f));
    CHECK(verify_verdict(f, v));
    CHECK(v.kind != AdmissibilityKind::NotAdmissible);
    if (v.witness) CHECK(is_strictly_admissible(compose_linear(f, *v.witness)));
  }
}

TEST_CASE("classifier verdicts are stable under GL2") {
  gen::Rng rng(kSeed + 8);
  const char* fs[] = {"y", "-x^2 - y^2", "x^3 - y^2", "-(x^2 + y^4)", "x^2 - y^2", "(y - x^2)^2 + 1"};
  for (const char* s : fs) {
    Poly f = parse_poly(s);
    SurfaceVerdict base = classify_surface(f);
    for (int i = 0; i < 50; ++i) {
      LinMap m = gen::linmap(rng, 4, i % 2 == 1);
      CAPTURE(std::string(s));
      CAPTURE(to_string(m));
      CHECK(classify_invariance_check(f, m));
      SurfaceVerdict moved = classify_surface(compose_linear(f, m));
      CHECK(verify_surface_verdict(compose_linear(f, m), moved));
      if (base.kind != VerdictKind::Unknown && moved.kind != VerdictKind::Unknown) CHECK(moved.kind == base.kind);
    }
  }
}

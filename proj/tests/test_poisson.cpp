#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "freealg/poisson.hpp"

using namespace freealg;

namespace {

Poisson ctx2() {
  static Poisson c = makePoissonCtx(2, parseFieldSpec("Q"));
  return c;
}

}  // namespace

TEST_CASE("letter table is the Lyndon alphabet") {
  auto c = ctx2();
  CHECK(c->letterId({1}) == 0);
  CHECK(c->letterId({2}) == 1);
  CHECK(c->letterId({1, 2}) == 2);
  CHECK(c->letterWord(2) == std::vector<int>{1, 2});
  CHECK(c->letterDegree(2) == 2);
  CHECK_THROWS_AS(c->letterId({2, 1}), ElementError);
}

TEST_CASE("bracket of generator letters is the Lyndon letter [x1x2]") {
  auto c = ctx2();
  auto l1 = poissonLetter(c, c->letterId({1}));
  auto l2 = poissonLetter(c, c->letterId({2}));
  auto b = poissonBracket(l1, l2);
  REQUIRE(b.terms.size() == 1);
  CHECK(b.terms.begin()->first == std::vector<long>{c->letterId({1, 2})});
  CHECK(b.terms.begin()->second.isOne());
}

TEST_CASE("bracket with self vanishes") {
  auto c = ctx2();
  std::mt19937_64 rng(5);
  for (int it = 0; it < 20; ++it) {
    auto p = randomPoissonElement(c, 3, rng);
    CHECK(poissonBracket(p, p).isZero());
  }
}

TEST_CASE("Leibniz on a letter pair against a letter") {
  auto c = ctx2();
  auto l1 = poissonLetter(c, 0);
  auto l2 = poissonLetter(c, 1);
  auto l3 = poissonLetter(c, c->letterId({1, 2}));
  auto lhs = poissonBracket(poissonMultiply(l1, l2), l3);
  auto rhs = poissonMultiply(poissonBracket(l1, l3), l2) +
             poissonMultiply(l1, poissonBracket(l2, l3));
  CHECK(lhs == rhs);
}

TEST_CASE("multiply concatenates into the sorted canonical form") {
  auto c = ctx2();
  auto l1 = poissonLetter(c, 0);
  auto l2 = poissonLetter(c, 1);
  auto p = poissonMultiply(l1, l2);
  REQUIRE(p.terms.size() == 1);
  CHECK(p.terms.begin()->first == std::vector<long>({0, 1}));
  CHECK(poissonMultiply(l1, l2) == poissonMultiply(l2, l1));
  CHECK(p.totalDegree() == 2);
}

TEST_CASE("bracket agrees with the Lie bracket through fromLie") {
  auto c = ctx2();
  Field f = c->field();
  std::mt19937_64 rng(11);
  for (int it = 0; it < 20; ++it) {
    auto a = randomElement(Variety::Lie, 2, f, 3, rng);
    auto b = randomElement(Variety::Lie, 2, f, 3, rng);
    auto viaLie = fromLie(c, multiply(a, b));
    auto viaPoisson = poissonBracket(fromLie(c, a), fromLie(c, b));
    CHECK(viaLie == viaPoisson);
  }
}

TEST_CASE("bracket is a graded map for total degree") {
  auto c = ctx2();
  std::mt19937_64 rng(13);
  for (int it = 0; it < 20; ++it) {
    auto p = randomPoissonElement(c, 2, rng, 1);
    auto q = randomPoissonElement(c, 2, rng, 1);
    auto b = poissonBracket(p, q);
    if (!b.isZero()) CHECK(b.totalDegree() <= p.totalDegree() + q.totalDegree());
  }
}

TEST_CASE("identity suite: antisymmetry, Jacobi, Leibniz, associativity") {
  for (int n = 2; n <= 3; ++n) {
    auto rep = poissonIdentityCheck(n, parseFieldSpec("Q"), 4, 7);
    INFO(rep.violation);
    CHECK(rep.passed);
  }
  auto repP = poissonIdentityCheck(2, parseFieldSpec("GF(7)"), 4, 7);
  CHECK(repP.passed);
}

TEST_CASE("printing") {
  auto c = ctx2();
  auto e = poissonMultiply(poissonLetter(c, 0), poissonLetter(c, 2));
  CHECK(e.str() == "1 [1][1 2]");
  CHECK(poissonZero(c).str() == "0");
}

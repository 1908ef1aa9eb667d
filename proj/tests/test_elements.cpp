#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "freealg/elements.hpp"

using namespace freealg;

namespace {

Field Q() { return parseFieldSpec("Q"); }

FreeElement wordElem(Variety v, int n, const Field& f, const std::string& word) {
  // tiny helper: word given as generator digits, left-nested
  MagmaWord w = MagmaWord::leaf(word[0] - '0');
  for (size_t i = 1; i < word.size(); ++i)
    w = MagmaWord::pair(w, MagmaWord::leaf(word[i] - '0'));
  return normalForm(w, v, n, f);
}

// independent rank of a set of elements via incremental reduction
size_t spanRank(const Field& f, const std::vector<FreeElement>& elems) {
  DependenceReducer red(f);
  std::map<MonoKey, long> cols;
  for (const auto& e : elems) {
    SparseRow row;
    for (const auto& [k, c] : e.terms) {
      auto [it, unused] = cols.emplace(k, (long)cols.size());
      row.emplace(it->second, c);
    }
    red.addRow(std::move(row));
  }
  return red.rank();
}

// test-side nested-commutator evaluation, independent of the Lyndon machinery
FreeElement commutatorImage(const MagmaWord& w, int n, const Field& f) {
  if (w.isLeaf()) return generatorElement(Variety::Associative, n, f, w.generator());
  FreeElement l = commutatorImage(w.left(), n, f);
  FreeElement r = commutatorImage(w.right(), n, f);
  return multiply(l, r) - multiply(r, l);
}

}  // namespace

TEST_CASE("normal form per variety, spec cases") {
  Field f = Q();
  auto x1 = MagmaWord::leaf(1), x2 = MagmaWord::leaf(2);
  auto x1x2 = MagmaWord::pair(x1, x2);
  auto x1x1 = MagmaWord::pair(x1, x1);

  auto c = normalForm(x1x2, Variety::Commutative, 2, f);
  REQUIRE(c.terms.size() == 1);
  CHECK(c.terms.begin()->first == treeKey(MagmaWord::pair(x2, x1)));
  CHECK(c.terms.begin()->second.isOne());

  CHECK(normalForm(x1x1, Variety::Anticommutative, 2, f).isZero());

  auto j = normalForm(x1x2, Variety::SpecialJordan, 2, f);
  REQUIRE(j.terms.size() == 2);
  Scalar half = Scalar::fromInt(f, 2).inv();
  CHECK(j.terms.at(wordKey({1, 2})) == half);
  CHECK(j.terms.at(wordKey({2, 1})) == half);

  CHECK(normalForm(x1x2, Variety::TrivialMult, 2, f).isZero());
  CHECK_THROWS_AS(normalForm(x1x2, Variety::Poisson, 2, f), ElementError);
}

TEST_CASE("multiplication, spec cases") {
  Field f = Q();
  auto x1 = generatorElement(Variety::All, 2, f, 1);
  auto x2 = generatorElement(Variety::All, 2, f, 2);
  auto p = multiply(x1, multiply(x2, x1));
  REQUIRE(p.terms.size() == 1);
  CHECK(p.terms.begin()->first.sexpr(Variety::All) == "(* (g 1) (* (g 2) (g 1)))");

  auto q = wordElem(Variety::Anticommutative, 2, f, "21");
  CHECK(multiply(q, q).isZero());

  auto t1 = generatorElement(Variety::TrivialMult, 2, f, 1);
  auto t2 = generatorElement(Variety::TrivialMult, 2, f, 2);
  CHECK(multiply(t1, t2).isZero());
}

TEST_CASE("jordan circle product") {
  Field f = Q();
  auto p1 = generatorElement(Variety::SpecialJordan, 2, f, 1);
  auto p2 = generatorElement(Variety::SpecialJordan, 2, f, 2);
  auto c = jordanCirc(p1, p2);
  Scalar half = Scalar::fromInt(f, 2).inv();
  CHECK(c.terms.at(wordKey({1, 2})) == half);
  CHECK(c.terms.at(wordKey({2, 1})) == half);
  // circ(p, p) is the associative square
  auto sq = jordanCirc(p1, p1);
  REQUIRE(sq.terms.size() == 1);
  CHECK(sq.terms.at(wordKey({1, 1})).isOne());
  CHECK((jordanCirc(p1, p2) - jordanCirc(p2, p1)).isZero());
}

TEST_CASE("variety basis, spec cases") {
  Field f = Q();
  auto lie = varietyBasis(Variety::Lie, 2, 2, f);
  REQUIRE(lie.size() == 1);
  CHECK(lie[0].preimage.sexpr() == "(* (g 1) (g 2))");

  auto sj = varietyBasis(Variety::SpecialJordan, 2, 2, f);
  REQUIRE(sj.size() == 3);
  CHECK(sj[0].preimage.sexpr() == "(* (g 1) (g 1))");
  CHECK(sj[1].preimage.sexpr() == "(* (g 1) (g 2))");
  CHECK(sj[2].preimage.sexpr() == "(* (g 2) (g 2))");

  CHECK(varietyBasis(Variety::TrivialMult, 2, 2, f).empty());
  CHECK(varietyBasis(Variety::TrivialMult, 2, 1, f).size() == 2);
}

TEST_CASE("normal form is idempotent on basis preimages") {
  Field f = Q();
  for (Variety v : {Variety::All, Variety::Associative, Variety::Commutative,
                    Variety::Anticommutative, Variety::Lie, Variety::TrivialMult})
    for (int d = 1; d <= 4; ++d)
      for (const auto& b : varietyBasis(v, 2, d, f)) {
        CHECK(normalForm(b.preimage, v, 2, f) == b.payload);
        CHECK(b.payload.degree() == d);
      }
}

TEST_CASE("the quotient map is a homomorphism") {
  Field f = Q();
  for (Variety v : {Variety::All, Variety::Associative, Variety::Commutative,
                    Variety::Anticommutative, Variety::Lie, Variety::SpecialJordan,
                    Variety::TrivialMult}) {
    for (int d1 = 1; d1 <= 2; ++d1)
      for (int d2 = 1; d2 + d1 <= 5; ++d2)
        for (const auto& w1 : enumerateWords(2, d1))
          for (const auto& w2 : enumerateWords(2, d2)) {
            FreeElement lhs = normalForm(MagmaWord::pair(w1, w2), v, 2, f);
            FreeElement rhs = multiply(normalForm(w1, v, 2, f), normalForm(w2, v, 2, f));
            CHECK(lhs == rhs);
          }
  }
}

TEST_CASE("dimension oracle: basis size equals rank of normal-formed words") {
  Field f = Q();
  for (Variety v : {Variety::All, Variety::Associative, Variety::Commutative,
                    Variety::Anticommutative, Variety::Lie, Variety::SpecialJordan,
                    Variety::TrivialMult})
    for (int n = 1; n <= 2; ++n)
      for (int d = 1; d <= 4; ++d) {
        std::vector<FreeElement> images;
        for (const auto& w : enumerateWords(n, d))
          images.push_back(normalForm(w, v, n, f));
        CHECK(varietyBasis(v, n, d, f).size() == spanRank(f, images));
      }
}

TEST_CASE("dims table at n=2") {
  Field f = Q();
  auto dim = [&](Variety v, int d) { return varietyBasis(v, 2, d, f).size(); };
  CHECK(dim(Variety::All, 1) == 2);
  CHECK(dim(Variety::All, 2) == 4);
  CHECK(dim(Variety::All, 3) == 16);
  CHECK(dim(Variety::Commutative, 1) == 2);
  CHECK(dim(Variety::Commutative, 2) == 3);
  CHECK(dim(Variety::Commutative, 3) == 6);
  CHECK(dim(Variety::Anticommutative, 2) == 1);
  CHECK(dim(Variety::Anticommutative, 3) == 2);
  CHECK(dim(Variety::Lie, 2) == 1);
  CHECK(dim(Variety::Lie, 3) == 2);
}

TEST_CASE("Lie cross-check: commutator span rank equals Lyndon count") {
  Field f = Q();
  for (int n = 2; n <= 3; ++n)
    for (int d = 1; d <= (n == 2 ? 6 : 5); ++d) {
      std::vector<FreeElement> images;
      for (const auto& w : enumerateWords(n, d)) images.push_back(commutatorImage(w, n, f));
      CHECK(spanRank(f, images) == lyndonBasis(n, d).size());
    }
}

TEST_CASE("Lie normal form agrees with the commutator embedding") {
  Field f = Q();
  for (int d = 1; d <= 5; ++d)
    for (const auto& w : enumerateWords(2, d)) {
      FreeElement viaLyndon = lieToAssoc(normalForm(w, Variety::Lie, 2, f));
      CHECK(viaLyndon == commutatorImage(w, 2, f));
    }
}

TEST_CASE("evaluate_monomial, spec cases") {
  Field f = Q();
  auto y1y2 = MagmaWord::pair(MagmaWord::leaf(1), MagmaWord::leaf(2));
  auto e1 = generatorElement(Variety::Commutative, 2, f, 1);
  auto x1x1 = wordElem(Variety::Commutative, 2, f, "11");
  auto r = evaluateMonomial(y1y2, {e1, x1x1});
  REQUIRE(r.terms.size() == 1);
  CHECK(r.terms.begin()->first.sexpr(Variety::Commutative) == "(* (* (g 1) (g 1)) (g 1))");

  auto id = evaluateMonomial(MagmaWord::leaf(1), {x1x1});
  CHECK(id == x1x1);

  auto a = generatorElement(Variety::Anticommutative, 2, f, 1) +
           generatorElement(Variety::Anticommutative, 2, f, 2);
  CHECK(evaluateMonomial(MagmaWord::pair(MagmaWord::leaf(1), MagmaWord::leaf(1)), {a}).isZero());

  CHECK_THROWS_AS(evaluateMonomial(y1y2, {e1}), ElementError);
}

TEST_CASE("identity suites pass on random elements") {
  for (Variety v : {Variety::All, Variety::Associative, Variety::Commutative,
                    Variety::Anticommutative, Variety::Lie, Variety::SpecialJordan,
                    Variety::TrivialMult}) {
    auto rep = identityCheck(v, {}, 4, 7);
    INFO(varietyName(v), ": ", rep.violation);
    CHECK(rep.passed);
  }
}

TEST_CASE("Jordan proof identity (z o p^2) o p = p^2 o (z o p)") {
  Field f = Q();
  std::mt19937_64 rng(21);
  for (int it = 0; it < 30; ++it) {
    auto p = randomElement(Variety::SpecialJordan, 2, f, 3, rng);
    auto z = randomElement(Variety::SpecialJordan, 2, f, 3, rng);
    auto p2 = jordanCirc(p, p);
    CHECK(jordanCirc(jordanCirc(z, p2), p) == jordanCirc(p2, jordanCirc(z, p)));
  }
}

TEST_CASE("homogeneity: scaling preserves canonical supports") {
  Field f = parseFieldSpec("Q(t)");
  std::mt19937_64 rng(31);
  Scalar t = Scalar::variable(f, "t");
  for (int it = 0; it < 20; ++it) {
    auto a = randomElement(Variety::Commutative, 2, f, 2, rng);
    auto b = a.scaled(t);
    CHECK(multiply(a, a).terms.size() == multiply(b, b).terms.size());
  }
}

TEST_CASE("element printing") {
  Field f = Q();
  auto e = wordElem(Variety::Commutative, 2, f, "12") - generatorElement(Variety::Commutative, 2, f, 2);
  CHECK(e.str() == "-1 (g 2) + 1 (* (g 2) (g 1))");
  CHECK(zeroElement(Variety::All, 2, f).str() == "0");
}

TEST_CASE("unit adjunction is explicit and off by default") {
  Field f = Q();
  auto u = unitElement(Variety::SpecialJordan, 2, f);
  auto p = generatorElement(Variety::SpecialJordan, 2, f, 1);
  CHECK(jordanCirc(u, p) == p);
  CHECK_THROWS_AS(unitElement(Variety::Lie, 2, f), ElementError);
  for (int d = 1; d <= 3; ++d)
    for (const auto& b : varietyBasis(Variety::SpecialJordan, 2, d, f))
      CHECK(b.payload.terms.begin()->first.degree() >= 1);
}

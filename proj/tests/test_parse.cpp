#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>
#include <random>

#include "freealg/parse.hpp"

using namespace freealg;

TEST_CASE("leaf and sums") {
  Field f = parseFieldSpec("Q");
  auto x1 = parseElement("(g 1)", Variety::All, 2, f);
  CHECK(x1 == generatorElement(Variety::All, 2, f, 1));

  auto e = parseElement("1/2 (* (g 1) (g 2)) + -1 (g 2)", Variety::All, 2, f);
  auto want = normalForm(MagmaWord::pair(MagmaWord::leaf(1), MagmaWord::leaf(2)),
                         Variety::All, 2, f)
                  .scaled(Scalar::fromInt(f, 2).inv()) -
              generatorElement(Variety::All, 2, f, 2);
  CHECK(e == want);

  CHECK(parseElement("0", Variety::Lie, 2, f).isZero());
}

TEST_CASE("syntax errors carry positions") {
  Field f = parseFieldSpec("Q");
  CHECK_THROWS_AS(parseElement("(* (g 1)", Variety::All, 2, f), ParseError);
  CHECK_THROWS_AS(parseElement("(g 3)", Variety::All, 2, f), ParseError);
  CHECK_THROWS_AS(parseElement("(h 1)", Variety::All, 2, f), ParseError);
  CHECK_THROWS_AS(parseElement("2/0 (g 1)", Variety::All, 2, f), ParseError);
  CHECK_THROWS_AS(parseElement("  ", Variety::All, 2, f), ParseError);
  CHECK_THROWS_AS(parseElement("(g 1) junk", Variety::All, 2, f), ParseError);
}

TEST_CASE("scalars with field variables") {
  Field f = parseFieldSpec("Q(t)");
  auto e = parseElement("(1 + t) (g 1)", Variety::Lie, 2, f);
  Scalar c = Scalar::one(f) + Scalar::variable(f, "t");
  CHECK(e == generatorElement(Variety::Lie, 2, f, 1).scaled(c));
}

TEST_CASE("special-jordan words parse in the associative representation") {
  Field f = parseFieldSpec("Q");
  auto e = parseElement("1 (* (g 1) (g 2))", Variety::SpecialJordan, 2, f);
  REQUIRE(e.terms.size() == 1);  // the raw associative word, not its symmetrization
  CHECK(e.terms.begin()->first == wordKey({1, 2}));

  auto u = parseElement("(unit)", Variety::SpecialJordan, 2, f);
  CHECK(u == unitElement(Variety::SpecialJordan, 2, f));
  CHECK_THROWS_AS(parseElement("(unit)", Variety::Lie, 2, f), ElementError);
}

TEST_CASE("round-trip on library-produced elements") {
  std::mt19937_64 rng(47);
  for (const char* spec : {"Q", "Q(t)", "GF(7)(t)"}) {
    Field f = parseFieldSpec(spec);
    for (Variety v : {Variety::All, Variety::Associative, Variety::Commutative,
                      Variety::Anticommutative, Variety::Lie, Variety::SpecialJordan,
                      Variety::TrivialMult})
      for (int it = 0; it < 15; ++it) {
        auto e = randomElement(v, 2, f, 3, rng);
        CHECK(parseElement(e.str(), v, 2, f) == e);
      }
  }
}

TEST_CASE("freeness report json schema") {
  Field f = parseFieldSpec("Q(t)");
  auto z = generatorElement(Variety::TrivialMult, 1, f, 1);
  std::vector<FreeElement> elems = {z, z.scaled(Scalar::variable(f, "t"))};

  auto full = freenessTest(elems, Variety::TrivialMult, 1, Scope::FullField);
  auto j = nlohmann::json::parse(freenessReportJson(full));
  CHECK(j["variety"] == "trivial-mult");
  CHECK(j["n"] == 2);
  CHECK(j["degree"] == 1);
  CHECK(j["scope"] == "full-field");
  CHECK(j["verdict"] == "dependent");
  CHECK(j["dims"] == nlohmann::json::array({2}));
  REQUIRE(j["witness"].is_array());
  CHECK(j["witness"].size() == 2);
  CHECK(j["witness"][0].contains("coef"));
  CHECK(j["witness"][0].contains("monomial"));

  auto base = freenessTest(elems, Variety::TrivialMult, 1, Scope::BaseSubfield);
  auto jb = nlohmann::json::parse(freenessReportJson(base));
  CHECK(jb["verdict"] == "free-up-to-1");
  CHECK(jb["witness"].is_null());
}

TEST_CASE("mlm report json") {
  Field f = parseFieldSpec("Q(t)");
  auto a = generatorElement(Variety::Lie, 2, f, 1);
  auto b = generatorElement(Variety::Lie, 2, f, 2);
  auto rep = mlmCheck(Variety::Poisson, {a + b.scaled(Scalar::variable(f, "t")), b}, 3);
  auto j = nlohmann::json::parse(mlmReportJson(rep));
  CHECK(j["verdict"] == "mlm-consistent");
  CHECK(j["base"]["scope"] == "base-subfield");
  CHECK(j["full"]["scope"] == "full-field");
  CHECK(j.contains("letterBase"));
}

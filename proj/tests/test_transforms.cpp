#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "freealg/transforms.hpp"

using namespace freealg;

namespace {

GeneratorTuple genTuple(Variety v, int n, const Field& f) {
  GeneratorTuple t;
  for (int g = 1; g <= n; ++g) t.items.push_back(generatorElement(v, n, f, g));
  return t;
}

ScalarMatrix mat2(const Field& f, long a, long b, long c, long d) {
  ScalarMatrix m = ScalarMatrix::make(f, 2, 2);
  m.at(0, 0) = Scalar::fromInt(f, a);
  m.at(0, 1) = Scalar::fromInt(f, b);
  m.at(1, 0) = Scalar::fromInt(f, c);
  m.at(1, 1) = Scalar::fromInt(f, d);
  return m;
}

}  // namespace

TEST_CASE("elem_linear basic moves") {
  Field f = parseFieldSpec("Q");
  auto t = genTuple(Variety::Lie, 2, f);

  auto swapped = elemLinear(t, mat2(f, 0, 1, 1, 0));
  CHECK(swapped.items[0] == t.items[1]);
  CHECK(swapped.items[1] == t.items[0]);

  auto same = elemLinear(t, mat2(f, 1, 0, 0, 1));
  CHECK(same.items[0] == t.items[0]);
  CHECK(same.items[1] == t.items[1]);

  auto shear = elemLinear(t, mat2(f, 1, 1, 0, 1));
  CHECK(shear.items[0] == t.items[0] + t.items[1]);
  CHECK(shear.items[1] == t.items[1]);

  CHECK_THROWS_AS(elemLinear(t, mat2(f, 1, 2, 2, 4)), ElementError);
}

TEST_CASE("elem_linear composition is matrix multiplication") {
  Field f = parseFieldSpec("Q");
  auto t = genTuple(Variety::Anticommutative, 2, f);
  auto a = mat2(f, 1, 2, 0, 1);
  auto b = mat2(f, 1, 0, 3, 1);
  auto viaSteps = elemLinear(elemLinear(t, b), a);
  // (a*b) entries
  ScalarMatrix ab = ScalarMatrix::make(f, 2, 2);
  for (size_t i = 0; i < 2; ++i)
    for (size_t j = 0; j < 2; ++j) {
      Scalar s = Scalar::zero(f);
      for (size_t k = 0; k < 2; ++k) s = s + a.at(i, k) * b.at(k, j);
      ab.at(i, j) = s;
    }
  auto direct = elemLinear(t, ab);
  CHECK(viaSteps.items[0] == direct.items[0]);
  CHECK(viaSteps.items[1] == direct.items[1]);
}

TEST_CASE("elem_substitute and its inverse") {
  Field f = parseFieldSpec("Q");
  auto t = genTuple(Variety::Anticommutative, 2, f);

  FormalExpr u;
  u.terms.push_back({Scalar::one(f), MagmaWord::pair(MagmaWord::leaf(1), MagmaWord::leaf(1))});
  auto moved = elemSubstitute(t, u);
  CHECK(moved.items[0] == t.items[0]);
  CHECK(moved.items[1] == t.items[1] + multiply(t.items[0], t.items[0]));

  FormalExpr zero;
  auto same = elemSubstitute(t, zero);
  CHECK(same.items[1] == t.items[1]);

  FormalExpr minus;
  minus.terms.push_back({-Scalar::one(f), u.terms[0].second});
  auto back = elemSubstitute(moved, minus);
  CHECK(back.items[0] == t.items[0]);
  CHECK(back.items[1] == t.items[1]);

  FormalExpr bad;
  bad.terms.push_back({Scalar::one(f), MagmaWord::leaf(2)});
  CHECK_THROWS_AS(elemSubstitute(t, bad), ElementError);
}

TEST_CASE("annihilator kernel: q = a in the Lie host") {
  Field f = parseFieldSpec("Q");
  auto a = generatorElement(Variety::Lie, 2, f, 1);
  auto rep = annihilatorCheck(a, Variety::Lie, 3);
  CHECK(rep.kernelIsSpanQ);
  REQUIRE(rep.kernelBasis.size() == 1);
  CHECK(multiply(rep.kernelBasis[0], a).isZero());
  CHECK(rep.kernelDims == std::vector<size_t>{1, 0, 0});
}

TEST_CASE("annihilator kernel: q = [a,b] to degree 4") {
  Field f = parseFieldSpec("Q");
  auto a = generatorElement(Variety::Lie, 2, f, 1);
  auto b = generatorElement(Variety::Lie, 2, f, 2);
  auto q = multiply(a, b);
  auto rep = annihilatorCheck(q, Variety::Lie, 4);
  CHECK(rep.kernelIsSpanQ);
  REQUIRE(rep.kernelBasis.size() == 1);
  CHECK(multiply(rep.kernelBasis[0], q).isZero());
}

TEST_CASE("anticommutative q annihilates itself") {
  Field f = parseFieldSpec("Q");
  auto x1 = generatorElement(Variety::Anticommutative, 2, f, 1);
  auto x2 = generatorElement(Variety::Anticommutative, 2, f, 2);
  auto q = multiply(x2, x1);
  CHECK(multiply(q, q).isZero());
  auto rep = annihilatorCheck(q, Variety::Anticommutative, 4);
  CHECK(rep.kernelIsSpanQ);
}

TEST_CASE("random q kernels stay one-dimensional") {
  Field f = parseFieldSpec("Q");
  std::mt19937_64 rng(41);
  for (Variety v : {Variety::Lie, Variety::Anticommutative})
    for (int it = 0; it < 10; ++it) {
      auto q = randomElement(v, 2, f, 3, rng);
      if (q.isZero()) continue;
      auto rep = annihilatorCheck(q, v, 4);
      INFO(varietyName(v), " it=", it);
      CHECK(rep.kernelIsSpanQ);
      CHECK(rep.violators.empty());
    }
}

TEST_CASE("elementary moves preserve freeness verdicts") {
  Field f = parseFieldSpec("Q(t)");
  Scalar t = Scalar::variable(f, "t");
  std::mt19937_64 rng(43);
  for (Variety v : {Variety::Lie, Variety::Anticommutative}) {
    GeneratorTuple tup = genTuple(v, 2, f);
    tup.items[0] = tup.items[0] + tup.items[1].scaled(t);
    for (Scope s : {Scope::FullField, Scope::BaseSubfield}) {
      bool before = freenessTest(tup.items, v, 3, s).free;
      auto moved = elemLinear(tup, mat2(f, 1, 2, 1, 3));
      FormalExpr u;
      u.terms.push_back({Scalar::fromInt(f, (long)(rng() % 5) - 2),
                         MagmaWord::pair(MagmaWord::leaf(1), MagmaWord::leaf(1))});
      moved = elemSubstitute(moved, u);
      CHECK(freenessTest(moved.items, v, 3, s).free == before);
    }
  }
}

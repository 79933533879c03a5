#include <doctest.h>

#include <stdexcept>
#include <vector>

#include <bloch/families.hpp>
#include <bloch/floquet.hpp>
#include <bloch/io.hpp>

#include "testutil.hpp"

using namespace bloch;

namespace {

// the Lieb lattice expressed as a flower: two 2-cycle petals on the stem
FlowerSpec liebFlower() {
  FlowerSpec spec;
  spec.dim = 2;
  spec.stemVertices = {{"u", Rational(1)}};
  Petal pv;
  pv.length = 2;
  pv.generator = 1;
  pv.distinguishedEdge = 1;
  pv.potentials = {Rational(2)};
  pv.weights = {Rational(1), Rational(2)};
  pv.names = {"v"};
  Petal pw;
  pw.length = 2;
  pw.generator = 2;
  pw.distinguishedEdge = 1;
  pw.potentials = {Rational(3)};
  pw.weights = {Rational(3), Rational(5)};
  pw.names = {"w"};
  spec.petals = {pv, pw};
  return spec;
}

// the two-vertex house as a flower: one 2-cycle petal plus two loops
FlowerSpec houseFlower() {
  FlowerSpec spec;
  spec.dim = 2;
  spec.stemVertices = {{"u", Rational(3)}};
  Petal arch;
  arch.length = 2;
  arch.generator = 1;
  arch.distinguishedEdge = 0;
  arch.potentials = {Rational(0)};
  arch.weights = {Rational(1), Rational(3)};
  arch.names = {"v"};
  Petal loop1;
  loop1.length = 1;
  loop1.generator = 1;
  loop1.weights = {Rational(-2)};
  Petal loop2;
  loop2.length = 1;
  loop2.generator = 2;
  loop2.weights = {Rational(-2)};
  spec.petals = {arch, loop1, loop2};
  return spec;
}

}  // namespace

TEST_SUITE("families") {

TEST_CASE("hasTwoCyclePetal looks only at petal lengths") {
  CHECK(hasTwoCyclePetal(liebFlower()));
  FlowerSpec longPetals = liebFlower();
  for (auto& p : longPetals.petals) {
    p.length = 3;
    p.potentials = {Rational(1), Rational(2)};
    p.weights = {Rational(1), Rational(1), Rational(1)};
  }
  CHECK(!hasTwoCyclePetal(longPetals));
}

TEST_CASE("the Lieb flower rebuilds the hand-made Lieb lattice exactly") {
  PeriodicGraph fromFlower = buildFlower(liebFlower());
  PeriodicGraph direct = testutil::makeLieb(Rational(1), Rational(2), Rational(3), Rational(1),
                                            Rational(2), Rational(3), Rational(5));
  CHECK(canonicalGraphText(fromFlower) == canonicalGraphText(direct));
}

TEST_CASE("loop petals land on the stem diagonal: the house flower") {
  PeriodicGraph fromFlower = buildFlower(houseFlower());
  PeriodicGraph direct = testutil::makeHouse(Rational(3), Rational(0), Rational(3), Rational(2),
                                             Rational(2), Rational(1));
  CHECK(canonicalGraphText(fromFlower) == canonicalGraphText(direct));
}

TEST_CASE("a length-3 petal introduces one internal path") {
  FlowerSpec spec;
  spec.dim = 1;
  spec.stemVertices = {{"u", Rational(0)}};
  Petal p;
  p.length = 3;
  p.generator = 1;
  p.distinguishedEdge = 0;
  p.potentials = {Rational(4), Rational(5)};
  p.weights = {Rational(1), Rational(2), Rational(3)};
  spec.petals = {p};
  PeriodicGraph g = buildFlower(spec);
  REQUIRE(g.vertices.size() == 3);
  CHECK(g.vertices[0].name == "u");
  CHECK(g.vertices[1].potential == Rational(4));
  CHECK(g.vertices[2].potential == Rational(5));
  REQUIRE(g.orbits.size() == 3);
  // exactly one orbit carries the generator shift
  int shifted = 0;
  for (const auto& e : g.orbits)
    if (!isZeroShift(e.shift)) ++shifted;
  CHECK(shifted == 1);
  CHECK(isConnected(g));
}

TEST_CASE("buildFlower rejects malformed specs") {
  FlowerSpec spec = liebFlower();
  spec.petals[0].generator = 3;
  CHECK_THROWS_AS(buildFlower(spec), std::invalid_argument);

  spec = liebFlower();
  spec.petals[1].generator = 1;  // generator 2 uncovered
  CHECK_THROWS_AS(buildFlower(spec), std::invalid_argument);

  spec = liebFlower();
  spec.petals[0].weights.pop_back();
  CHECK_THROWS_AS(buildFlower(spec), std::invalid_argument);

  spec = liebFlower();
  spec.petals[0].potentials.clear();
  CHECK_THROWS_AS(buildFlower(spec), std::invalid_argument);

  spec = liebFlower();
  spec.petals[0].weights[0] = Rational(0);
  CHECK_THROWS_AS(buildFlower(spec), std::invalid_argument);

  spec = liebFlower();
  spec.petals[0].distinguishedEdge = 2;
  CHECK_THROWS_AS(buildFlower(spec), std::invalid_argument);

  spec = liebFlower();
  spec.petals.clear();
  CHECK_THROWS_AS(buildFlower(spec), std::invalid_argument);

  spec = liebFlower();
  spec.stemVertices.clear();
  CHECK_THROWS_AS(buildFlower(spec), std::invalid_argument);
}

TEST_CASE("buildIsthmus lays out blocks, isthmus and attachments in order") {
  PeriodicGraph g = buildIsthmus(testutil::makeNineSpec());
  REQUIRE(g.vertices.size() == 9);
  REQUIRE(g.isthmus.has_value());
  CHECK(g.isthmus->a == 3);
  CHECK(g.isthmus->m == 3);
  CHECK(g.isthmus->b == 3);
  CHECK(g.isthmus->f == std::vector<int>{3, 1});
  CHECK(isConnected(g));

  // isthmus vertices sit between the blocks with their given potentials
  CHECK(g.vertices[3].potential == Rational(4));
  CHECK(g.vertices[5].potential == Rational(6));

  FloquetMatrix H = floquetMatrix(g);
  // generator 1 attaches at isthmus position 3 (graph index 5), generator 2
  // at position 1 (graph index 3)
  LaurentPoly d1 = LaurentPoly::constant(2, Rational(6)) + LaurentPoly::zterm(2, 0, 1) +
                   LaurentPoly::zterm(2, 0, -1);
  LaurentPoly d2 = LaurentPoly::constant(2, Rational(4)) + LaurentPoly::zterm(2, 1, 1) +
                   LaurentPoly::zterm(2, 1, -1);
  CHECK(H.entries[5][5] == d1);
  CHECK(H.entries[3][3] == d2);
  // cut edges connect the last A vertex and the first B vertex to the path
  CHECK(H.entries[2][3] == LaurentPoly::constant(2, Rational(1)));
  CHECK(H.entries[5][6] == LaurentPoly::constant(2, Rational(1)));
  // no direct block-to-block entry
  CHECK(H.entries[2][6].isZero());
}

TEST_CASE("empty blocks collapse to the bare isthmus") {
  PeriodicGraph g = buildIsthmus(testutil::makePathSpec());
  REQUIRE(g.vertices.size() == 2);
  CHECK(g.isthmus->a == 0);
  CHECK(g.isthmus->b == 0);
  CHECK(g.isthmus->m == 2);
  // one path edge plus one periodic loop per generator
  CHECK(g.orbits.size() == 3);
  CHECK(isConnected(g));
}

TEST_CASE("buildIsthmus rejects malformed specs") {
  IsthmusSpec spec = testutil::makeNineSpec();
  spec.f = {4, 1};
  CHECK_THROWS_AS(buildIsthmus(spec), std::invalid_argument);

  spec = testutil::makeNineSpec();
  spec.f = {1};
  CHECK_THROWS_AS(buildIsthmus(spec), std::invalid_argument);

  spec = testutil::makeNineSpec();
  spec.isthmusPotentials.clear();
  spec.pathWeights.clear();
  CHECK_THROWS_AS(buildIsthmus(spec), std::invalid_argument);

  spec = testutil::makeNineSpec();
  spec.pathWeights = {Rational(1)};
  CHECK_THROWS_AS(buildIsthmus(spec), std::invalid_argument);

  spec = testutil::makeNineSpec();
  spec.periodicWeights[0] = Rational(0);
  CHECK_THROWS_AS(buildIsthmus(spec), std::invalid_argument);

  spec = testutil::makeNineSpec();
  spec.cutA = Rational(0);
  CHECK_THROWS_AS(buildIsthmus(spec), std::invalid_argument);

  spec = testutil::makeNineSpec();
  spec.blockA.edges[0].v = 9;
  CHECK_THROWS_AS(buildIsthmus(spec), std::invalid_argument);
}

TEST_CASE("parallelExtension adds one loop per vertex in the new direction") {
  PeriodicGraph base = testutil::makeLieb(Rational(1), Rational(2), Rational(3), Rational(1),
                                          Rational(2), Rational(3), Rational(5));
  Rational a(1, 2);
  PeriodicGraph ext = parallelExtension(base, a);
  CHECK(ext.dim == 3);
  CHECK(ext.vertices.size() == base.vertices.size());
  CHECK(ext.orbits.size() == base.orbits.size() + base.vertices.size());

  int loops = 0;
  for (const auto& e : ext.orbits) {
    REQUIRE(e.shift.size() == 3);
    if (e.u == e.v && e.shift == std::vector<int>{0, 0, 1}) {
      CHECK(e.weight == a);
      ++loops;
    } else {
      CHECK(e.shift[2] == 0);
    }
  }
  CHECK(loops == static_cast<int>(base.vertices.size()));
  CHECK(validate(ext).empty());
  CHECK(isConnected(ext));

  CHECK_THROWS_AS(parallelExtension(base, Rational(0)), std::invalid_argument);
}

TEST_CASE("seeded spec generators produce buildable inputs") {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 6; ++t) {
    FlowerSpec fs = testutil::randomFlowerSpec(rng, 1 + t % 3);
    PeriodicGraph fg = buildFlower(fs);
    CHECK(validate(fg).empty());
    CHECK(isConnected(fg));
  }
  for (int t = 0; t < 6; ++t) {
    IsthmusSpec is = testutil::randomIsthmusSpec(rng);
    PeriodicGraph ig = buildIsthmus(is);
    CHECK(validate(ig).empty());
    CHECK(isConnected(ig));
  }
}

}  // TEST_SUITE

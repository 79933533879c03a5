#include <doctest.h>

#include <stdexcept>
#include <vector>

#include <bloch/rational.hpp>
#include <bloch/unipoly.hpp>

using namespace bloch;

namespace {

// convenience: polynomial with the given roots, leading coefficient 1
UniPoly fromRoots(const std::vector<Rational>& roots) {
  UniPoly p = UniPoly::constant(Rational(1));
  for (const auto& r : roots) p = p * (UniPoly::lambda() - UniPoly::constant(r));
  return p;
}

}  // namespace

TEST_SUITE("unipoly") {

TEST_CASE("ring operations expand as expected") {
  UniPoly L = UniPoly::lambda();
  UniPoly p = (L - UniPoly::constant(Rational(1))) * (L + UniPoly::constant(Rational(1)));
  CHECK(p.degree() == 2);
  CHECK(p.coeff(2) == Rational(1));
  CHECK(p.coeff(1) == Rational(0));
  CHECK(p.coeff(0) == Rational(-1));

  UniPoly q = p - p;
  CHECK(q.isZero());
  CHECK(q.degree() == -1);

  UniPoly cubic = fromRoots({Rational(1), Rational(2), Rational(3)});
  CHECK(cubic(Rational(1)).isZero());
  CHECK(cubic(Rational(2)).isZero());
  CHECK(cubic(Rational(4)) == Rational(6));
  CHECK(cubic.evalDouble(4.0) == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("derivative follows the power rule") {
  // 3L^3 - L + 5 -> 9L^2 - 1
  UniPoly p = Rational(3) * UniPoly::term(Rational(1), 3) - UniPoly::lambda() +
              UniPoly::constant(Rational(5));
  UniPoly dp = p.derivative();
  CHECK(dp.degree() == 2);
  CHECK(dp.coeff(2) == Rational(9));
  CHECK(dp.coeff(1) == Rational(0));
  CHECK(dp.coeff(0) == Rational(-1));
  CHECK(UniPoly::constant(Rational(7)).derivative().isZero());
}

TEST_CASE("divExact divides exactly and rejects remainders") {
  UniPoly p = fromRoots({Rational(1), Rational(-2), Rational(1, 2)});
  UniPoly q = fromRoots({Rational(-2)});
  UniPoly quot = p.divExact(q);
  CHECK(quot * q == p);
  CHECK_THROWS_AS(p.divExact(fromRoots({Rational(3)})), std::invalid_argument);
}

TEST_CASE("gcd finds the exact common factor") {
  UniPoly a = fromRoots({Rational(1), Rational(2)});
  UniPoly b = fromRoots({Rational(2), Rational(3)});
  UniPoly g = gcd(a, b);
  CHECK(g.monic() == fromRoots({Rational(2)}));

  // coprime polynomials have constant gcd
  CHECK(gcd(fromRoots({Rational(0)}), fromRoots({Rational(1)})).degree() == 0);

  // gcd with zero returns the other argument
  CHECK(gcd(UniPoly(), a) == a);
  CHECK(gcd(a, UniPoly()) == a);
}

TEST_CASE("squarefree machinery strips multiplicities") {
  UniPoly p = fromRoots({Rational(1), Rational(1), Rational(-2)});
  CHECK(squarefreePart(p).monic() == fromRoots({Rational(1), Rational(-2)}));

  // Yun decomposition: factors[i] collects the roots of multiplicity i+1
  UniPoly q = fromRoots({Rational(0), Rational(1), Rational(1), Rational(2), Rational(2),
                         Rational(2)});
  auto factors = squarefreeDecomposition(q);
  REQUIRE(factors.size() == 3);
  CHECK(factors[0].monic() == fromRoots({Rational(0)}));
  CHECK(factors[1].monic() == fromRoots({Rational(1)}));
  CHECK(factors[2].monic() == fromRoots({Rational(2)}));
}

TEST_CASE("realRoots isolates simple irrational roots") {
  // L^2 - 2: roots match +-sqrt(2) to the guaranteed isolation width
  UniPoly p = UniPoly::term(Rational(1), 2) - UniPoly::constant(Rational(2));
  auto roots = realRoots(p);
  REQUIRE(roots.size() == 2);
  CHECK(roots[0].approx() == doctest::Approx(-1.41421356237).epsilon(1e-9));
  CHECK(roots[1].approx() == doctest::Approx(1.41421356237).epsilon(1e-9));
  for (const auto& r : roots) {
    CHECK(r.multiplicity == 1);
    CHECK(!r.isExact());
    // the isolating interval brackets a sign change
    CHECK(p(r.lo) * p(r.hi) < Rational(0));
  }
}

TEST_CASE("realRoots reports rational roots exactly with multiplicities") {
  UniPoly p = fromRoots({Rational(1, 3), Rational(1, 3), Rational(-5, 2)});
  auto roots = realRoots(p);
  REQUIRE(roots.size() == 2);
  CHECK(roots[0].isExact());
  CHECK(roots[0].lo == Rational(-5, 2));
  CHECK(roots[0].multiplicity == 1);
  CHECK(roots[1].isExact());
  CHECK(roots[1].lo == Rational(1, 3));
  CHECK(roots[1].multiplicity == 2);
  CHECK_THROWS_AS(realRoots(UniPoly()), std::invalid_argument);
}

TEST_CASE("realRoots finds nothing for definite polynomials") {
  UniPoly p = UniPoly::term(Rational(1), 2) + UniPoly::constant(Rational(1));
  CHECK(realRoots(p).empty());
}

TEST_CASE("refineRoot narrows an isolating interval") {
  UniPoly p = UniPoly::term(Rational(1), 2) - UniPoly::constant(Rational(2));
  auto roots = realRoots(p);
  RootInterval tight = refineRoot(p, roots[1], Rational(1, Integer(1) << 60));
  CHECK(tight.hi - tight.lo < Rational(1, Integer(1) << 60));
  CHECK(tight.approx() == doctest::Approx(1.4142135623730951).epsilon(1e-14));
}

TEST_CASE("sharesRoot distinguishes exact common roots") {
  UniPoly a = UniPoly::term(Rational(1), 2) - UniPoly::constant(Rational(2));
  UniPoly b = UniPoly::term(Rational(1), 2) - UniPoly::constant(Rational(3));
  auto rootsA = realRoots(a);
  CHECK(sharesRoot(a, a, rootsA[0]));
  CHECK(!sharesRoot(b, a, rootsA[0]));

  // exact interval: membership decided by evaluation
  RootInterval at{Rational(2), Rational(2), 1};
  CHECK(sharesRoot(fromRoots({Rational(2)}), fromRoots({Rational(2)}), at));
  CHECK(!sharesRoot(fromRoots({Rational(1)}), fromRoots({Rational(2)}), at));
}

TEST_CASE("resultant vanishes exactly on common roots") {
  UniPoly a = UniPoly::term(Rational(1), 2) - UniPoly::constant(Rational(2));
  UniPoly b = UniPoly::term(Rational(1), 2) - UniPoly::constant(Rational(3));
  // Res(L^2-2, L^2-3) = (2-3)^2 = 1
  CHECK(sylvesterResultant(a, b) == Rational(1));
  CHECK(sylvesterResultant(a, a) == Rational(0));
  CHECK(sylvesterResultant(fromRoots({Rational(1), Rational(2)}),
                           fromRoots({Rational(2), Rational(5)})) == Rational(0));
  // degenerate conventions: zero polynomial -> 0, two constants -> 1
  CHECK(sylvesterResultant(UniPoly(), a) == Rational(0));
  CHECK(sylvesterResultant(UniPoly::constant(Rational(4)),
                           UniPoly::constant(Rational(9))) == Rational(1));
}

TEST_CASE("resultant matches the root-product formula") {
  // Res(f,g) = lc(f)^deg g * prod g(alpha) over roots alpha of f;
  // for f = 2(L-1)(L-4), g = 3(L-2): lc(f)^1 * g(1)*g(4) = 2 * (-3) * 6 = -36
  UniPoly f = Rational(2) * fromRoots({Rational(1), Rational(4)});
  UniPoly g = Rational(3) * fromRoots({Rational(2)});
  CHECK(sylvesterResultant(f, g) == Rational(-36));
  // swapping picks up (-1)^{deg f * deg g}, here even
  CHECK(sylvesterResultant(g, f) == Rational(-36));
}

TEST_CASE("gcdAndRealRoots combines both answers") {
  UniPoly a = fromRoots({Rational(0), Rational(1)});
  UniPoly b = fromRoots({Rational(0), Rational(2)});
  auto [g, roots] = gcdAndRealRoots({a, b});
  CHECK(g.monic() == fromRoots({Rational(0)}));
  REQUIRE(roots.size() == 1);
  CHECK(roots[0].lo == Rational(0));

  auto [c, none] = gcdAndRealRoots({a, fromRoots({Rational(5)})});
  CHECK(c.degree() == 0);
  CHECK(none.empty());

  CHECK_THROWS_AS(gcdAndRealRoots({UniPoly(), UniPoly()}), std::invalid_argument);
}

TEST_CASE("simplestBetween returns the smallest-denominator witness") {
  // verify minimality by brute force over all smaller denominators
  auto check = [](const Rational& lo, const Rational& hi) {
    Rational r = detail::simplestBetween(lo, hi);
    CHECK(lo <= r);
    CHECK(r <= hi);
    Integer den = r.denominator();
    for (Integer q(1); q < den; ++q) {
      Integer first = bloch::detail::ceilOf(lo * Rational(q));
      bool hit = false;
      for (Integer p = first; Rational(p, q) <= hi; ++p)
        if (Rational(p, q) >= lo) hit = true;
      CHECK(!hit);
    }
  };
  check(Rational(1, 3), Rational(1, 2));
  check(Rational(-7, 5), Rational(-4, 3));
  check(Rational(113, 355), Rational(106, 333));
  check(Rational(5), Rational(5));
}

}  // TEST_SUITE

// Acceptance suite: runs the ten release criteria end to end and prints one
// [PASS]/[FAIL] line per criterion.  Exit code is the number of failures.
// Every tolerance and time budget is pinned here, not read from anywhere.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "bloch/certify.hpp"
#include "testutil.hpp"

using namespace bloch;

namespace {

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& msg) {
  if (!cond) throw Failure(msg);
}

const char* kBundled[] = {
    "chain.graph",         "chain_linear.graph",
    "flower_house.graph",  "flower_lieb.graph",
    "flower_three_petals.graph", "hexagonal.graph",
    "isthmus_nine.graph",  "isthmus_path.graph",
    "isthmus_square_decoration.graph", "lieb.graph",
    "lieb_schrodinger.graph", "singular_house_1.graph",
    "singular_house_2.graph", "singular_house_3.graph",
};

constexpr double kResidualBound = 1e-10;   // critical point equation residual
constexpr double kLineSnapBound = 1e-6;    // distance of census lines to the
                                           // algebraically predicted energies

// ---------------------------------------------------------------------------
// 1. dispersion polynomials reproduce the closed-form displays

std::string criterion1() {
  int checked = 0;
  for (std::uint64_t seed : {101u, 102u, 103u}) {
    std::mt19937_64 rng(seed);
    Rational pu = testutil::randomRational(rng);
    Rational pv = testutil::randomRational(rng);
    Rational pw = testutil::randomRational(rng);
    Rational b = testutil::randomNonzeroRational(rng);
    Rational d = testutil::randomNonzeroRational(rng);
    Rational a = testutil::randomNonzeroRational(rng);
    Rational c = testutil::randomNonzeroRational(rng);

    LaurentPoly lieb = dispersionPolynomial(testutil::makeLieb(pu, pv, pw, b, d, a, c));
    LaurentPoly liebDisplay = testutil::liebDispersion(pu, pv, pw, b, d, a, c);
    require(lieb == liebDisplay || lieb == -liebDisplay,
            "Lieb dispersion differs from the display at seed " + std::to_string(seed));

    LaurentPoly house = dispersionPolynomial(testutil::makeHouse(pu, pv, b, d, a, c));
    LaurentPoly houseDisplay = testutil::houseDispersion(pu, pv, b, d, a, c);
    require(house == houseDisplay || house == -houseDisplay,
            "house dispersion differs from the display at seed " + std::to_string(seed));
    checked += 2;
  }
  return std::to_string(checked) + " dispersion polynomials match their displays exactly";
}

// ---------------------------------------------------------------------------
// 2. corner count and residuals on every bundled graph

std::string criterion2() {
  for (const char* file : kBundled) {
    auto t0 = std::chrono::steady_clock::now();
    PeriodicGraph g = loadGraph(testutil::graphPath(file));
    LaurentPoly D = dispersionPolynomial(g);
    auto corners = cornerSpectrum(D);
    int total = 0;
    for (const auto& cp : corners) total += cp.multiplicity;
    int expected = (1 << g.dim) * static_cast<int>(g.vertices.size());
    require(total == expected, std::string(file) + ": corner pair count " +
                                   std::to_string(total) + " != " + std::to_string(expected));
    DispersionSystem sys(D);
    for (const auto& cp : corners) {
      double r = sys.residual(cp.k, cp.lambdaApprox);
      require(r < kResidualBound, std::string(file) + ": corner residual " +
                                      std::to_string(r) + " exceeds 1e-10");
    }
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    require(dt < 1.0, std::string(file) + ": corner spectrum took " + std::to_string(dt) + "s");
  }
  return "2^d |W| corner pairs with residual < 1e-10 on all 14 bundled graphs";
}

// ---------------------------------------------------------------------------
// 3. the three two-loop house regimes at n = 64

std::string criterion3() {
  // (3,0,3,2,2,1): clean spectral edges
  {
    PeriodicGraph g = testutil::makeHouse(3, 0, 3, 2, 2, 1);
    auto sparse = minimalSparsity(dispersionPolynomial(g));
    require(sparse.minimal, "house-3 should be minimally sparse");
    require(algebraicNonCornerSearch(*sparse.form).empty(),
            "house-3 should have no algebraic non-corner witness");
    MorseReport rep = morseCensus(g, 64);
    require(rep.points.size() == 8, "house-3 census should find exactly 8 critical points");
    require(rep.allPointsAtCorners, "house-3 critical points should all be corners");
    require(rep.allBandsPerfectMorse, "house-3 bands should be perfect Morse");
  }
  // (2,0,1,1,1,1): one degenerate line, witnessed algebraically and seen
  // numerically
  {
    PeriodicGraph g = testutil::makeHouse(2, 0, 1, 1, 1, 1);
    auto sparse = minimalSparsity(dispersionPolynomial(g));
    require(sparse.minimal, "house-2 should be minimally sparse");
    auto ws = algebraicNonCornerSearch(*sparse.form);
    require(ws.size() == 1, "house-2 should have exactly one witness");
    require(ws[0].kept == std::vector<int>{1}, "house-2 witness should keep the z2 circle");
    require(ws[0].signs.at(0) == -1, "house-2 witness should pin z1 = -1");
    require(ws[0].lambda.isExact() && ws[0].lambda.lo == Rational(0),
            "house-2 witness energy should be exactly 0");
    MorseReport rep = morseCensus(g, 64);
    require(!rep.allPointsAtCorners, "house-2 census should see off-corner points");
    bool lineSeen = false;
    for (const auto& cp : rep.points)
      if (!cp.isCorner) {
        require(std::abs(cp.lambda) < kLineSnapBound,
                "house-2 off-corner point away from the predicted lambda = 0 line");
        lineSeen = true;
      }
    require(lineSeen, "house-2 census should sample the critical line");
    bool suspected = false;
    for (const auto& b : rep.bands) suspected = suspected || b.nonIsolatedSuspected;
    require(suspected, "house-2 census should suspect a non-isolated family");
  }
  // (1,0,1,1,1,1): two witnesses, different directions, landing on both bands
  {
    PeriodicGraph g = testutil::makeHouse(1, 0, 1, 1, 1, 1);
    auto sparse = minimalSparsity(dispersionPolynomial(g));
    require(sparse.minimal, "house-1 should be minimally sparse");
    auto ws = algebraicNonCornerSearch(*sparse.form);
    require(ws.size() == 2, "house-1 should have exactly two witnesses");
    require(ws[0].kept != ws[1].kept, "house-1 witnesses should free different directions");
    std::set<Rational> energies;
    for (const auto& w : ws) {
      require(w.lambda.isExact(), "house-1 witness energies should be rational");
      energies.insert(w.lambda.lo);
    }
    require(energies == std::set<Rational>{Rational(0), Rational(1)},
            "house-1 witness energies should be {0, 1}");
    MorseReport rep = morseCensus(g, 64);
    std::set<int> bandsWithLines;
    for (const auto& cp : rep.points)
      if (!cp.isCorner) {
        double d0 = std::abs(cp.lambda), d1 = std::abs(cp.lambda - 1.0);
        require(std::min(d0, d1) < kLineSnapBound,
                "house-1 off-corner point away from both predicted lines");
        bandsWithLines.insert(cp.band);
      }
    require(bandsWithLines == std::set<int>{1, 2},
            "house-1 critical lines should touch both bands");
    for (const auto& b : rep.bands)
      require(!b.perfectMorse, "house-1 bands should not be perfect Morse");
  }
  return "all three house regimes reproduced at n = 64";
}

// ---------------------------------------------------------------------------
// 4. seeded flowers are minimally sparse

std::string criterion4() {
  bool sawLoop = false, sawLong = false;
  std::set<int> dims;
  for (std::uint64_t seed = 201; seed <= 220; ++seed) {
    std::mt19937_64 rng(seed);
    int d = 1 + static_cast<int>(seed % 3);
    FlowerSpec spec = testutil::randomFlowerSpec(rng, d, testutil::PetalPolicy::Any);
    dims.insert(d);
    for (const auto& p : spec.petals) {
      if (p.length == 1) sawLoop = true;
      if (p.length >= 3) sawLong = true;
    }
    LaurentPoly D = dispersionPolynomial(buildFlower(spec));
    auto sparse = minimalSparsity(D);
    require(sparse.minimal,
            "flower at seed " + std::to_string(seed) + " is not minimally sparse");
    require(sparse.form->reconstruct() == D,
            "sparse form at seed " + std::to_string(seed) + " does not reconstruct D");
  }
  require(dims == std::set<int>{1, 2, 3}, "flower seeds should cover d = 1, 2, 3");
  require(sawLoop && sawLong, "flower seeds should mix loops and longer petals");
  return "20 seeded flowers (d = 1..3, loops and long petals) all minimally sparse";
}

// ---------------------------------------------------------------------------
// 5. Schrodinger flower dichotomy with constructive witnesses

std::string criterion5() {
  for (std::uint64_t seed = 301; seed <= 310; ++seed) {
    for (auto policy :
         {testutil::PetalPolicy::ForbidTwoCycle, testutil::PetalPolicy::RequireTwoCycle}) {
      std::mt19937_64 rng(seed);
      int d = 1 + static_cast<int>(seed % 3);
      FlowerSpec spec = testutil::randomFlowerSpec(rng, d, policy);
      Certificate cert = certifyFlowerSchrodinger(spec);
      bool expectHolds = !hasTwoCyclePetal(spec);
      require((cert.verdict() == Verdict::Holds) == expectHolds,
              "dichotomy verdict mismatch at seed " + std::to_string(seed));
      bool witnessed = false;
      for (const auto& c : cert.claims) {
        if (expectHolds && c.name == "projections-connected")
          witnessed = c.verdict == Verdict::Holds && !c.detail.empty();
        if (!expectHolds && c.name == "two-cycle-obstruction-witnessed")
          witnessed = c.verdict == Verdict::Holds && !c.detail.empty();
      }
      require(witnessed, "missing constructive witness at seed " + std::to_string(seed));
    }
  }
  return "10 seeds per branch agree with the 2-cycle prediction, witnesses attached";
}

// ---------------------------------------------------------------------------
// 6. isthmus determinant identities

std::string criterion6() {
  for (const char* file :
       {"isthmus_nine.graph", "isthmus_path.graph", "isthmus_square_decoration.graph"}) {
    Certificate cert = verifyIsthmusIdentities(loadGraph(testutil::graphPath(file)));
    require(cert.verdict() == Verdict::Holds,
            std::string(file) + ": identities do not hold");
  }
  for (std::uint64_t seed = 401; seed <= 410; ++seed) {
    std::mt19937_64 rng(seed);
    PeriodicGraph g = buildIsthmus(testutil::randomIsthmusSpec(rng));
    Certificate cert = verifyIsthmusIdentities(g);
    require(cert.verdict() == Verdict::Holds,
            "identities fail on seeded isthmus " + std::to_string(seed));
  }
  return "row expansion, derivative factorization, mixed partials on 3 + 10 graphs";
}

// ---------------------------------------------------------------------------
// 7. isthmus certification: generic holds, equal-potential path fails

std::string criterion7() {
  std::mt19937_64 rng(501);
  auto pots = testutil::randomDistinctRationals(rng, 9);
  PeriodicGraph nine = buildIsthmus(testutil::makeNineSpec(pots));
  Certificate holds = certifyIsthmus(nine);
  require(holds.verdict() == Verdict::Holds,
          "nine-vertex graph with distinct potentials should certify");

  Certificate fails = certifyIsthmus(loadGraph(testutil::graphPath("isthmus_path.graph")));
  require(fails.verdict() == Verdict::Fails, "equal-potential path should fail");
  bool witnessed = false;
  for (const auto& c : fails.claims)
    if (c.verdict == Verdict::Fails)
      witnessed = c.detail.find("Res(") != std::string::npos &&
                  c.detail.find("= 0") != std::string::npos;
  require(witnessed, "path failure should name the vanishing resultant");
  return "9-vertex certifies with seeded potentials; (0,2,0) fails with a witness";
}

// ---------------------------------------------------------------------------
// 8. parallel extension: substitution identity, fiber lifts, extended census

std::string criterion8() {
  const Rational a(1, 2);
  for (const char* file : kBundled) {
    PeriodicGraph g = loadGraph(testutil::graphPath(file));
    LaurentPoly D = dispersionPolynomial(g);
    LaurentPoly Da = dispersionPolynomial(parallelExtension(g, a));
    require(Da == D.substituteLambdaShift(a),
            std::string(file) + ": extension dispersion is not the lambda shift");
  }

  PeriodicGraph house = testutil::makeHouse(3, 0, 3, 2, 2, 1);
  LaurentPoly D = dispersionPolynomial(house);
  PeriodicGraph ext = parallelExtension(house, a);
  DispersionSystem sys(dispersionPolynomial(ext));
  const double shift = 2.0 * a.toDouble();
  for (const auto& cp : cornerSpectrum(D)) {
    for (double t : {0.0, 0.5}) {
      std::vector<double> k = cp.k;
      k.push_back(t);
      double mu = cp.lambdaApprox + (t == 0.0 ? shift : -shift);
      double r = sys.residual(k, mu);
      require(r < kResidualBound, "lifted corner residual " + std::to_string(r) +
                                      " exceeds 1e-10 at z_new = " + (t == 0.0 ? "+1" : "-1"));
    }
  }

  MorseReport rep = morseCensus(ext, 32);
  require(rep.points.size() == 16, "extended census should find 16 critical points");
  require(rep.allPointsAtCorners, "extended critical points should all be corners");
  require(rep.allBandsPerfectMorse, "extended bands should be perfect Morse");
  for (const auto& b : rep.bands)
    require(b.count == 8, "each extended band should carry 2^3 = 8 corner points");
  return "substitution exact on 14 graphs; fibers lift at z = +-1; 16-point census";
}

// ---------------------------------------------------------------------------
// 9. flat band detection on the Lieb lattice

std::string criterion9() {
  auto schro = flatBands(
      dispersionPolynomial(loadGraph(testutil::graphPath("lieb_schrodinger.graph"))));
  require(schro.bands.size() == 1, "Schrodinger Lieb should have exactly one flat band");
  require(schro.bands[0].isExact() && schro.bands[0].lo == Rational(0),
          "Schrodinger Lieb flat band should sit exactly at 0");

  auto generic = flatBands(dispersionPolynomial(loadGraph(testutil::graphPath("lieb.graph"))));
  require(generic.bands.empty(), "generic Lieb should have no flat band");
  return "flat band at exactly 0 with zero potentials; none with generic labels";
}

// ---------------------------------------------------------------------------
// 10. algebraic emptiness agrees with the numeric census across the corpus

std::string criterion10() {
  int evaluated = 0, skipped = 0;
  for (const char* file : kBundled) {
    PeriodicGraph g = loadGraph(testutil::graphPath(file));
    LaurentPoly D = dispersionPolynomial(g);
    auto sparse = minimalSparsity(D);
    if (!sparse.minimal || !flatBands(D).bands.empty()) {
      ++skipped;  // hexagonal / isthmus cross terms, or a flat band
      continue;
    }
    bool algebraicallyEmpty = algebraicNonCornerSearch(*sparse.form).empty();
    MorseReport rep = morseCensus(g, 0);
    require(!rep.flatBandDetected, std::string(file) + ": unexpected numeric flat band");
    require(algebraicallyEmpty == rep.allPointsAtCorners,
            std::string(file) + ": algebraic search and census disagree");
    ++evaluated;
  }
  require(evaluated >= 9, "expected at least nine eligible corpus instances");
  return "agreement on " + std::to_string(evaluated) + " instances (" +
         std::to_string(skipped) + " excluded: flat band or non-minimal sparsity)";
}

struct CriterionSpec {
  int id;
  const char* label;
  double budgetSeconds;
  std::function<std::string()> run;
};

}  // namespace

int main() {
  std::vector<CriterionSpec> criteria = {
      {1, "closed-form dispersion displays", 1.0, criterion1},
      {2, "corner counts and residuals", 14.0, criterion2},  // < 1 s per graph
      {3, "two-loop house regimes", 30.0, criterion3},
      {4, "flower minimal sparsity", 30.0, criterion4},
      {5, "Schrodinger flower dichotomy", 30.0, criterion5},
      {6, "isthmus determinant identities", 60.0, criterion6},
      {7, "isthmus genericity certification", 30.0, criterion7},
      {8, "parallel extension theorem", 60.0, criterion8},
      {9, "Lieb flat band oracle", 1.0, criterion9},
      {10, "algebraic/numeric cross-validation", 120.0, criterion10},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    std::string status, note;
    try {
      note = c.run();
      double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      if (dt > c.budgetSeconds) {
        status = "FAIL";
        note = "exceeded " + std::to_string(c.budgetSeconds) + "s budget";
        ++failures;
      } else {
        status = "PASS";
      }
      std::printf("[%s] criterion %2d: %s — %s (%.2fs)\n", status.c_str(), c.id, c.label,
                  note.c_str(), dt);
    } catch (const std::exception& e) {
      double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      ++failures;
      std::printf("[FAIL] criterion %2d: %s — %s (%.2fs)\n", c.id, c.label, e.what(), dt);
    }
  }
  if (failures == 0)
    std::printf("acceptance: all %zu criteria passed\n", criteria.size());
  else
    std::printf("acceptance: %d criteria FAILED\n", failures);
  return failures;
}

// blochcert: command-line front end for the bloch library.
//
// Verbs: build a labeled periodic graph from a family spec, print its
// dispersion polynomial, tabulate band samples, list corner pairs, locate
// critical points (exact and numeric routes), detect flat bands, inspect
// coordinate projections, run the certification pipelines, verify the isthmus
// determinant identities, and scan the band separation over a weight scaling.
//
// Exit codes: 0 success (certificate holds), 1 certificate fails,
// 2 certificate inconclusive, 64 input parse error, 65 semantic error,
// 70 tolerance failure.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bloch/certify.hpp"
#include "bloch/families.hpp"
#include "bloch/io.hpp"

namespace {

struct CommonOpts {
  std::uint64_t seed = 0;
  int threads = 1;
  int grid = 0;  // 0 = resolution chosen per dimension
  std::string out;
  bloch::SpectralTolerances tol;
};

void addCommon(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--seed", o.seed, "seed recorded in deterministic outputs");
  cmd->add_option("--threads", o.threads, "worker threads for grid scans")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--grid", o.grid, "grid resolution per torus direction (0 = automatic)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--out", o.out, "write output to this file instead of stdout");
  cmd->add_option("--tol-residual", o.tol.residual, "critical point equation residual bound");
  cmd->add_option("--tol-hessian-singular", o.tol.hessianSingular,
                  "relative threshold flagging a singular Hessian");
  cmd->add_option("--tol-corner-match", o.tol.cornerMatch,
                  "distance below which a point counts as a corner");
  cmd->add_option("--tol-band-match", o.tol.bandMatch,
                  "gap below which a critical value attaches to a band");
  cmd->add_option("--tol-dedup", o.tol.dedupRadius, "torus radius merging duplicate points");
  cmd->add_option("--tol-smoothness", o.tol.smoothness,
                  "relative bound below which d/d-lambda counts as vanishing");
  cmd->add_option("--tol-non-smooth-residual", o.tol.nonSmoothResidual,
                  "residual bound at points where bands touch");
  cmd->add_option("--tol-hermitian", o.tol.hermitianDeviation,
                  "largest tolerated Floquet matrix Hermitian deviation");
  cmd->add_option("--tol-fd-step", o.tol.fdStep, "finite difference step");
  cmd->add_option("--tol-fd-agreement", o.tol.fdAgreement,
                  "tolerated exact-vs-finite-difference Hessian deviation");
}

void emit(const CommonOpts& o, const std::string& text) {
  if (o.out.empty()) {
    std::fputs(text.c_str(), stdout);
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw std::runtime_error("cannot open output file '" + o.out + "'");
  f << text;
}

bloch::CertifyContext makeContext(const CommonOpts& o) {
  return {o.tol, o.grid, o.threads, o.seed};
}

std::string fmtDouble(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

// ---------------------------------------------------------------------------
// build

int runBuild(const std::string& family, const std::string& input, const std::string& aText,
             const CommonOpts& o) {
  bloch::PeriodicGraph g;
  if (family == "flower") {
    g = bloch::buildFlower(bloch::loadFlowerSpec(input));
  } else if (family == "isthmus") {
    bloch::json doc = bloch::readJsonFile(input);
    std::string type =
        bloch::ioutil::stringField(bloch::ioutil::field(doc, "type", "graph spec"), "type");
    if (type != "isthmus")
      throw bloch::ParseError("'" + input + "': expected an isthmus spec, found type '" + type +
                              "'");
    g = bloch::buildIsthmus(bloch::parseIsthmusSpec(doc));
  } else {  // parallel
    g = bloch::parallelExtension(bloch::loadGraph(input), bloch::Rational::parse(aText));
  }
  emit(o, bloch::canonicalGraphText(g) + "\n");
  return 0;
}

// ---------------------------------------------------------------------------
// dispersion

int runDispersion(const std::string& input, const std::string& format, const CommonOpts& o) {
  bloch::LaurentPoly D = bloch::dispersionPolynomial(bloch::loadGraph(input));
  std::ostringstream os;
  if (format == "canonical") {
    os << D.canonicalString() << "\n";
  } else if (format == "latex") {
    os << D.latexString() << "\n";
  } else {  // tsv: one monomial per row
    os << "lambda";
    for (int i = 1; i <= D.dimension(); ++i) os << "\tz" << i;
    os << "\tcoefficient\n";
    for (const auto& [mono, coeff] : D.terms()) {
      os << mono.lam;
      for (int e : mono.z) os << "\t" << e;
      os << "\t" << coeff.str() << "\n";
    }
  }
  emit(o, os.str());
  return 0;
}

// ---------------------------------------------------------------------------
// bands

int runBands(const std::string& input, const CommonOpts& o) {
  bloch::PeriodicGraph g = bloch::loadGraph(input);
  bloch::FloquetMatrix H = bloch::floquetMatrix(g);
  int n = o.grid > 0 ? o.grid : bloch::defaultGridResolution(g.dim);
  auto samples = bloch::bandGrid(H, n, o.tol, o.threads);
  std::ostringstream os;
  for (int i = 1; i <= g.dim; ++i) os << (i > 1 ? "\t" : "") << "k" << i;
  for (int b = 1; b <= H.size(); ++b) os << "\tband" << b;
  os << "\n";
  for (const auto& s : samples) {
    for (std::size_t i = 0; i < s.k.size(); ++i) os << (i ? "\t" : "") << fmtDouble(s.k[i]);
    for (double l : s.lambda) os << "\t" << fmtDouble(l);
    os << "\n";
  }
  emit(o, os.str());
  return 0;
}

// ---------------------------------------------------------------------------
// corners

int runCorners(const std::string& input, const CommonOpts& o) {
  bloch::PeriodicGraph g = bloch::loadGraph(input);
  bloch::LaurentPoly D = bloch::dispersionPolynomial(g);
  bloch::DispersionSystem sys(D);
  auto corners = bloch::cornerSpectrum(D);
  std::ostringstream os;
  double worst = 0.0;
  long total = 0;
  for (const auto& cp : corners) {
    double res = sys.residual(cp.k, cp.lambdaApprox);
    worst = std::max(worst, res);
    total += cp.multiplicity;
    os << "corner " << bloch::detail::cornerText(cp.signs)
       << " lambda0 = " << bloch::detail::rootText(cp.lambda) << " multiplicity "
       << cp.multiplicity << " band " << cp.band << " residual " << fmtDouble(res) << "\n";
  }
  long expected = (1L << g.dim) * static_cast<long>(g.vertices.size());
  os << total << " corner pairs counted with multiplicity (2^" << g.dim << " * "
     << g.vertices.size() << " = " << expected << " expected)\n";
  emit(o, os.str());
  if (worst > o.tol.residual) {
    std::fprintf(stderr, "error: corner residual %s exceeds %s\n", fmtDouble(worst).c_str(),
                 fmtDouble(o.tol.residual).c_str());
    return 70;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// critical

std::string censusSummary(const bloch::MorseReport& rep) {
  int nb = static_cast<int>(rep.bands.size());
  int offCorner = 0;
  for (const auto& p : rep.points)
    if (!p.isCorner) ++offCorner;
  std::ostringstream os;
  os << rep.points.size() << " critical points, ";
  if (rep.allPointsAtCorners)
    os << "all corners";
  else
    os << offCorner << " off corners";
  if (rep.allBandsPerfectMorse) {
    if (nb == 1)
      os << ", band 1 perfect Morse";
    else if (nb == 2)
      os << ", both bands perfect Morse";
    else
      os << ", all " << nb << " bands perfect Morse";
  } else {
    os << ", not perfect Morse on band";
    std::string sep = " ";
    for (int b = 0; b < nb; ++b)
      if (!rep.bands[b].perfectMorse) {
        os << sep << (b + 1);
        sep = ", ";
      }
  }
  return os.str();
}

int runCritical(const std::string& input, const std::string& mode, const CommonOpts& o) {
  bloch::PeriodicGraph g = bloch::loadGraph(input);
  bloch::LaurentPoly D = bloch::dispersionPolynomial(g);
  const bool doAlgebraic = mode != "numeric";
  const bool doNumeric = mode != "algebraic";
  std::ostringstream os;

  auto flat = bloch::flatBands(D);
  if (!flat.bands.empty()) {
    for (const auto& r : flat.bands)
      os << "flat band at lambda0 = " << bloch::detail::rootText(r) << "\n";
    os << "every point of a flat band is critical; no isolated census\n";
    emit(o, os.str());
    return 0;
  }

  std::vector<bloch::NonCornerWitness> witnesses;
  if (doAlgebraic) {
    auto sp = bloch::minimalSparsity(D);
    if (!sp.minimal) {
      std::string mono =
          bloch::LaurentPoly::monomial(g.dim, *sp.witness, bloch::Rational(1)).canonicalString();
      throw std::invalid_argument("dispersion is not minimally sparse (offending monomial " +
                                  mono + "); the algebraic route needs minimal sparsity");
    }
    witnesses = bloch::algebraicNonCornerSearch(*sp.form);
    if (witnesses.empty()) {
      os << "algebraic: no non-corner critical families\n";
    } else {
      for (const auto& w : witnesses) {
        bloch::Projection p{w.kept, w.signs};
        os << "algebraic: critical circle family " << bloch::detail::projectionText(p)
           << " at lambda0 = " << bloch::detail::rootText(w.lambda) << "\n";
      }
    }
  }

  bloch::MorseReport rep;
  if (doNumeric) {
    rep = bloch::morseCensus(g, o.grid, o.tol, o.threads);
    for (std::size_t b = 0; b < rep.bands.size(); ++b) {
      const auto& br = rep.bands[b];
      os << "band " << (b + 1) << ": " << br.count << " critical points, " << br.degenerateCount
         << " degenerate, " << br.nonSmoothCount << " non-smooth";
      if (br.perfectMorse) {
        os << ", morse index counts [";
        for (std::size_t i = 0; i < br.morseIndexCounts.size(); ++i)
          os << (i ? "," : "") << br.morseIndexCounts[i];
        os << "]";
      }
      if (br.nonIsolatedSuspected) os << ", non-isolated critical set suspected";
      os << "\n";
    }
    os << censusSummary(rep) << "\n";
  }

  if (doAlgebraic && doNumeric) {
    bool agree = witnesses.empty() == rep.allPointsAtCorners;
    if (agree) {
      os << "routes agree: "
         << (witnesses.empty() ? "all critical points are at corners"
                               : "non-corner critical set found by both routes")
         << "\n";
      emit(o, os.str());
      return 0;
    }
    os << "discrepancy: algebraic route "
       << (witnesses.empty() ? "finds no non-corner family" : "finds a non-corner family")
       << ", numeric census "
       << (rep.allPointsAtCorners ? "sees only corners" : "sees off-corner points") << "\n";
    for (const auto& p : rep.points)
      if (!p.isCorner)
        os << "discrepancy: band " << p.band << " point "
           << bloch::detail::pointText(p.k, p.lambda) << " residual " << fmtDouble(p.residual)
           << "\n";
    emit(o, os.str());
    return 70;
  }
  emit(o, os.str());
  return 0;
}

// ---------------------------------------------------------------------------
// flatband / projections

int runFlatband(const std::string& input, bool projections, const CommonOpts& o) {
  bloch::PeriodicGraph g = bloch::loadGraph(input);
  std::ostringstream os;
  auto flat = bloch::flatBands(bloch::dispersionPolynomial(g));
  if (flat.bands.empty()) {
    os << "no flat band\n";
  } else {
    for (const auto& r : flat.bands)
      os << "flat band at lambda0 = " << bloch::detail::rootText(r) << "\n";
  }
  if (projections) {
    for (const auto& p : bloch::enumerateProjections(g.dim)) {
      auto proj = bloch::coordinateProjection(g, p);
      auto pf = bloch::flatBands(bloch::dispersionPolynomial(proj));
      os << "projection " << bloch::detail::projectionText(p) << ": ";
      if (pf.bands.empty()) {
        os << "no flat band\n";
      } else {
        std::string sep;
        for (const auto& r : pf.bands) {
          os << sep << "flat band at lambda0 = " << bloch::detail::rootText(r);
          sep = "; ";
        }
        os << "\n";
      }
    }
  }
  emit(o, os.str());
  return 0;
}

int runProjections(const std::string& input, const CommonOpts& o) {
  bloch::PeriodicGraph g = bloch::loadGraph(input);
  std::ostringstream os;
  auto list = bloch::enumerateProjections(g.dim);
  for (const auto& p : list) {
    auto proj = bloch::coordinateProjection(g, p);
    os << bloch::detail::projectionText(p) << ": "
       << (bloch::isConnected(proj) ? "connected" : "disconnected");
    auto bounded = bloch::boundedComponents(proj);
    for (const auto& comp : bounded) {
      os << ", bounded component {";
      for (std::size_t i = 0; i < comp.size(); ++i)
        os << (i ? ", " : "") << proj.vertices[comp[i]].name;
      os << "}";
    }
    os << "\n";
  }
  os << list.size() << " coordinate projections\n";
  emit(o, os.str());
  return 0;
}

// ---------------------------------------------------------------------------
// certify / verify-identities / scan-t

int runCertify(const std::string& pipeline, const std::string& input, const std::string& aText,
               const CommonOpts& o) {
  bloch::CertifyContext ctx = makeContext(o);
  bloch::Certificate cert;
  if (pipeline == "sec") {
    cert = bloch::certifyMinimallySparseSEC(bloch::loadGraph(input), ctx);
  } else if (pipeline == "isthmus") {
    cert = bloch::certifyIsthmus(bloch::loadGraph(input), ctx);
  } else if (pipeline == "flower-schrodinger") {
    cert = bloch::certifyFlowerSchrodinger(bloch::loadFlowerSpec(input), ctx);
  } else {  // parallel
    cert = bloch::verifyParallelTheorem(bloch::loadGraph(input), bloch::Rational::parse(aText),
                                        ctx);
  }
  emit(o, cert.render());
  return cert.exitCode();
}

int runIdentities(const std::string& input, const CommonOpts& o) {
  bloch::Certificate cert =
      bloch::verifyIsthmusIdentities(bloch::loadGraph(input), makeContext(o));
  emit(o, cert.render());
  return cert.exitCode();
}

int runScanT(const std::string& input, std::vector<std::string> tTexts, const CommonOpts& o) {
  bloch::PeriodicGraph g = bloch::loadGraph(input);
  if (tTexts.empty())
    for (int k = 0; k <= 10; ++k) tTexts.push_back(std::to_string(k) + "/10");
  std::vector<bloch::Rational> ts;
  for (const auto& t : tTexts) ts.push_back(bloch::Rational::parse(t));
  auto report = bloch::bandSeparationScan(g, ts, makeContext(o));
  std::ostringstream os;
  for (const auto& e : report.entries) {
    os << "t = " << e.t.str() << ":";
    for (const auto& r : e.ranges)
      os << " [" << fmtDouble(r.first) << ", " << fmtDouble(r.second) << "]";
    os << (e.disjoint ? " disjoint" : " overlapping") << "\n";
  }
  if (report.largestDisjoint)
    os << "largest scanned t with disjoint bands: " << report.largestDisjoint->str() << "\n";
  else
    os << "no scanned t separates all bands\n";
  emit(o, os.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral analysis and certification for labeled Z^d-periodic graphs"};
  app.require_subcommand(1);
  int rc = 0;

  CommonOpts buildOpts;
  std::string buildFamily, buildInput, buildA = "1";
  auto* build = app.add_subcommand("build", "construct a graph from a family spec");
  build->add_option("family", buildFamily, "flower | isthmus | parallel")
      ->required()
      ->check(CLI::IsMember({"flower", "isthmus", "parallel"}));
  build->add_option("input", buildInput, "spec file (base graph for parallel)")->required();
  build->add_option("--a", buildA, "coupling weight for the parallel extension");
  addCommon(build, buildOpts);
  build->callback([&] { rc = runBuild(buildFamily, buildInput, buildA, buildOpts); });

  CommonOpts dispOpts;
  std::string dispInput, dispFormat = "canonical";
  auto* disp = app.add_subcommand("dispersion", "print the dispersion polynomial");
  disp->add_option("input", dispInput, "graph file")->required();
  disp->add_option("--format", dispFormat, "canonical | latex | tsv")
      ->check(CLI::IsMember({"canonical", "latex", "tsv"}));
  addCommon(disp, dispOpts);
  disp->callback([&] { rc = runDispersion(dispInput, dispFormat, dispOpts); });

  CommonOpts bandsOpts;
  std::string bandsInput;
  auto* bands = app.add_subcommand("bands", "tabulate band samples over a torus grid");
  bands->add_option("input", bandsInput, "graph file")->required();
  addCommon(bands, bandsOpts);
  bands->callback([&] { rc = runBands(bandsInput, bandsOpts); });

  CommonOpts cornersOpts;
  std::string cornersInput;
  auto* corners = app.add_subcommand("corners", "list the corner critical pairs");
  corners->add_option("input", cornersInput, "graph file")->required();
  addCommon(corners, cornersOpts);
  corners->callback([&] { rc = runCorners(cornersInput, cornersOpts); });

  CommonOpts critOpts;
  std::string critInput, critMode = "both";
  auto* crit = app.add_subcommand("critical", "locate critical points of the band functions");
  crit->add_option("input", critInput, "graph file")->required();
  crit->add_option("--mode", critMode, "algebraic | numeric | both")
      ->check(CLI::IsMember({"algebraic", "numeric", "both"}));
  addCommon(crit, critOpts);
  crit->callback([&] { rc = runCritical(critInput, critMode, critOpts); });

  CommonOpts flatOpts;
  std::string flatInput;
  bool flatProjections = false;
  auto* flat = app.add_subcommand("flatband", "detect flat bands");
  flat->add_option("input", flatInput, "graph file")->required();
  flat->add_flag("--projections", flatProjections, "also scan every coordinate projection");
  addCommon(flat, flatOpts);
  flat->callback([&] { rc = runFlatband(flatInput, flatProjections, flatOpts); });

  CommonOpts projOpts;
  std::string projInput;
  auto* proj = app.add_subcommand("projections", "list coordinate projections and connectivity");
  proj->add_option("input", projInput, "graph file")->required();
  addCommon(proj, projOpts);
  proj->callback([&] { rc = runProjections(projInput, projOpts); });

  CommonOpts certOpts;
  std::string certPipeline, certInput, certA = "1";
  auto* cert = app.add_subcommand("certify", "run a certification pipeline");
  cert->add_option("pipeline", certPipeline, "sec | isthmus | flower-schrodinger | parallel")
      ->required()
      ->check(CLI::IsMember({"sec", "isthmus", "flower-schrodinger", "parallel"}));
  cert->add_option("input", certInput, "graph file (flower spec for flower-schrodinger)")
      ->required();
  cert->add_option("--a", certA, "coupling weight for the parallel pipeline");
  addCommon(cert, certOpts);
  cert->callback([&] { rc = runCertify(certPipeline, certInput, certA, certOpts); });

  CommonOpts identOpts;
  std::string identInput;
  auto* ident =
      app.add_subcommand("verify-identities", "verify the isthmus determinant identities");
  ident->add_option("input", identInput, "isthmus graph file")->required();
  addCommon(ident, identOpts);
  ident->callback([&] { rc = runIdentities(identInput, identOpts); });

  CommonOpts parOpts;
  std::string parInput, parA = "1";
  auto* par = app.add_subcommand("parallel", "certify the parallel extension of a graph");
  par->add_option("input", parInput, "base graph file")->required();
  par->add_option("--a", parA, "coupling weight");
  addCommon(par, parOpts);
  par->callback([&] { rc = runCertify("parallel", parInput, parA, parOpts); });

  CommonOpts scanOpts;
  std::string scanInput;
  std::vector<std::string> scanT;
  auto* scan = app.add_subcommand("scan-t", "scan band separation over edge-weight scalings");
  scan->add_option("input", scanInput, "graph file")->required();
  scan->add_option("--t", scanT, "rational scaling values (default 0, 1/10, ..., 1)");
  addCommon(scan, scanOpts);
  scan->callback([&] { rc = runScanT(scanInput, scanT, scanOpts); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int r = app.exit(e);
    return r == 0 ? 0 : 64;
  } catch (const bloch::ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 64;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 65;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 70;
  }
  return rc;
}

#pragma once

// Floquet matrix H(z) of a periodic graph, the dispersion determinant
// D(z, L) = det(H(z) - L), the minimally-sparse normal form
// D = h_0 + sum_i (z_i + z_i^{-1}) h_i, exact flat-band detection, the
// leading/trailing principal minors of isthmus graphs, and the inverse
// direction: recovering a graph from a symmetric Laurent matrix.

#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "bloch/families.hpp"
#include "bloch/graph.hpp"
#include "bloch/polymatrix.hpp"

namespace bloch {

struct FloquetMatrix {
  int dim = 0;
  std::vector<std::string> names;
  PolyMatrix entries;  // lambda-free Laurent polynomials

  int size() const { return static_cast<int>(entries.size()); }
};

inline FloquetMatrix floquetMatrix(const PeriodicGraph& g) {
  auto issues = validate(g);
  if (!issues.empty())
    throw std::invalid_argument("floquetMatrix: invalid graph (" + issues.front().code + ": " +
                                issues.front().detail + ")");
  const int n = static_cast<int>(g.vertices.size());
  FloquetMatrix H;
  H.dim = g.dim;
  H.names.reserve(n);
  for (const auto& v : g.vertices) H.names.push_back(v.name);
  H.entries.assign(n, std::vector<LaurentPoly>(n, LaurentPoly(g.dim)));
  for (int i = 0; i < n; ++i)
    H.entries[i][i] += LaurentPoly::constant(g.dim, g.vertices[i].potential);
  for (const auto& e : g.orbits) {
    // orbit (u, v, a): row u gains w z^a, row v gains w z^{-a}; a self-orbit
    // therefore contributes w (z^a + z^{-a}) to its diagonal entry
    ZMonomial mf, mb;
    mf.z = e.shift;
    mb.z.resize(g.dim);
    for (int i = 0; i < g.dim; ++i) mb.z[i] = -e.shift[i];
    H.entries[e.u][e.v] += LaurentPoly::monomial(g.dim, mf, e.weight);
    H.entries[e.v][e.u] += LaurentPoly::monomial(g.dim, mb, e.weight);
  }
  return H;
}

inline LaurentPoly dispersionPolynomial(const FloquetMatrix& H) {
  PolyMatrix m = H.entries;
  LaurentPoly lam = LaurentPoly::lambda(H.dim);
  for (int i = 0; i < H.size(); ++i) m[i][i] -= lam;
  return determinant(m, H.dim);
}

inline LaurentPoly dispersionPolynomial(const PeriodicGraph& g) {
  return dispersionPolynomial(floquetMatrix(g));
}

// D = h[0] + sum_{i=1..d} (z_i + z_i^{-1}) h[i], all h in L alone
struct SparseForm {
  int dim = 0;
  std::vector<UniPoly> h;  // size dim + 1

  LaurentPoly reconstruct() const {
    LaurentPoly r = LaurentPoly::fromUniPoly(dim, h[0]);
    for (int i = 1; i <= dim; ++i) {
      LaurentPoly s = LaurentPoly::zterm(dim, i - 1, 1) + LaurentPoly::zterm(dim, i - 1, -1);
      r += s * LaurentPoly::fromUniPoly(dim, h[i]);
    }
    return r;
  }
};

struct SparsityResult {
  bool minimal = false;
  std::optional<SparseForm> form;      // present when minimal
  std::optional<ZMonomial> witness;    // an offending monomial otherwise
};

inline SparsityResult minimalSparsity(const LaurentPoly& D) {
  const int d = D.dimension();
  SparsityResult res;
  auto groups = D.groupByZ();
  SparseForm form;
  form.dim = d;
  form.h.assign(d + 1, UniPoly());
  std::vector<UniPoly> minus(d);  // coefficients at z_i^{-1}, must match z_i^{+1}
  for (const auto& [zexp, coeff] : groups) {
    int nonzeroAt = -1, count = 0;
    for (int i = 0; i < d; ++i) {
      if (zexp[i] != 0) {
        ++count;
        nonzeroAt = i;
      }
    }
    bool ok = count == 0 || (count == 1 && std::abs(zexp[nonzeroAt]) == 1);
    if (!ok) {
      res.minimal = false;
      ZMonomial w;
      w.lam = 0;
      w.z = zexp;
      res.witness = w;
      return res;
    }
    if (count == 0) form.h[0] = coeff;
    else if (zexp[nonzeroAt] == 1) form.h[nonzeroAt + 1] = coeff;
    else minus[nonzeroAt] = coeff;
  }
  for (int i = 0; i < d; ++i)
    if (form.h[i + 1] != minus[i])
      throw std::invalid_argument(
          "minimalSparsity: dispersion is not invariant under z -> z^{-1}");
  res.minimal = true;
  res.form = std::move(form);
  return res;
}

struct FlatBandResult {
  UniPoly commonFactor;              // monic gcd of all z-monomial coefficients
  std::vector<RootInterval> bands;   // its real roots: the flat-band energies
};

// Flat bands are exactly the common real roots of every z-monomial
// coefficient of D.
inline FlatBandResult flatBands(const LaurentPoly& D) {
  std::vector<UniPoly> coeffs;
  for (auto& [zexp, c] : D.groupByZ()) coeffs.push_back(std::move(c));
  auto [g, roots] = gcdAndRealRoots(coeffs);
  return {std::move(g), std::move(roots)};
}

// Principal minors of H - L taken strictly left/below (P_s) and strictly
// right/above (Q_s) of isthmus position s; positions run 1-a .. m+b and the
// boundary conventions are P_{1-a} = Q_{m+b} = 1 (empty determinant) while
// anything outside the range is 0.
struct IsthmusMinors {
  int a = 0, m = 0, b = 0;
  int dim = 0;
  std::map<int, LaurentPoly> P, Q;

  int lowest() const { return 1 - a; }
  int highest() const { return m + b; }
  // outside the index range both minor families are 0 by convention
  LaurentPoly Pat(int s) const {
    auto it = P.find(s);
    return it != P.end() ? it->second : LaurentPoly(dim);
  }
  LaurentPoly Qat(int s) const {
    auto it = Q.find(s);
    return it != Q.end() ? it->second : LaurentPoly(dim);
  }
};

inline IsthmusMinors isthmusMinors(const PeriodicGraph& g) {
  if (!g.isthmus)
    throw std::invalid_argument("isthmusMinors: graph carries no isthmus structure");
  const auto& info = *g.isthmus;
  FloquetMatrix H = floquetMatrix(g);
  PolyMatrix full = H.entries;
  LaurentPoly lam = LaurentPoly::lambda(g.dim);
  for (int i = 0; i < H.size(); ++i) full[i][i] -= lam;

  IsthmusMinors out;
  out.a = info.a;
  out.m = info.m;
  out.b = info.b;
  out.dim = g.dim;
  const int n = H.size();
  auto blockDet = [&](int beginRow, int endRow) {
    PolyMatrix sub;
    for (int i = beginRow; i < endRow; ++i) {
      sub.emplace_back(full[i].begin() + beginRow, full[i].begin() + endRow);
    }
    return determinant(sub, g.dim);
  };
  for (int s = out.lowest(); s <= out.highest(); ++s) {
    // vertex array index i holds isthmus position i - a + 1
    int below = s + info.a - 1;  // indices 0..below-1 have position < s
    out.P[s] = blockDet(0, below);
    out.Q[s] = blockDet(below + 1, n);
  }
  return out;
}

// Reconstructs the labeled graph whose Floquet matrix is H; requires
// H(z)^T = H(z^{-1}) exactly and lambda-free entries.
inline PeriodicGraph graphFromMatrix(const FloquetMatrix& H) {
  const int n = H.size();
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(H.entries[i].size()) != n)
      throw std::invalid_argument("graphFromMatrix: matrix is not square");
    for (int j = 0; j < n; ++j) {
      if (H.entries[i][j].lambdaDegree() > 0)
        throw std::invalid_argument("graphFromMatrix: entries must not involve L");
      if (H.entries[j][i] != H.entries[i][j].invertZ())
        throw std::invalid_argument("graphFromMatrix: symmetry H(z)^T = H(z^{-1}) fails at entry (" +
                                    std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
    }
  }
  PeriodicGraph g;
  g.dim = H.dim;
  g.vertices.resize(n);
  for (int i = 0; i < n; ++i) {
    g.vertices[i].name = i < static_cast<int>(H.names.size()) && !H.names[i].empty()
                             ? H.names[i]
                             : "w" + std::to_string(i + 1);
  }
  const std::vector<int> zero(H.dim, 0);
  for (int i = 0; i < n; ++i) {
    for (const auto& [mono, c] : H.entries[i][i].terms()) {
      if (mono.z == zero) {
        g.vertices[i].potential = c;
      } else if (!lexNegative(mono.z)) {
        // the matching z^{-a} term is implied by symmetry of the entry
        g.orbits.push_back({i, i, mono.z, c});
      }
    }
    for (int j = i + 1; j < n; ++j)
      for (const auto& [mono, c] : H.entries[i][j].terms())
        g.orbits.push_back({i, j, mono.z, c});
  }
  normalize(g);
  return g;
}

// Keeps the coordinates in p.kept, substituting +-1 for the rest; the result
// is the graph of the substituted Floquet matrix (sign contributions of
// dropped loops are absorbed into the potentials).
inline PeriodicGraph coordinateProjection(const PeriodicGraph& g, const Projection& p) {
  if (p.kept.empty() || p.kept.size() + p.signs.size() != static_cast<std::size_t>(g.dim) ||
      p.signs.empty())
    throw std::invalid_argument("coordinateProjection: need a proper nonempty coordinate subset");
  FloquetMatrix H = floquetMatrix(g);
  FloquetMatrix sub;
  sub.dim = static_cast<int>(p.kept.size());
  sub.names = H.names;
  sub.entries.assign(H.size(), std::vector<LaurentPoly>(H.size(), LaurentPoly(sub.dim)));
  for (int i = 0; i < H.size(); ++i)
    for (int j = 0; j < H.size(); ++j)
      sub.entries[i][j] = H.entries[i][j].substituteSign(p.signs);
  return graphFromMatrix(sub);
}

}  // namespace bloch

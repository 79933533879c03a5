#pragma once

// The two constructive graph families plus the parallel extension:
//  - flower graphs: a finite stem with cycles ("petals") glued at one vertex,
//    each petal carrying a generator annotation; the distinguished edge of a
//    petal is replaced by its shifted copy,
//  - isthmus graphs: finite decorations A and B joined by a path, with the
//    periodic self-orbits attached along the path,
//  - parallel extension: one extra lattice direction coupling every vertex to
//    its own translate with a common weight.

#include <stdexcept>
#include <string>
#include <vector>

#include "bloch/graph.hpp"

namespace bloch {

struct StemEdge {
  int u = 0, v = 0;  // indices into the owning vertex list
  Rational weight;
};

struct Petal {
  int length = 1;                     // number of cycle edges (1 = loop at u)
  int generator = 1;                  // 1-based lattice direction
  int distinguishedEdge = 0;          // which cycle edge becomes the shifted copy
  std::vector<Rational> potentials;   // the length-1 internal vertices
  std::vector<Rational> weights;      // one weight per cycle edge
  std::vector<std::string> names;     // optional internal vertex names
};

struct FlowerSpec {
  int dim = 1;
  std::vector<Vertex> stemVertices;   // [0] is the distinguished vertex u
  std::vector<StemEdge> stemEdges;
  std::vector<Petal> petals;
};

inline bool hasTwoCyclePetal(const FlowerSpec& spec) {
  for (const auto& p : spec.petals)
    if (p.length == 2) return true;
  return false;
}

inline PeriodicGraph buildFlower(const FlowerSpec& spec) {
  if (spec.dim < 1) throw std::invalid_argument("buildFlower: dimension must be positive");
  if (spec.stemVertices.empty())
    throw std::invalid_argument("buildFlower: stem needs at least the distinguished vertex");
  if (spec.petals.empty()) throw std::invalid_argument("buildFlower: empty petal list");
  std::vector<bool> covered(spec.dim, false);
  for (const auto& p : spec.petals) {
    if (p.length < 1) throw std::invalid_argument("buildFlower: petal of length 0");
    if (p.generator < 1 || p.generator > spec.dim)
      throw std::invalid_argument("buildFlower: petal annotation outside 1..d");
    if (p.distinguishedEdge < 0 || p.distinguishedEdge >= p.length)
      throw std::invalid_argument("buildFlower: distinguished edge index out of range");
    if (static_cast<int>(p.weights.size()) != p.length)
      throw std::invalid_argument("buildFlower: petal needs one weight per cycle edge");
    if (static_cast<int>(p.potentials.size()) != p.length - 1)
      throw std::invalid_argument("buildFlower: petal needs one potential per internal vertex");
    for (const auto& w : p.weights)
      if (w.isZero()) throw std::invalid_argument("buildFlower: zero petal edge weight");
    covered[p.generator - 1] = true;
  }
  for (int i = 0; i < spec.dim; ++i)
    if (!covered[i])
      throw std::invalid_argument("buildFlower: annotation does not cover every generator");
  for (const auto& e : spec.stemEdges) {
    const int ns = static_cast<int>(spec.stemVertices.size());
    if (e.u < 0 || e.u >= ns || e.v < 0 || e.v >= ns)
      throw std::invalid_argument("buildFlower: stem edge references a missing vertex");
    if (e.weight.isZero()) throw std::invalid_argument("buildFlower: zero stem edge weight");
  }

  PeriodicGraph g;
  g.dim = spec.dim;
  g.vertices = spec.stemVertices;
  const std::vector<int> zero(spec.dim, 0);
  for (const auto& e : spec.stemEdges) g.orbits.push_back({e.u, e.v, zero, e.weight});

  for (std::size_t pi = 0; pi < spec.petals.size(); ++pi) {
    const Petal& p = spec.petals[pi];
    std::vector<int> cycle{0};  // starts and ends at the distinguished vertex u
    for (int j = 0; j + 1 < p.length; ++j) {
      Vertex v;
      v.potential = p.potentials[j];
      v.name = (j < static_cast<int>(p.names.size()) && !p.names[j].empty())
                   ? p.names[j]
                   : "p" + std::to_string(pi + 1) + "_" + std::to_string(j + 1);
      cycle.push_back(static_cast<int>(g.vertices.size()));
      g.vertices.push_back(std::move(v));
    }
    for (int j = 0; j < p.length; ++j) {
      int from = cycle[j];
      int to = cycle[(j + 1) % p.length];
      std::vector<int> shift = zero;
      if (j == p.distinguishedEdge) shift[p.generator - 1] = 1;
      g.orbits.push_back({from, to, std::move(shift), p.weights[j]});
    }
  }
  normalize(g);
  return g;
}

struct FiniteBlock {
  std::vector<Vertex> vertices;
  std::vector<StemEdge> edges;
};

struct IsthmusSpec {
  int dim = 1;
  FiniteBlock blockA, blockB;
  std::vector<Rational> isthmusPotentials;  // v_1..v_m
  std::vector<Rational> pathWeights;        // c_1..c_{m-1}
  Rational cutA, cutB;                      // c_0 and c_m (when the block is nonempty)
  std::vector<int> f;                       // generator j attaches at isthmus vertex f[j-1]
  std::vector<Rational> periodicWeights;    // E_1..E_d
  std::vector<std::string> isthmusNames;    // optional
};

inline PeriodicGraph buildIsthmus(const IsthmusSpec& spec) {
  const int a = static_cast<int>(spec.blockA.vertices.size());
  const int m = static_cast<int>(spec.isthmusPotentials.size());
  const int b = static_cast<int>(spec.blockB.vertices.size());
  if (spec.dim < 1) throw std::invalid_argument("buildIsthmus: dimension must be positive");
  if (m < 1) throw std::invalid_argument("buildIsthmus: isthmus needs at least one vertex");
  if (static_cast<int>(spec.f.size()) != spec.dim ||
      static_cast<int>(spec.periodicWeights.size()) != spec.dim)
    throw std::invalid_argument("buildIsthmus: need one attachment and one weight per generator");
  for (int j = 0; j < spec.dim; ++j) {
    if (spec.f[j] < 1 || spec.f[j] > m)
      throw std::invalid_argument("buildIsthmus: attachment index outside 1..m");
    if (spec.periodicWeights[j].isZero())
      throw std::invalid_argument("buildIsthmus: zero periodic weight");
  }
  if (static_cast<int>(spec.pathWeights.size()) != m - 1)
    throw std::invalid_argument("buildIsthmus: need exactly m-1 path weights");
  for (const auto& c : spec.pathWeights)
    if (c.isZero()) throw std::invalid_argument("buildIsthmus: zero path weight");
  if (a > 0 && spec.cutA.isZero())
    throw std::invalid_argument("buildIsthmus: zero cut weight to block A");
  if (b > 0 && spec.cutB.isZero())
    throw std::invalid_argument("buildIsthmus: zero cut weight to block B");
  auto checkBlock = [](const FiniteBlock& blk, const char* which) {
    const int n = static_cast<int>(blk.vertices.size());
    for (const auto& e : blk.edges) {
      if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
        throw std::invalid_argument(std::string("buildIsthmus: block ") + which +
                                    " edge references a missing vertex");
      if (e.weight.isZero())
        throw std::invalid_argument(std::string("buildIsthmus: zero edge weight in block ") + which);
    }
  };
  checkBlock(spec.blockA, "A");
  checkBlock(spec.blockB, "B");

  PeriodicGraph g;
  g.dim = spec.dim;
  const std::vector<int> zero(spec.dim, 0);
  g.vertices = spec.blockA.vertices;
  for (int r = 0; r < m; ++r) {
    Vertex v;
    v.potential = spec.isthmusPotentials[r];
    v.name = (r < static_cast<int>(spec.isthmusNames.size()) && !spec.isthmusNames[r].empty())
                 ? spec.isthmusNames[r]
                 : "v" + std::to_string(r + 1);
    g.vertices.push_back(std::move(v));
  }
  for (const auto& v : spec.blockB.vertices) g.vertices.push_back(v);

  for (const auto& e : spec.blockA.edges) g.orbits.push_back({e.u, e.v, zero, e.weight});
  if (a > 0) g.orbits.push_back({a - 1, a, zero, spec.cutA});
  for (int r = 0; r + 1 < m; ++r)
    g.orbits.push_back({a + r, a + r + 1, zero, spec.pathWeights[r]});
  if (b > 0) g.orbits.push_back({a + m - 1, a + m, zero, spec.cutB});
  for (const auto& e : spec.blockB.edges)
    g.orbits.push_back({a + m + e.u, a + m + e.v, zero, e.weight});
  for (int j = 0; j < spec.dim; ++j) {
    std::vector<int> shift = zero;
    shift[j] = 1;
    int at = a + spec.f[j] - 1;
    g.orbits.push_back({at, at, std::move(shift), spec.periodicWeights[j]});
  }

  IsthmusStructure info;
  info.a = a;
  info.m = m;
  info.b = b;
  info.f = spec.f;
  g.isthmus = info;
  normalize(g);
  return g;
}

// Adds direction d+1: every vertex gets a self-orbit with shift e_{d+1} and
// the common weight a.
inline PeriodicGraph parallelExtension(const PeriodicGraph& g, const Rational& a) {
  if (a.isZero()) throw std::invalid_argument("parallelExtension: coupling weight must be nonzero");
  PeriodicGraph out;
  out.dim = g.dim + 1;
  out.vertices = g.vertices;
  for (const auto& e : g.orbits) {
    EdgeOrbit n = e;
    n.shift.push_back(0);
    out.orbits.push_back(std::move(n));
  }
  for (int v = 0; v < static_cast<int>(g.vertices.size()); ++v) {
    std::vector<int> shift(out.dim, 0);
    shift[g.dim] = 1;
    out.orbits.push_back({v, v, std::move(shift), a});
  }
  normalize(out);
  return out;
}

}  // namespace bloch

#pragma once

// Z^d-periodic weighted graphs, given by a finite quotient: vertices with
// rational potentials and edge orbits (u, v, shift) with rational weights.
// An orbit (u, v, a) stands for the edges {u@n -- v@(n+a) : n in Z^d}.

#include <algorithm>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "bloch/rational.hpp"

namespace bloch {

struct Vertex {
  std::string name;
  Rational potential;
};

struct EdgeOrbit {
  int u = 0, v = 0;
  std::vector<int> shift;
  Rational weight;
};

// attached by buildIsthmus; positions run 1-a..0 (block A), 1..m (isthmus),
// m+1..m+b (block B), matching vertex array order
struct IsthmusStructure {
  int a = 0, m = 0, b = 0;
  std::vector<int> f;  // generator j (1-based slot j-1) sits at isthmus vertex f[j-1] in 1..m
};

struct PeriodicGraph {
  int dim = 0;
  std::vector<Vertex> vertices;
  std::vector<EdgeOrbit> orbits;
  std::optional<IsthmusStructure> isthmus;

  int vertexIndex(const std::string& name) const {
    for (std::size_t i = 0; i < vertices.size(); ++i)
      if (vertices[i].name == name) return static_cast<int>(i);
    return -1;
  }
};

inline bool lexNegative(const std::vector<int>& s) {
  for (int e : s) {
    if (e < 0) return true;
    if (e > 0) return false;
  }
  return false;
}

inline bool isZeroShift(const std::vector<int>& s) {
  for (int e : s) if (e != 0) return false;
  return true;
}

// canonical orientation: u < v arbitrary shift, or u == v with the shift
// lexicographically nonnegative
inline EdgeOrbit canonicalOrbit(EdgeOrbit e) {
  bool flip = e.u > e.v || (e.u == e.v && lexNegative(e.shift));
  if (flip) {
    std::swap(e.u, e.v);
    for (auto& s : e.shift) s = -s;
  }
  return e;
}

inline void normalize(PeriodicGraph& g) {
  for (auto& e : g.orbits) e = canonicalOrbit(std::move(e));
  std::sort(g.orbits.begin(), g.orbits.end(), [](const EdgeOrbit& a, const EdgeOrbit& b) {
    if (a.u != b.u) return a.u < b.u;
    if (a.v != b.v) return a.v < b.v;
    return a.shift < b.shift;
  });
}

struct Diagnostic {
  std::string code;
  std::string detail;
};

inline std::vector<Diagnostic> validate(const PeriodicGraph& g) {
  std::vector<Diagnostic> out;
  const int n = static_cast<int>(g.vertices.size());
  if (g.dim < 1) out.push_back({"bad-dimension", "dimension must be at least 1"});
  if (n == 0) out.push_back({"no-vertices", "graph has no vertices"});
  std::map<std::string, int> seen;
  for (int i = 0; i < n; ++i) {
    auto [it, fresh] = seen.emplace(g.vertices[i].name, i);
    if (!fresh)
      out.push_back({"duplicate-vertex-name", "vertex name '" + g.vertices[i].name + "' reused"});
  }
  std::map<std::tuple<int, int, std::vector<int>>, int> orbitSeen;
  for (const auto& e : g.orbits) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n) {
      out.push_back({"bad-vertex-index", "edge orbit references a missing vertex"});
      continue;
    }
    if (static_cast<int>(e.shift.size()) != g.dim) {
      out.push_back({"bad-shift-length", "shift vector length differs from the dimension"});
      continue;
    }
    if (e.weight.isZero())
      out.push_back({"zero-weight", "edge orbit has weight zero"});
    if (e.u == e.v && isZeroShift(e.shift))
      out.push_back({"zero-shift-loop", "loop with zero shift is not a valid orbit"});
    EdgeOrbit c = canonicalOrbit(e);
    auto key = std::make_tuple(c.u, c.v, c.shift);
    if (!orbitSeen.emplace(key, 1).second)
      out.push_back({"duplicate-orbit", "edge orbit between the same vertices with the same shift listed twice"});
  }
  return out;
}

namespace detail {

// row span of `rows` equals all of Z^d?
inline bool latticeIsFull(std::vector<std::vector<long long>> rows, int d) {
  int rank = 0;
  long long pivotProduct = 1;
  for (int col = 0; col < d; ++col) {
    // Euclidean reduction within this column over rows[rank..]
    while (true) {
      int best = -1;
      for (int r = rank; r < static_cast<int>(rows.size()); ++r) {
        if (rows[r][col] == 0) continue;
        if (best < 0 || std::abs(rows[r][col]) < std::abs(rows[best][col])) best = r;
      }
      if (best < 0) break;
      std::swap(rows[rank], rows[best]);
      bool others = false;
      for (int r = rank + 1; r < static_cast<int>(rows.size()); ++r) {
        if (rows[r][col] == 0) continue;
        long long q = rows[r][col] / rows[rank][col];
        for (int j = 0; j < d; ++j) rows[r][j] -= q * rows[rank][j];
        if (rows[r][col] != 0) others = true;
      }
      if (!others) break;
    }
    if (rank < static_cast<int>(rows.size()) && rows[rank][col] != 0) {
      pivotProduct *= std::abs(rows[rank][col]);
      ++rank;
    }
  }
  return rank == d && pivotProduct == 1;
}

struct ComponentInfo {
  std::vector<int> members;                      // quotient vertex indices
  std::vector<std::vector<long long>> closures;  // net shifts of non-tree edges
};

inline std::vector<ComponentInfo> componentSweep(const PeriodicGraph& g) {
  const int n = static_cast<int>(g.vertices.size());
  std::vector<std::vector<std::pair<int, const EdgeOrbit*>>> adj(n);
  for (const auto& e : g.orbits) {
    adj[e.u].push_back({e.v, &e});
    if (e.u != e.v) adj[e.v].push_back({e.u, &e});
  }
  std::vector<int> comp(n, -1);
  std::vector<ComponentInfo> out;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    ComponentInfo info;
    std::vector<std::vector<long long>> pos(n);
    comp[s] = static_cast<int>(out.size());
    pos[s].assign(g.dim, 0);
    std::vector<int> queue{s};
    info.members.push_back(s);
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      int u = queue[qi];
      for (const auto& [w, e] : adj[u]) {
        // traversing the orbit from u: shift is +e->shift from e->u, else reversed
        std::vector<long long> step(g.dim);
        for (int i = 0; i < g.dim; ++i)
          step[i] = (u == e->u) ? e->shift[i] : -e->shift[i];
        if (comp[w] < 0) {
          comp[w] = comp[u];
          pos[w].resize(g.dim);
          for (int i = 0; i < g.dim; ++i) pos[w][i] = pos[u][i] + step[i];
          info.members.push_back(w);
          queue.push_back(w);
        } else {
          std::vector<long long> closure(g.dim);
          bool nonzero = false;
          for (int i = 0; i < g.dim; ++i) {
            closure[i] = pos[u][i] + step[i] - pos[w][i];
            if (closure[i] != 0) nonzero = true;
          }
          if (nonzero) info.closures.push_back(std::move(closure));
        }
      }
    }
    std::sort(info.members.begin(), info.members.end());
    out.push_back(std::move(info));
  }
  return out;
}

}  // namespace detail

// True when the periodic realization is connected: one quotient component and
// the cycle shifts generate the whole translation lattice Z^d.
inline bool isConnected(const PeriodicGraph& g) {
  if (g.vertices.empty()) return false;
  auto comps = detail::componentSweep(g);
  if (comps.size() != 1) return false;
  return detail::latticeIsFull(comps[0].closures, g.dim);
}

// Quotient components whose periodic lift splits into finite pieces (all cycle
// shifts vanish), reported as sorted vertex-index sets.
inline std::vector<std::vector<int>> boundedComponents(const PeriodicGraph& g) {
  std::vector<std::vector<int>> out;
  for (auto& c : detail::componentSweep(g)) {
    bool bounded = true;
    for (const auto& cl : c.closures)
      for (long long x : cl)
        if (x != 0) bounded = false;
    if (bounded) out.push_back(std::move(c.members));
  }
  return out;
}

// proper nonempty subset of coordinates to keep, +-1 signs for the rest
struct Projection {
  std::vector<int> kept;     // ascending 0-based indices
  std::map<int, int> signs;  // dropped index -> +-1
};

// all (I, eps) with I a proper nonempty coordinate subset: 3^d - 2^d - 1 many
inline std::vector<Projection> enumerateProjections(int d) {
  std::vector<Projection> out;
  for (unsigned mask = 1; mask + 1 < (1u << d); ++mask) {
    Projection base;
    std::vector<int> dropped;
    for (int i = 0; i < d; ++i) {
      if (mask & (1u << i)) base.kept.push_back(i);
      else dropped.push_back(i);
    }
    for (unsigned sm = 0; sm < (1u << dropped.size()); ++sm) {
      Projection p = base;
      for (std::size_t j = 0; j < dropped.size(); ++j)
        p.signs[dropped[j]] = (sm & (1u << j)) ? -1 : 1;
      out.push_back(std::move(p));
    }
  }
  return out;
}

}  // namespace bloch

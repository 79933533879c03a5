#pragma once

// Graph spec files: JSON documents with a "type" discriminator.  type
// "graph" lists vertices/edges directly; "flower", "isthmus" and "parallel"
// are generator specs that are expanded on load.  Rational literals are
// integers or "p/q" strings; unknown fields are rejected.

#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "json.hpp"

#include "bloch/families.hpp"
#include "bloch/floquet.hpp"

namespace bloch {

using json = nlohmann::ordered_json;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace ioutil {

inline void checkKeys(const json& obj, const std::set<std::string>& allowed,
                      const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + ": expected an object");
  for (const auto& [key, value] : obj.items())
    if (!allowed.count(key))
      throw ParseError(where + ": unknown field '" + key + "'");
}

inline const json& field(const json& obj, const std::string& key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + ": missing field '" + key + "'");
  return *it;
}

inline Rational rationalField(const json& v, const std::string& where) {
  if (v.is_number_integer()) return Rational(static_cast<long>(v.get<long long>()));
  if (v.is_string()) {
    try {
      return Rational::parse(v.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  throw ParseError(where + ": expected an integer or a \"p/q\" string");
}

inline int intField(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw ParseError(where + ": expected an integer");
  return v.get<int>();
}

inline std::string stringField(const json& v, const std::string& where) {
  if (!v.is_string()) throw ParseError(where + ": expected a string");
  return v.get<std::string>();
}

inline std::vector<int> shiftField(const json& v, int dim, const std::string& where) {
  if (!v.is_array() || static_cast<int>(v.size()) != dim)
    throw ParseError(where + ": shift must be an array of " + std::to_string(dim) + " integers");
  std::vector<int> out;
  for (const auto& e : v) out.push_back(intField(e, where));
  return out;
}

}  // namespace ioutil

inline std::vector<Vertex> parseVertexList(const json& arr, const std::string& where) {
  if (!arr.is_array() || arr.empty())
    throw ParseError(where + ": expected a nonempty vertex array");
  std::vector<Vertex> out;
  for (const auto& v : arr) {
    ioutil::checkKeys(v, {"name", "potential"}, where);
    Vertex vx;
    vx.name = ioutil::stringField(ioutil::field(v, "name", where), where + ".name");
    vx.potential = ioutil::rationalField(ioutil::field(v, "potential", where), where + ".potential");
    out.push_back(std::move(vx));
  }
  return out;
}

inline PeriodicGraph parseGraphObject(const json& doc) {
  ioutil::checkKeys(doc, {"type", "dimension", "vertices", "edges", "isthmus"}, "graph");
  PeriodicGraph g;
  g.dim = ioutil::intField(ioutil::field(doc, "dimension", "graph"), "graph.dimension");
  g.vertices = parseVertexList(ioutil::field(doc, "vertices", "graph"), "graph.vertices");
  const json& edges = ioutil::field(doc, "edges", "graph");
  if (!edges.is_array()) throw ParseError("graph.edges: expected an array");
  for (const auto& e : edges) {
    ioutil::checkKeys(e, {"u", "v", "shift", "weight"}, "graph.edges");
    EdgeOrbit orbit;
    std::string un = ioutil::stringField(ioutil::field(e, "u", "graph.edges"), "edge.u");
    std::string vn = ioutil::stringField(ioutil::field(e, "v", "graph.edges"), "edge.v");
    orbit.u = g.vertexIndex(un);
    orbit.v = g.vertexIndex(vn);
    if (orbit.u < 0) throw ParseError("graph.edges: unknown vertex '" + un + "'");
    if (orbit.v < 0) throw ParseError("graph.edges: unknown vertex '" + vn + "'");
    orbit.shift = ioutil::shiftField(ioutil::field(e, "shift", "graph.edges"), g.dim, "edge.shift");
    orbit.weight = ioutil::rationalField(ioutil::field(e, "weight", "graph.edges"), "edge.weight");
    g.orbits.push_back(std::move(orbit));
  }
  if (doc.contains("isthmus")) {
    const json& info = doc["isthmus"];
    ioutil::checkKeys(info, {"a", "m", "b", "f"}, "graph.isthmus");
    IsthmusStructure is;
    is.a = ioutil::intField(ioutil::field(info, "a", "graph.isthmus"), "isthmus.a");
    is.m = ioutil::intField(ioutil::field(info, "m", "graph.isthmus"), "isthmus.m");
    is.b = ioutil::intField(ioutil::field(info, "b", "graph.isthmus"), "isthmus.b");
    const json& f = ioutil::field(info, "f", "graph.isthmus");
    if (!f.is_array()) throw ParseError("graph.isthmus.f: expected an array");
    for (const auto& x : f) is.f.push_back(ioutil::intField(x, "isthmus.f"));
    g.isthmus = std::move(is);
  }
  normalize(g);
  return g;
}

inline FiniteBlock parseBlock(const json& doc, const std::string& where) {
  ioutil::checkKeys(doc, {"vertices", "edges"}, where);
  FiniteBlock blk;
  if (doc.contains("vertices") && !doc["vertices"].empty())
    blk.vertices = parseVertexList(doc["vertices"], where + ".vertices");
  if (doc.contains("edges")) {
    const json& edges = doc["edges"];
    if (!edges.is_array()) throw ParseError(where + ".edges: expected an array");
    for (const auto& e : edges) {
      ioutil::checkKeys(e, {"u", "v", "weight"}, where + ".edges");
      StemEdge se;
      std::string un = ioutil::stringField(ioutil::field(e, "u", where), where + ".edges.u");
      std::string vn = ioutil::stringField(ioutil::field(e, "v", where), where + ".edges.v");
      se.u = se.v = -1;
      for (std::size_t i = 0; i < blk.vertices.size(); ++i) {
        if (blk.vertices[i].name == un) se.u = static_cast<int>(i);
        if (blk.vertices[i].name == vn) se.v = static_cast<int>(i);
      }
      if (se.u < 0) throw ParseError(where + ".edges: unknown vertex '" + un + "'");
      if (se.v < 0) throw ParseError(where + ".edges: unknown vertex '" + vn + "'");
      se.weight = ioutil::rationalField(ioutil::field(e, "weight", where), where + ".edges.weight");
      blk.edges.push_back(std::move(se));
    }
  }
  return blk;
}

inline FlowerSpec parseFlowerSpec(const json& doc) {
  ioutil::checkKeys(doc, {"type", "dimension", "stem", "petals"}, "flower");
  FlowerSpec spec;
  spec.dim = ioutil::intField(ioutil::field(doc, "dimension", "flower"), "flower.dimension");
  const json& stem = ioutil::field(doc, "stem", "flower");
  ioutil::checkKeys(stem, {"vertices", "edges"}, "flower.stem");
  spec.stemVertices = parseVertexList(ioutil::field(stem, "vertices", "flower.stem"),
                                      "flower.stem.vertices");
  if (stem.contains("edges")) {
    json blockDoc = json::object();
    blockDoc["vertices"] = stem["vertices"];
    blockDoc["edges"] = stem["edges"];
    spec.stemEdges = parseBlock(blockDoc, "flower.stem").edges;
  }
  const json& petals = ioutil::field(doc, "petals", "flower");
  if (!petals.is_array() || petals.empty())
    throw ParseError("flower.petals: expected a nonempty array");
  for (const auto& p : petals) {
    ioutil::checkKeys(p, {"length", "generator", "distinguished_edge", "potentials",
                          "weights", "names"}, "flower.petals");
    Petal petal;
    petal.length = ioutil::intField(ioutil::field(p, "length", "petal"), "petal.length");
    petal.generator = ioutil::intField(ioutil::field(p, "generator", "petal"), "petal.generator");
    petal.distinguishedEdge =
        p.contains("distinguished_edge")
            ? ioutil::intField(p["distinguished_edge"], "petal.distinguished_edge")
            : 0;
    if (p.contains("potentials"))
      for (const auto& x : p["potentials"])
        petal.potentials.push_back(ioutil::rationalField(x, "petal.potentials"));
    const json& ws = ioutil::field(p, "weights", "petal");
    if (!ws.is_array()) throw ParseError("petal.weights: expected an array");
    for (const auto& x : ws) petal.weights.push_back(ioutil::rationalField(x, "petal.weights"));
    if (p.contains("names"))
      for (const auto& x : p["names"])
        petal.names.push_back(ioutil::stringField(x, "petal.names"));
    spec.petals.push_back(std::move(petal));
  }
  return spec;
}

inline IsthmusSpec parseIsthmusSpec(const json& doc) {
  ioutil::checkKeys(doc, {"type", "dimension", "block_a", "block_b", "isthmus", "cut_a",
                          "cut_b", "attachments", "periodic_weights"}, "isthmus");
  IsthmusSpec spec;
  spec.dim = ioutil::intField(ioutil::field(doc, "dimension", "isthmus"), "isthmus.dimension");
  if (doc.contains("block_a")) spec.blockA = parseBlock(doc["block_a"], "isthmus.block_a");
  if (doc.contains("block_b")) spec.blockB = parseBlock(doc["block_b"], "isthmus.block_b");
  const json& mid = ioutil::field(doc, "isthmus", "isthmus");
  ioutil::checkKeys(mid, {"potentials", "path_weights", "names"}, "isthmus.isthmus");
  for (const auto& x : ioutil::field(mid, "potentials", "isthmus.isthmus"))
    spec.isthmusPotentials.push_back(ioutil::rationalField(x, "isthmus.potentials"));
  if (mid.contains("path_weights"))
    for (const auto& x : mid["path_weights"])
      spec.pathWeights.push_back(ioutil::rationalField(x, "isthmus.path_weights"));
  if (mid.contains("names"))
    for (const auto& x : mid["names"])
      spec.isthmusNames.push_back(ioutil::stringField(x, "isthmus.names"));
  if (doc.contains("cut_a")) spec.cutA = ioutil::rationalField(doc["cut_a"], "isthmus.cut_a");
  if (doc.contains("cut_b")) spec.cutB = ioutil::rationalField(doc["cut_b"], "isthmus.cut_b");
  for (const auto& x : ioutil::field(doc, "attachments", "isthmus"))
    spec.f.push_back(ioutil::intField(x, "isthmus.attachments"));
  for (const auto& x : ioutil::field(doc, "periodic_weights", "isthmus"))
    spec.periodicWeights.push_back(ioutil::rationalField(x, "isthmus.periodic_weights"));
  return spec;
}

inline PeriodicGraph graphFromJson(const json& doc);

inline PeriodicGraph parseParallelSpec(const json& doc) {
  ioutil::checkKeys(doc, {"type", "weight", "base"}, "parallel");
  Rational w = ioutil::rationalField(ioutil::field(doc, "weight", "parallel"), "parallel.weight");
  return parallelExtension(graphFromJson(ioutil::field(doc, "base", "parallel")), w);
}

inline PeriodicGraph graphFromJson(const json& doc) {
  if (!doc.is_object()) throw ParseError("graph spec: expected a JSON object");
  std::string type = ioutil::stringField(ioutil::field(doc, "type", "graph spec"), "type");
  if (type == "graph") return parseGraphObject(doc);
  if (type == "flower") return buildFlower(parseFlowerSpec(doc));
  if (type == "isthmus") return buildIsthmus(parseIsthmusSpec(doc));
  if (type == "parallel") return parseParallelSpec(doc);
  throw ParseError("graph spec: unknown type '" + type + "'");
}

inline json readJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("'" + path + "': " + e.what());
  }
  return doc;
}

inline PeriodicGraph loadGraph(const std::string& path) {
  return graphFromJson(readJsonFile(path));
}

inline FlowerSpec loadFlowerSpec(const std::string& path) {
  json doc = readJsonFile(path);
  std::string type = ioutil::stringField(ioutil::field(doc, "type", "graph spec"), "type");
  if (type != "flower")
    throw ParseError("'" + path + "': expected a flower spec, found type '" + type + "'");
  return parseFlowerSpec(doc);
}

inline json graphToJson(const PeriodicGraph& g) {
  json doc;
  doc["type"] = "graph";
  doc["dimension"] = g.dim;
  doc["vertices"] = json::array();
  for (const auto& v : g.vertices)
    doc["vertices"].push_back({{"name", v.name}, {"potential", v.potential.str()}});
  doc["edges"] = json::array();
  for (const auto& e : g.orbits)
    doc["edges"].push_back({{"u", g.vertices[e.u].name},
                            {"v", g.vertices[e.v].name},
                            {"shift", e.shift},
                            {"weight", e.weight.str()}});
  if (g.isthmus) {
    doc["isthmus"] = {{"a", g.isthmus->a}, {"m", g.isthmus->m}, {"b", g.isthmus->b},
                      {"f", g.isthmus->f}};
  }
  return doc;
}

inline std::string canonicalGraphText(const PeriodicGraph& g) {
  PeriodicGraph copy = g;
  normalize(copy);
  return graphToJson(copy).dump(2);
}

inline void writeGraph(const PeriodicGraph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << canonicalGraphText(g) << "\n";
}

inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string graphDigest(const PeriodicGraph& g) {
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << fnv1a(canonicalGraphText(g));
  return os.str();
}

}  // namespace bloch

// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "amalgam/io.h"

#include <charconv>
#include <fstream>
#include <sstream>

#include "amalgam/errors.h"

namespace amalgam {
namespace {

int ParseInt(const std::string& s, const std::string& what) {
  int value = 0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc() || ptr != end || s.empty()) {
    throw DomainError(what + " '" + s + "' is not an integer");
  }
  return value;
}

int IntField(const Json& j, const std::string& what) {
  if (!j.is_number_integer()) throw DomainError(what + " must be an integer");
  return j.get<int>();
}

const Json& Member(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) {
    throw DomainError(where + " is missing \"" + key + "\"");
  }
  return j.at(key);
}

// "1,2,5" with the empty string for the empty set.
ElementSet ParseSubsetKey(const std::string& key) {
  std::vector<ElementId> ids;
  std::stringstream in(key);
  std::string part;
  while (std::getline(in, part, ',')) {
    ids.push_back(ParseInt(part, "rank key element"));
  }
  return ElementSet(std::move(ids));
}

std::string SubsetKey(const ElementSet& s) {
  std::string out;
  for (ElementId e : s) {
    if (!out.empty()) out += ",";
    out += std::to_string(e);
  }
  return out;
}

Matroid LinearFromJson(const Json& j) {
  LinearRepresentation rep;
  rep.field = IntField(Member(j, "field", "linear matroid"), "field");
  if (!IsSupportedPrime(rep.field)) {
    throw DomainError("field GF(" + std::to_string(rep.field) +
                      ") is not supported; use 2, 3, 5 or 7");
  }
  const Json& cols = Member(j, "columns", "linear matroid");
  if (!cols.is_object()) throw DomainError("\"columns\" must be an object");
  int dim = -1;
  if (j.contains("dimension")) dim = IntField(j.at("dimension"), "dimension");
  for (const auto& [key, value] : cols.items()) {
    const ElementId e = ParseInt(key, "element id");
    if (!value.is_array()) throw DomainError("column must be an array");
    FieldVector v;
    for (const Json& x : value) {
      const int c = IntField(x, "column entry");
      if (c < 0 || c >= rep.field) {
        throw DomainError("column entry " + std::to_string(c) +
                          " outside [0, " + std::to_string(rep.field) + ")");
      }
      v.push_back(c);
    }
    if (dim < 0) dim = static_cast<int>(v.size());
    if (static_cast<int>(v.size()) != dim) {
      throw DomainError("column of element " + key + " has length " +
                        std::to_string(v.size()) + ", expected " +
                        std::to_string(dim));
    }
    rep.columns[e] = std::move(v);
  }
  rep.dimension = std::max(dim, 0);
  return Matroid::Linear(std::move(rep));
}

Matroid GraphicFromJson(const Json& j) {
  GraphDescription g;
  const Json& edges = Member(j, "edges", "graphic matroid");
  if (!edges.is_object()) throw DomainError("\"edges\" must be an object");
  for (const auto& [key, value] : edges.items()) {
    if (!value.is_array() || value.size() != 2) {
      throw DomainError("edge " + key + " must be a pair of vertices");
    }
    g.edges[ParseInt(key, "element id")] = {IntField(value[0], "vertex"),
                                            IntField(value[1], "vertex")};
  }
  return Matroid::Graphic(std::move(g));
}

Matroid ExplicitFromJson(const Json& j) {
  const ElementSet ground =
      ElementSetFromJson(Member(j, "elements", "explicit matroid"));
  if (j.contains("independent_sets")) {
    std::vector<ElementSet> sets;
    for (const Json& s : j.at("independent_sets")) {
      sets.push_back(ElementSetFromJson(s));
    }
    return Matroid::FromIndependentSets(ground, sets);
  }
  const Json& rank = Member(j, "rank", "explicit matroid");
  const int n = static_cast<int>(ground.size());
  RequireWithinLimit(n, Matroid::kMaxTableElements, "explicit matroid");
  Matroid shell = FreeMatroid(ground);
  std::vector<int> table(std::size_t{1} << n, -1);
  for (const auto& [key, value] : rank.items()) {
    const ElementSet s = ParseSubsetKey(key);
    if (!s.IsSubsetOf(ground)) {
      throw DomainError("rank key '" + key + "' names unknown elements");
    }
    table[shell.ToMask(s)] = IntField(value, "rank value");
  }
  std::vector<std::uint8_t> bytes;
  for (std::size_t m = 0; m < table.size(); ++m) {
    if (table[m] < 0 || table[m] > n) {
      throw DomainError("rank of " + shell.ToSet(m).ToString() +
                        (table[m] < 0 ? " is missing" : " is out of range"));
    }
    bytes.push_back(static_cast<std::uint8_t>(table[m]));
  }
  return Matroid::FromRankTable(ground, std::move(bytes));
}

}  // namespace

Json LoadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError("'" + path + "' is not valid JSON: " + e.what());
  }
}

Json ElementSetToJson(const ElementSet& s) {
  Json out = Json::array();
  for (ElementId e : s) out.push_back(e);
  return out;
}

ElementSet ElementSetFromJson(const Json& j) {
  if (!j.is_array()) throw DomainError("element list must be an array");
  std::vector<ElementId> ids;
  for (const Json& x : j) ids.push_back(IntField(x, "element id"));
  ElementSet out(ids);
  if (out.size() != ids.size()) {
    throw DomainError("element list has duplicates");
  }
  return out;
}

Matroid MatroidFromJson(const Json& j) {
  const Json& type = Member(j, "type", "matroid");
  if (!type.is_string()) throw DomainError("\"type\" must be a string");
  const std::string t = type.get<std::string>();
  if (t == "linear") return LinearFromJson(j);
  if (t == "graphic") return GraphicFromJson(j);
  if (t == "explicit") return ExplicitFromJson(j);
  throw DomainError("unknown matroid type '" + t + "'");
}

Json MatroidToJson(const Matroid& m) {
  Json out;
  if (const LinearRepresentation* rep = m.linear()) {
    out["type"] = "linear";
    out["field"] = rep->field;
    out["dimension"] = rep->dimension;
    Json cols = Json::object();
    for (const auto& [e, v] : rep->columns) cols[std::to_string(e)] = v;
    out["columns"] = cols;
    return out;
  }
  if (const GraphDescription* g = m.graph()) {
    out["type"] = "graphic";
    Json edges = Json::object();
    for (const auto& [e, uv] : g->edges) {
      edges[std::to_string(e)] = {uv.first, uv.second};
    }
    out["edges"] = edges;
    return out;
  }
  RequireWithinLimit(m.size(), Matroid::kMaxTableElements,
                     "explicit matroid output");
  out["type"] = "explicit";
  out["elements"] = ElementSetToJson(m.ground_set());
  Json rank = Json::object();
  for (Mask s = 0; s <= m.full_mask(); ++s) {
    rank[SubsetKey(m.ToSet(s))] = m.Rank(s);
    if (s == m.full_mask()) break;
  }
  out["rank"] = rank;
  return out;
}

AmalgamDecomposition DecompositionFromJson(const Json& j) {
  AmalgamDecomposition t;
  const Json& root = Member(j, "root", "decomposition");
  t.root = root.is_string() ? root.get<std::string>() : root.dump();
  const Json& nodes = Member(j, "nodes", "decomposition");
  if (!nodes.is_object()) throw DomainError("\"nodes\" must be an object");
  for (const auto& [id, value] : nodes.items()) {
    const std::string where = "node " + id;
    DecompositionNode n;
    if (value.contains("children")) {
      for (const Json& c : value.at("children")) {
        n.children.push_back(c.is_string() ? c.get<std::string>() : c.dump());
      }
    }
    try {
      n.k = MatroidFromJson(Member(value, "K", where));
    } catch (const ResourceError&) {
      throw;
    } catch (const DomainError& e) {
      throw DomainError(where + ": " + e.what());
    }
    if (value.contains("J1")) n.j1 = ElementSetFromJson(value.at("J1"));
    if (value.contains("J2")) n.j2 = ElementSetFromJson(value.at("J2"));
    if (value.contains("D")) n.d = ElementSetFromJson(value.at("D"));
    t.nodes[id] = std::move(n);
  }
  return t;
}

Json DecompositionToJson(const AmalgamDecomposition& t) {
  Json nodes = Json::object();
  for (const auto& [id, n] : t.nodes) {
    Json node;
    node["children"] = n.children;
    node["K"] = MatroidToJson(n.k);
    node["J1"] = ElementSetToJson(n.j1);
    node["J2"] = ElementSetToJson(n.j2);
    node["D"] = ElementSetToJson(n.d);
    nodes[id] = node;
  }
  Json out;
  out["nodes"] = nodes;
  out["root"] = t.root;
  return out;
}

BranchDecomposition BranchFromJson(const Json& j) {
  BranchDecomposition b;
  const Json& tree = Member(j, "tree", "branch decomposition");
  for (const Json& e : tree) {
    if (!e.is_array() || e.size() != 2) {
      throw DomainError("tree edges must be pairs of node ids");
    }
    b.edges.push_back(
        {IntField(e[0], "tree node"), IntField(e[1], "tree node")});
  }
  const Json& labels = Member(j, "leaf_labels", "branch decomposition");
  for (const auto& [key, value] : labels.items()) {
    b.leaf_labels[ParseInt(key, "tree node")] = IntField(value, "element id");
  }
  return b;
}

Json BranchToJson(const BranchDecomposition& b) {
  Json tree = Json::array();
  for (const auto& [u, v] : b.edges) tree.push_back({u, v});
  Json labels = Json::object();
  for (const auto& [node, e] : b.leaf_labels) {
    labels[std::to_string(node)] = e;
  }
  Json out;
  out["tree"] = tree;
  out["leaf_labels"] = labels;
  return out;
}

}  // namespace amalgam

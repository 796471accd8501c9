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

#include "amalgam/decomposition.h"

#include <algorithm>
#include <climits>
#include <functional>
#include <optional>
#include <set>

#include "amalgam/amalgam.h"
#include "amalgam/errors.h"
#include "amalgam/gf.h"

namespace amalgam {

const DecompositionNode& AmalgamDecomposition::node(const NodeId& id) const {
  auto it = nodes.find(id);
  if (it == nodes.end()) throw DomainError("unknown node id '" + id + "'");
  return it->second;
}

std::string ValidationReport::Summary() const {
  if (valid()) return "valid, width " + std::to_string(width);
  std::string out;
  for (const auto& v : violations) {
    out += "node " + v.node + ": " + v.message + "\n";
  }
  return out;
}

namespace {

// Shape problems: missing nodes, wrong arity, cycles, unreachable nodes.
std::vector<Violation> StructuralViolations(const AmalgamDecomposition& t) {
  std::vector<Violation> out;
  if (!t.nodes.count(t.root)) {
    out.push_back({t.root, "root node does not exist"});
    return out;
  }
  for (const auto& [id, n] : t.nodes) {
    if (n.children.size() != 0 && n.children.size() != 2) {
      out.push_back({id, "has " + std::to_string(n.children.size()) +
                             " children; expected 0 or 2"});
    }
    for (const auto& c : n.children) {
      if (!t.nodes.count(c)) out.push_back({id, "child '" + c + "' missing"});
    }
  }
  if (!out.empty()) return out;
  std::map<NodeId, int> seen;
  std::vector<NodeId> stack = {t.root};
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    if (seen[v]++ > 0) {
      out.push_back({v, "reached more than once from the root"});
      continue;
    }
    for (const auto& c : t.nodes.at(v).children) stack.push_back(c);
  }
  for (const auto& [id, n] : t.nodes) {
    if (!seen.count(id)) out.push_back({id, "not reachable from the root"});
  }
  return out;
}

void RequireStructure(const AmalgamDecomposition& t) {
  auto v = StructuralViolations(t);
  if (!v.empty()) {
    throw DomainError("malformed decomposition tree at node " + v[0].node +
                      ": " + v[0].message);
  }
}

std::vector<NodeId> PostOrderUnchecked(const AmalgamDecomposition& t) {
  std::vector<NodeId> out;
  std::vector<std::pair<NodeId, bool>> stack = {{t.root, false}};
  while (!stack.empty()) {
    auto [v, expanded] = stack.back();
    stack.pop_back();
    if (expanded) {
      out.push_back(v);
      continue;
    }
    stack.push_back({v, true});
    const auto& ch = t.nodes.at(v).children;
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) {
      stack.push_back({*it, false});
    }
  }
  return out;
}

// Assumes a valid tree; every node in `memo` is final.
Matroid RealizeInto(const AmalgamDecomposition& t, const NodeId& v,
                    std::map<NodeId, Matroid>& memo) {
  if (auto it = memo.find(v); it != memo.end()) return it->second;
  const DecompositionNode& n = t.nodes.at(v);
  Matroid result;
  if (n.is_leaf()) {
    result = n.k;
  } else {
    const Matroid m1 = RealizeInto(t, n.children[0], memo);
    const Matroid m2 = RealizeInto(t, n.children[1], memo);
    const int total = static_cast<int>(
        Union(Union(m1.ground_set(), m2.ground_set()), n.k.ground_set())
            .size());
    if (total > kMaxGroundSet) {
      throw ResourceError("node " + v + " glues " + std::to_string(total) +
                          " elements; at most 64 are supported");
    }
    const Matroid g1 = GeneralizedParallelConnectionUnchecked(n.k, m1);
    const Matroid g2 = GeneralizedParallelConnectionUnchecked(g1, m2);
    result = n.d.empty() ? g2.MaterializeIfSmall()
                         : Delete(g2, n.d).MaterializeIfSmall();
  }
  memo.emplace(v, result);
  return result;
}

}  // namespace

std::vector<NodeId> PostOrder(const AmalgamDecomposition& t) {
  RequireStructure(t);
  return PostOrderUnchecked(t);
}

std::map<NodeId, NodeId> Parents(const AmalgamDecomposition& t) {
  std::map<NodeId, NodeId> out;
  for (const auto& [id, n] : t.nodes) {
    for (const auto& c : n.children) out[c] = id;
  }
  return out;
}

std::map<NodeId, ElementSet> GroundSets(const AmalgamDecomposition& t) {
  std::map<NodeId, ElementSet> out;
  for (const NodeId& v : PostOrder(t)) {
    const DecompositionNode& n = t.nodes.at(v);
    if (n.is_leaf()) {
      out[v] = n.k.ground_set();
    } else {
      out[v] = Difference(Union(Union(out[n.children[0]], out[n.children[1]]),
                                n.k.ground_set()),
                          n.d);
    }
  }
  return out;
}

std::map<NodeId, ElementSet> Boundaries(const AmalgamDecomposition& t) {
  const auto ground = GroundSets(t);
  std::map<NodeId, ElementSet> out;
  out[t.root] = ElementSet();
  for (const auto& [id, n] : t.nodes) {
    for (const auto& c : n.children) {
      out[c] = Intersection(ground.at(c), n.k.ground_set());
    }
  }
  return out;
}

std::map<NodeId, ElementSet> Survivors(const AmalgamDecomposition& t) {
  const auto ground = GroundSets(t);
  std::map<NodeId, ElementSet> out;
  std::vector<NodeId> order = PostOrderUnchecked(t);
  std::reverse(order.begin(), order.end());
  out[t.root] = ground.at(t.root);
  for (const NodeId& v : order) {
    for (const NodeId& c : t.nodes.at(v).children) {
      out[c] = Intersection(ground.at(c), out.at(v));
    }
  }
  return out;
}

std::string NonLocalBoundary(const AmalgamDecomposition& t) {
  for (const auto& [v, j] : Boundaries(t)) {
    const ElementSet outside = Difference(j, t.nodes.at(v).k.ground_set());
    if (!outside.empty()) {
      return "boundary elements " + outside.ToString() + " of node " + v +
             " are not in K(" + v + ")";
    }
  }
  return "";
}

int Width(const AmalgamDecomposition& t) {
  int w = 1;
  for (const auto& [id, n] : t.nodes) w = std::max(w, n.k.size());
  return w;
}

bool IsNice(const AmalgamDecomposition& t) {
  const auto ground = GroundSets(t);
  for (const auto& [id, n] : t.nodes) {
    if (n.is_leaf()) continue;
    const ElementSet j1 =
        Intersection(ground.at(n.children[0]), n.k.ground_set());
    const ElementSet j2 =
        Intersection(ground.at(n.children[1]), n.k.ground_set());
    if (!Intersection(j1, j2).empty()) return false;
  }
  return true;
}

ValidationReport Validate(const AmalgamDecomposition& t) {
  ValidationReport report;
  report.violations = StructuralViolations(t);
  if (!report.violations.empty()) return report;
  report.width = Width(t);
  const auto ground = GroundSets(t);
  std::map<NodeId, bool> subtree_ok;
  std::map<NodeId, Matroid> memo;
  for (const NodeId& v : PostOrderUnchecked(t)) {
    const DecompositionNode& n = t.nodes.at(v);
    const std::size_t before = report.violations.size();
    auto add = [&](std::string msg) {
      report.violations.push_back({v, std::move(msg)});
    };
    if (n.is_leaf()) {
      if (n.k.size() > 1) {
        add("leaf matroid has " + std::to_string(n.k.size()) +
            " elements; at most 1 allowed");
      }
      if (!n.j1.empty() || !n.j2.empty() || !n.d.empty()) {
        add("leaf must have empty J1, J2 and D");
      }
      subtree_ok[v] = report.violations.size() == before;
      continue;
    }
    const ElementSet& ek = n.k.ground_set();
    const NodeId c[2] = {n.children[0], n.children[1]};
    const ElementSet& g1 = ground.at(c[0]);
    const ElementSet& g2 = ground.at(c[1]);
    const ElementSet shared = Intersection(g1, g2);
    if (!shared.IsSubsetOf(ek)) {
      add("E(M1) n E(M2) = " + shared.ToString() +
          " is not contained in E(K)");
    }
    if (!n.d.IsSubsetOf(ek)) {
      add("D = " + n.d.ToString() + " is not contained in E(K)");
    }
    const ElementSet* declared[2] = {&n.j1, &n.j2};
    for (int i = 0; i < 2; ++i) {
      const std::string tag = "J" + std::to_string(i + 1);
      const std::string side = "M" + std::to_string(i + 1);
      const ElementSet j = Intersection(ground.at(c[i]), ek);
      if (*declared[i] != j) {
        add(tag + " declared as " + declared[i]->ToString() + " but E(" +
            side + ") n E(K) = " + j.ToString());
      }
      const DecompositionNode& child = t.nodes.at(c[i]);
      bool restriction_ok = true;
      if (j.IsSubsetOf(Difference(child.k.ground_set(), child.d))) {
        restriction_ok = RestrictionsEqual(child.k, n.k, j);
      } else if (subtree_ok[c[i]]) {
        try {
          restriction_ok =
              RestrictionsEqual(RealizeInto(t, c[i], memo), n.k, j);
        } catch (const ResourceError& e) {
          add("cannot compare " + side + "|" + tag + " with K|" + tag + ": " +
              e.what());
          continue;
        }
      } else {
        continue;
      }
      if (!restriction_ok) {
        add(side + "|" + tag + " != K|" + tag + " for " + tag + " = " +
            j.ToString());
      } else if (!IsModularSemiflat(n.k, j)) {
        add(tag + " = " + j.ToString() + " is not a modular semiflat in K");
      }
    }
    subtree_ok[v] = report.violations.size() == before &&
                    subtree_ok[c[0]] && subtree_ok[c[1]];
  }
  return report;
}

Matroid Realize(const AmalgamDecomposition& t, const NodeId& v) {
  const ValidationReport report = Validate(t);
  if (!report.valid()) {
    throw DomainError("invalid decomposition: node " +
                      report.violations[0].node + ": " +
                      report.violations[0].message);
  }
  if (!t.nodes.count(v)) throw DomainError("unknown node id '" + v + "'");
  const int n = static_cast<int>(GroundSets(t).at(v).size());
  RequireWithinLimit(n, BruteForceLimit(), "realized matroid");
  std::map<NodeId, Matroid> memo;
  return RealizeInto(t, v, memo);
}

Matroid Realize(const AmalgamDecomposition& t) { return Realize(t, t.root); }

namespace {

bool InGround(const AmalgamDecomposition& t, const NodeId& v, ElementId e) {
  const DecompositionNode& n = t.nodes.at(v);
  if (n.is_leaf()) return n.k.HasElement(e);
  if (n.d.contains(e)) return false;
  return n.k.HasElement(e) || InGround(t, n.children[0], e) ||
         InGround(t, n.children[1], e);
}

ElementSet Replace(const ElementSet& s, ElementId from, ElementId to) {
  ElementSet out = s;
  out.erase(from);
  out.insert(to);
  return out;
}

// Renames every occurrence of `from` that is connected to E(M(v)).
void RenameLive(AmalgamDecomposition& t, const NodeId& v, ElementId from,
                ElementId to) {
  DecompositionNode& n = t.nodes.at(v);
  if (n.is_leaf()) {
    n.k = Relabel(n.k, {{from, to}});
    return;
  }
  if (n.k.HasElement(from)) {
    n.k = Relabel(n.k, {{from, to}});
    const NodeId c1 = n.children[0], c2 = n.children[1];
    if (n.j1.contains(from)) {
      n.j1 = Replace(n.j1, from, to);
      RenameLive(t, c1, from, to);
    }
    DecompositionNode& again = t.nodes.at(v);
    if (again.j2.contains(from)) {
      again.j2 = Replace(again.j2, from, to);
      RenameLive(t, c2, from, to);
    }
    return;
  }
  const NodeId c1 = n.children[0], c2 = n.children[1];
  if (InGround(t, c1, from)) {
    RenameLive(t, c1, from, to);
  } else {
    RenameLive(t, c2, from, to);
  }
}

ElementId MaxElementId(const AmalgamDecomposition& t) {
  ElementId best = 0;
  for (const auto& [id, n] : t.nodes) {
    for (ElementId e : n.k.ground_set()) best = std::max(best, e);
  }
  return best;
}

}  // namespace

AmalgamDecomposition ToNice(const AmalgamDecomposition& t) {
  const ValidationReport report = Validate(t);
  if (!report.valid()) {
    throw DomainError("invalid decomposition: node " +
                      report.violations[0].node + ": " +
                      report.violations[0].message);
  }
  AmalgamDecomposition out = t;
  ElementId next = MaxElementId(t) + 1;
  std::vector<NodeId> order = PostOrderUnchecked(t);
  std::reverse(order.begin(), order.end());
  for (const NodeId& v : order) {
    if (out.nodes.at(v).is_leaf()) continue;
    const ElementSet overlap =
        Intersection(out.nodes.at(v).j1, out.nodes.at(v).j2);
    for (ElementId o : overlap) {
      const ElementId fresh = next++;
      RenameLive(out, out.nodes.at(v).children[1], o, fresh);
      DecompositionNode& n = out.nodes.at(v);
      n.k = AddParallel(n.k, o, fresh);
      n.j2 = Replace(n.j2, o, fresh);
      n.d.insert(fresh);
    }
  }
  return out;
}

std::vector<std::string> BranchDecompositionProblems(
    const Matroid& m, const BranchDecomposition& b) {
  std::vector<std::string> out;
  std::map<int, std::vector<int>> adj;
  for (const auto& [node, label] : b.leaf_labels) adj[node];
  for (const auto& [u, v] : b.edges) {
    if (u == v) {
      out.push_back("self-loop at tree node " + std::to_string(u));
      continue;
    }
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  if (!out.empty()) return out;
  if (m.size() == 0) {
    if (!adj.empty()) out.push_back("empty matroid needs an empty tree");
    return out;
  }
  if (adj.empty()) {
    out.push_back("tree has no nodes");
    return out;
  }
  if (b.edges.size() + 1 != adj.size()) {
    out.push_back("tree has " + std::to_string(adj.size()) + " nodes and " +
                  std::to_string(b.edges.size()) + " edges");
  }
  std::set<int> seen;
  std::vector<int> stack = {adj.begin()->first};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    if (!seen.insert(v).second) continue;
    for (int w : adj[v]) stack.push_back(w);
  }
  if (seen.size() != adj.size()) out.push_back("tree is not connected");
  std::set<ElementId> labels;
  for (const auto& [node, nbrs] : adj) {
    const bool labelled = b.leaf_labels.count(node) > 0;
    const std::size_t deg = nbrs.size();
    if (labelled && deg > 1) {
      out.push_back("labelled node " + std::to_string(node) + " has degree " +
                    std::to_string(deg));
    } else if (!labelled && deg != 3) {
      out.push_back("internal node " + std::to_string(node) + " has degree " +
                    std::to_string(deg) + "; expected 3");
    }
  }
  for (const auto& [node, label] : b.leaf_labels) {
    if (!m.HasElement(label)) {
      out.push_back("label " + std::to_string(label) + " is not an element");
    } else if (!labels.insert(label).second) {
      out.push_back("element " + std::to_string(label) +
                    " labels more than one leaf");
    }
  }
  if (labels.size() != m.ground_set().size() && out.empty()) {
    out.push_back("some elements label no leaf");
  }
  return out;
}

int BranchWidthOf(const Matroid& m, const BranchDecomposition& b) {
  auto problems = BranchDecompositionProblems(m, b);
  if (!problems.empty()) {
    throw DomainError("not a branch decomposition: " + problems[0]);
  }
  std::map<int, std::vector<int>> adj;
  for (const auto& [u, v] : b.edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  int width = 1;
  for (const auto& [u, v] : b.edges) {
    // Labels on the u side of the edge.
    std::vector<ElementId> side;
    std::vector<std::pair<int, int>> stack = {{u, v}};
    while (!stack.empty()) {
      auto [x, from] = stack.back();
      stack.pop_back();
      if (auto it = b.leaf_labels.find(x); it != b.leaf_labels.end()) {
        side.push_back(it->second);
      }
      for (int y : adj[x]) {
        if (y != from) stack.push_back({y, x});
      }
    }
    width = std::max(width, SeparationWidth(m, ElementSet(side)));
  }
  return width;
}

namespace {

class BranchBuilder {
 public:
  BranchBuilder(const Matroid& m, const BranchDecomposition& b)
      : rep_(*m.linear()), p_(rep_.field), d_(rep_.dimension) {
    for (const auto& [u, v] : b.edges) {
      adj_[u].push_back(v);
      adj_[v].push_back(u);
    }
    for (const auto& [node, label] : b.leaf_labels) {
      adj_[node];
      label_[node] = label;
    }
    base_ = 0;
    for (const auto& [e, col] : rep_.columns) base_ = std::max(base_, e + 1);
    std::int64_t points = 1;
    for (int i = 0; i < d_; ++i) {
      points *= p_;
      if (points + base_ > INT_MAX) {
        throw ResourceError("field and dimension too large for point ids");
      }
    }
  }

  AmalgamDecomposition Build(const BranchDecomposition& b) {
    AmalgamDecomposition out;
    if (rep_.columns.empty()) {
      out.root = "0";
      out.nodes[out.root] = DecompositionNode{{}, Matroid(), {}, {}, {}};
      return out;
    }
    if (b.edges.empty()) {
      const int node = b.leaf_labels.begin()->first;
      out.root = std::to_string(node);
      out.nodes[out.root] = LeafNode(label_.at(node));
      return out;
    }
    // Root: first internal node in edge order, else a 2-leaf tree.
    std::optional<int> root;
    for (const auto& [u, v] : b.edges) {
      for (int x : {u, v}) {
        if (!root && adj_[x].size() == 3) root = x;
      }
    }
    if (!root) {
      const auto [u, v] = b.edges.front();
      const Part a = BuildPart(out, u, v);
      const Part c = BuildPart(out, v, u);
      out.root = "r";
      Combine(out, out.root, a, c, ZeroSpace());
      return out;
    }
    const auto& nb = adj_[*root];
    const Part a = BuildPart(out, nb[0], *root);
    const Part c = BuildPart(out, nb[1], *root);
    const Part e = BuildPart(out, nb[2], *root);
    Part ac;
    ac.id = std::to_string(*root) + "a";
    ac.elements = Union(a.elements, c.elements);
    ac.boundary = Boundary(ac.elements);
    Combine(out, ac.id, a, c, ac.boundary);
    out.root = std::to_string(*root);
    Combine(out, out.root, ac, e, ZeroSpace());
    return out;
  }

 private:
  struct Part {
    NodeId id;
    ElementSet elements;
    Subspace boundary{2, 0};
    bool leaf = false;
    ElementId element = 0;
  };

  std::vector<FieldVector> Columns(const ElementSet& s) const {
    std::vector<FieldVector> out;
    for (ElementId e : s) out.push_back(rep_.columns.at(e));
    return out;
  }
  ElementSet AllElements() const {
    std::vector<ElementId> ids;
    for (const auto& [e, col] : rep_.columns) ids.push_back(e);
    return ElementSet(std::move(ids));
  }
  Subspace Span(const ElementSet& s) const {
    return Subspace::Span(p_, d_, Columns(s));
  }
  Subspace ZeroSpace() const { return Subspace(p_, d_); }
  Subspace Boundary(const ElementSet& s) const {
    return Span(s).Intersect(Span(Difference(AllElements(), s)));
  }
  ElementId PointId(const FieldVector& x) const {
    return base_ + static_cast<ElementId>(VectorIndex(x, p_));
  }

  DecompositionNode LeafNode(ElementId e) const {
    LinearRepresentation r{p_, d_, {{e, rep_.columns.at(e)}}};
    return DecompositionNode{{}, Matroid::Linear(std::move(r)), {}, {}, {}};
  }

  Part BuildPart(AmalgamDecomposition& out, int v, int parent) {
    Part part;
    part.id = std::to_string(v);
    if (auto it = label_.find(v); it != label_.end()) {
      part.leaf = true;
      part.element = it->second;
      part.elements = ElementSet{it->second};
      part.boundary = Boundary(part.elements);
      out.nodes[part.id] = LeafNode(it->second);
      return part;
    }
    std::vector<int> kids;
    for (int w : adj_[v]) {
      if (w != parent) kids.push_back(w);
    }
    const Part a = BuildPart(out, kids[0], v);
    const Part c = BuildPart(out, kids[1], v);
    part.elements = Union(a.elements, c.elements);
    part.boundary = Boundary(part.elements);
    Combine(out, part.id, a, c, part.boundary);
    return part;
  }

  // Points of `s` as (id, vector) pairs, zero excluded.
  void AddPoints(const Subspace& s, std::map<ElementId, FieldVector>& cols,
                 ElementSet* ids) const {
    for (const FieldVector& x : s.Enumerate()) {
      if (std::all_of(x.begin(), x.end(), [](int c) { return c == 0; })) {
        continue;
      }
      const ElementId id = PointId(x);
      cols[id] = x;
      if (ids) ids->insert(id);
    }
  }

  ElementSet Attach(const Part& part, std::map<ElementId, FieldVector>& cols) {
    ElementSet j;
    if (part.leaf) {
      // Loops and coloops are direct summands and stay out of K.
      if (part.boundary.dimension() > 0) {
        cols[part.element] = rep_.columns.at(part.element);
        j.insert(part.element);
      }
    } else {
      AddPoints(part.boundary, cols, &j);
    }
    return j;
  }

  void Combine(AmalgamDecomposition& out, const NodeId& id, const Part& a,
               const Part& c, const Subspace& boundary) {
    std::map<ElementId, FieldVector> cols;
    DecompositionNode node;
    node.children = {a.id, c.id};
    node.j1 = Attach(a, cols);
    node.j2 = Attach(c, cols);
    ElementSet keep;
    AddPoints(boundary, cols, &keep);
    for (const auto& [e, col] : cols) {
      if (!rep_.columns.count(e) && !keep.contains(e)) node.d.insert(e);
    }
    node.k = Matroid::Linear(LinearRepresentation{p_, d_, std::move(cols)});
    out.nodes[id] = std::move(node);
  }

  const LinearRepresentation& rep_;
  int p_;
  int d_;
  ElementId base_ = 0;
  std::map<int, std::vector<int>> adj_;
  std::map<int, ElementId> label_;
};

}  // namespace

AmalgamDecomposition FromBranchDecomposition(const Matroid& m,
                                             const BranchDecomposition& b) {
  if (m.linear() == nullptr) {
    throw DomainError("branch conversion needs a linear representation");
  }
  if (!IsSupportedPrime(m.linear()->field)) {
    throw DomainError("field GF(" + std::to_string(m.linear()->field) +
                      ") is not supported");
  }
  auto problems = BranchDecompositionProblems(m, b);
  if (!problems.empty()) {
    throw DomainError("not a branch decomposition: " + problems[0]);
  }
  BranchBuilder builder(m, b);
  return builder.Build(b);
}

}  // namespace amalgam

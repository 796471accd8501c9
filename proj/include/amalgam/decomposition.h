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

#ifndef AMALGAM_DECOMPOSITION_H_
#define AMALGAM_DECOMPOSITION_H_

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "amalgam/element_set.h"
#include "amalgam/matroid.h"

namespace amalgam {

using NodeId = std::string;

// One glueing step. Leaves have no children, |E(K)| <= 1 and empty
// J1/J2/D; K of a leaf is the matroid the leaf represents.
struct DecompositionNode {
  std::vector<NodeId> children;
  Matroid k;
  ElementSet j1;
  ElementSet j2;
  ElementSet d;

  bool is_leaf() const { return children.empty(); }
};

struct AmalgamDecomposition {
  std::map<NodeId, DecompositionNode> nodes;
  NodeId root;

  const DecompositionNode& node(const NodeId& id) const;
};

struct Violation {
  NodeId node;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  int width = 0;

  bool valid() const { return violations.empty(); }
  std::string Summary() const;
};

// Children before parents. Requires a structurally sound tree.
std::vector<NodeId> PostOrder(const AmalgamDecomposition& t);
std::map<NodeId, NodeId> Parents(const AmalgamDecomposition& t);

// E(M(v)) for every node, by set arithmetic only.
std::map<NodeId, ElementSet> GroundSets(const AmalgamDecomposition& t);
// J(v) = E(M(v)) n E(K(parent)); empty at the root.
std::map<NodeId, ElementSet> Boundaries(const AmalgamDecomposition& t);

// Elements of M(v) that are still present in M(root).
std::map<NodeId, ElementSet> Survivors(const AmalgamDecomposition& t);

// Empty when J(v) lies in E(K(v)) at every node, which the dynamic
// programs need; otherwise a description of the first offending node.
std::string NonLocalBoundary(const AmalgamDecomposition& t);

// Checks tree shape and every glue precondition; never throws for
// violations, which are collected with node ids.
ValidationReport Validate(const AmalgamDecomposition& t);

// M(v), built bottom-up by glueing. Validates first; DomainError on an
// invalid tree, ResourceError when |E(M(v))| exceeds BruteForceLimit().
Matroid Realize(const AmalgamDecomposition& t, const NodeId& v);
Matroid Realize(const AmalgamDecomposition& t);

// max |E(K(v))|, at least 1.
int Width(const AmalgamDecomposition& t);

bool IsNice(const AmalgamDecomposition& t);

// Nice decomposition of the same matroid with at most twice the width:
// each element shared by both children is renamed in the second subtree,
// a parallel copy is added to K, and the copy is deleted at that node.
AmalgamDecomposition ToNice(const AmalgamDecomposition& t);

// Unrooted tree with leaves labelled by elements; internal nodes have
// degree three.
struct BranchDecomposition {
  std::vector<std::pair<int, int>> edges;
  std::map<int, ElementId> leaf_labels;
};

// Empty when b is a branch decomposition of m; otherwise the problems.
std::vector<std::string> BranchDecompositionProblems(
    const Matroid& m, const BranchDecomposition& b);

// Maximum over edges of r(E1) + r(E2) - r(E) + 1 (1 for edgeless trees).
int BranchWidthOf(const Matroid& m, const BranchDecomposition& b);

// Amalgam decomposition of a linear matroid from a branch decomposition.
// Each internal node glues along the points of its children's boundary
// subspaces span(E_c) n span(E - E_c); auxiliary points get fresh ids and
// are deleted where they stop being part of a boundary.
AmalgamDecomposition FromBranchDecomposition(const Matroid& m,
                                             const BranchDecomposition& b);

}  // namespace amalgam

#endif  // AMALGAM_DECOMPOSITION_H_

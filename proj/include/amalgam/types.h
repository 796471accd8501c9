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

#ifndef AMALGAM_TYPES_H_
#define AMALGAM_TYPES_H_

#include <compare>
#include <cstdint>
#include <vector>

#include "amalgam/decomposition.h"
#include "amalgam/element_set.h"
#include "amalgam/matroid.h"

namespace amalgam {

// Y -> cl((X n E(M(v))) u Y) n J for every Y subset of the boundary J.
// Subsets of J are masks over J's sorted order.
struct NodeType {
  ElementSet boundary;
  std::vector<Mask> map;

  friend bool operator==(const NodeType&, const NodeType&) = default;
};

// Rank data of a tracked set X at a node: its trace X n J, its rank, and
// offsets r(X u Y) - r(X) for every Y subset of J.
struct ExtendedType {
  ElementSet boundary;
  Mask trace = 0;
  int rank = 0;
  std::vector<int> offsets;

  NodeType ToNodeType() const;
  friend bool operator==(const ExtendedType&, const ExtendedType&) = default;
};

// Direct computation on a realized matroid.
NodeType TypeOf(const Matroid& mv, const ElementSet& boundary,
                const ElementSet& x);
ExtendedType ExtendedTypeOf(const Matroid& mv, const ElementSet& boundary,
                            const ElementSet& x);
// Same, realizing M(v) first.
NodeType TypeOf(const AmalgamDecomposition& t, const NodeId& v,
                const ElementSet& x);
ExtendedType ExtendedTypeOf(const AmalgamDecomposition& t, const NodeId& v,
                            const ElementSet& x);

// Least Z subset of E(K) containing Y u x_k, closed in K and closed under
// both child types; returns Z n J for every Y. J must lie in E(K).
NodeType Join(const NodeType& f1, const NodeType& f2, const Matroid& k,
              const ElementSet& x_k, const ElementSet& j);

// Parent signature from child signatures without realizing M(v). `fresh`
// is the tracked set's part in E(K) - (J1 u J2); the tracked set must
// avoid `d`. J must lie in E(K).
ExtendedType ExtendedJoin(const ExtendedType& e1, const ExtendedType& e2,
                          const Matroid& k, const ElementSet& fresh,
                          const ElementSet& d, const ElementSet& j);

// Precomputed glue data for repeated joins at one node. All subsets are
// masks: over E(K) for `fresh`, over J1/J2/J for traces and offsets.
class NodeJoiner {
 public:
  NodeJoiner(const Matroid& k, const ElementSet& j1, const ElementSet& j2,
             const ElementSet& j);

  struct Result {
    int rank_increase = 0;  // r(X) - r1 - r2
    Mask trace = 0;
    std::vector<int> offsets;
  };

  Result Combine(const std::vector<int>& g1, Mask t1,
                 const std::vector<int>& g2, Mask t2, Mask fresh) const;

  NodeType JoinTypes(const NodeType& f1, const NodeType& f2,
                     Mask x_k) const;

  // Least Z over E(K) containing z, closed in K and under both child
  // types.
  Mask ClosureFixpoint(const NodeType& f1, const NodeType& f2, Mask z) const;
  // Conversions between K masks and masks over J1, J2, J.
  Mask J1Part(Mask kmask) const { return FromK(j1_pos_, kmask); }
  Mask J2Part(Mask kmask) const { return FromK(j2_pos_, kmask); }
  Mask JPart(Mask kmask) const { return FromK(j_pos_, kmask); }
  Mask LiftJ(Mask jmask) const { return ToK(j_pos_, jmask); }
  int j_size() const { return static_cast<int>(j_pos_.size()); }

  const Matroid& k() const { return k_; }
  int k_size() const { return k_.size(); }
  Mask j1_in_k() const { return j1_all_; }
  Mask j2_in_k() const { return j2_all_; }
  Mask j_in_k() const { return j_all_; }

 private:
  Mask ToK(const std::vector<int>& pos, Mask local) const;
  Mask FromK(const std::vector<int>& pos, Mask kmask) const;
  Mask ClosureK(Mask b) const;

  Matroid k_;
  std::vector<int> j1_pos_, j2_pos_, j_pos_;  // positions in E(K)
  Mask j1_all_ = 0, j2_all_ = 0, j_all_ = 0;
};

}  // namespace amalgam

#endif  // AMALGAM_TYPES_H_

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

#include "amalgam/types.h"

#include <bit>

#include "amalgam/errors.h"

namespace amalgam {
namespace {

// Positions of `sub` in the sorted ground set of `k`.
std::vector<int> Positions(const Matroid& k, const ElementSet& sub,
                           const char* what) {
  std::vector<int> out;
  for (ElementId e : sub) {
    if (!k.HasElement(e)) {
      throw DomainError(std::string(what) + " element " + std::to_string(e) +
                        " is not in E(K)");
    }
    out.push_back(k.IndexOf(e));
  }
  return out;
}

Mask LocalMask(const ElementSet& universe, const ElementSet& sub) {
  Mask m = 0;
  int i = 0;
  for (ElementId e : universe) {
    if (sub.contains(e)) m |= Bit(i);
    ++i;
  }
  return m;
}

ElementSet Members(const ElementSet& universe, Mask local) {
  std::vector<ElementId> ids;
  int i = 0;
  for (ElementId e : universe) {
    if (Contains(local, i++)) ids.push_back(e);
  }
  return ElementSet(std::move(ids));
}

}  // namespace

NodeType ExtendedType::ToNodeType() const {
  NodeType out;
  out.boundary = boundary;
  const int n = static_cast<int>(boundary.size());
  out.map.assign(offsets.size(), 0);
  for (Mask y = 0; y < offsets.size(); ++y) {
    Mask z = 0;
    for (int i = 0; i < n; ++i) {
      if (offsets[y | Bit(i)] == offsets[y]) z |= Bit(i);
    }
    out.map[y] = z;
  }
  return out;
}

NodeType TypeOf(const Matroid& mv, const ElementSet& boundary,
                const ElementSet& x) {
  return ExtendedTypeOf(mv, boundary, x).ToNodeType();
}

ExtendedType ExtendedTypeOf(const Matroid& mv, const ElementSet& boundary,
                            const ElementSet& x) {
  const Mask xm = mv.ToMask(Intersection(x, mv.ground_set()));
  const std::vector<int> pos = Positions(mv, boundary, "boundary");
  ExtendedType out;
  out.boundary = boundary;
  out.trace = LocalMask(boundary, x);
  out.rank = mv.Rank(xm);
  out.offsets.resize(std::size_t{1} << pos.size());
  for (Mask y = 0; y < out.offsets.size(); ++y) {
    Mask ym = xm;
    for (std::size_t i = 0; i < pos.size(); ++i) {
      if (Contains(y, i)) ym |= Bit(pos[i]);
    }
    out.offsets[y] = mv.Rank(ym) - out.rank;
  }
  return out;
}

NodeType TypeOf(const AmalgamDecomposition& t, const NodeId& v,
                const ElementSet& x) {
  return TypeOf(Realize(t, v), Boundaries(t).at(v), x);
}

ExtendedType ExtendedTypeOf(const AmalgamDecomposition& t, const NodeId& v,
                            const ElementSet& x) {
  return ExtendedTypeOf(Realize(t, v), Boundaries(t).at(v), x);
}

NodeJoiner::NodeJoiner(const Matroid& k, const ElementSet& j1,
                       const ElementSet& j2, const ElementSet& j)
    : k_(k.MaterializeIfSmall()),
      j1_pos_(Positions(k, j1, "J1")),
      j2_pos_(Positions(k, j2, "J2")),
      j_pos_(Positions(k, j, "boundary")) {
  j1_all_ = ToK(j1_pos_, FullMask(j1_pos_.size()));
  j2_all_ = ToK(j2_pos_, FullMask(j2_pos_.size()));
  j_all_ = ToK(j_pos_, FullMask(j_pos_.size()));
}

Mask NodeJoiner::ToK(const std::vector<int>& pos, Mask local) const {
  Mask out = 0;
  for (; local; local &= local - 1) out |= Bit(pos[std::countr_zero(local)]);
  return out;
}

Mask NodeJoiner::FromK(const std::vector<int>& pos, Mask kmask) const {
  Mask out = 0;
  for (std::size_t i = 0; i < pos.size(); ++i) {
    if (Contains(kmask, pos[i])) out |= Bit(i);
  }
  return out;
}

Mask NodeJoiner::ClosureK(Mask b) const { return k_.Closure(b); }

NodeJoiner::Result NodeJoiner::Combine(const std::vector<int>& g1, Mask t1,
                                       const std::vector<int>& g2, Mask t2,
                                       Mask fresh) const {
  const Mask t1k = ToK(j1_pos_, t1);
  const Mask t2k = ToK(j2_pos_, t2);
  const int n1 = static_cast<int>(j1_pos_.size());
  const int n2 = static_cast<int>(j2_pos_.size());
  // Closure of a J_i-subset under the child's offsets.
  auto child_closure = [](const std::vector<int>& g, int n, Mask y) {
    Mask z = y;
    for (int i = 0; i < n; ++i) {
      if (g[y | Bit(i)] == g[y]) z |= Bit(i);
    }
    return z;
  };
  // r_{G1}(X1 u B) - r1 for B subset of E(K), with G1 = K (+) M1.
  auto h1 = [&](Mask b) {
    const Mask bp = b | t1k;
    const Mask qk = FromK(j1_pos_, ClosureK(bp));
    const Mask qm = child_closure(g1, n1, FromK(j1_pos_, bp));
    const Mask qm_k = ToK(j1_pos_, qm);
    return k_.Rank(bp | qm_k) + g1[qk] - k_.Rank(ToK(j1_pos_, qk) | qm_k);
  };
  // r_G(X u B) - r1 - r2 with G = G1 (+) M2.
  auto h = [&](Mask b) {
    const Mask pm = child_closure(g2, n2, FromK(j2_pos_, b));
    const int base = h1(b);
    Mask pg = 0;
    for (int i = 0; i < n2; ++i) {
      if (h1(b | Bit(j2_pos_[i])) == base) pg |= Bit(i);
    }
    const Mask pm_k = ToK(j2_pos_, pm);
    return h1(b | pm_k) + g2[pg] - k_.Rank(ToK(j2_pos_, pg) | pm_k);
  };
  const Mask a = fresh | t1k | t2k;
  Result out;
  out.rank_increase = h(a);
  out.trace = FromK(j_pos_, a);
  out.offsets.resize(std::size_t{1} << j_pos_.size());
  for (Mask y = 0; y < out.offsets.size(); ++y) {
    out.offsets[y] = y == 0 ? 0 : h(a | ToK(j_pos_, y)) - out.rank_increase;
  }
  return out;
}

NodeType NodeJoiner::JoinTypes(const NodeType& f1, const NodeType& f2,
                               Mask x_k) const {
  NodeType out;
  out.map.resize(std::size_t{1} << j_pos_.size());
  for (Mask y = 0; y < out.map.size(); ++y) {
    out.map[y] = FromK(j_pos_, ClosureFixpoint(f1, f2, ToK(j_pos_, y) | x_k));
  }
  return out;
}

Mask NodeJoiner::ClosureFixpoint(const NodeType& f1, const NodeType& f2,
                                 Mask z) const {
  while (true) {
    Mask next = ClosureK(z);
    next |= ToK(j1_pos_, f1.map[FromK(j1_pos_, next)]);
    next |= ToK(j2_pos_, f2.map[FromK(j2_pos_, next)]);
    if (next == z) return z;
    z = next;
  }
}

NodeType Join(const NodeType& f1, const NodeType& f2, const Matroid& k,
              const ElementSet& x_k, const ElementSet& j) {
  const NodeJoiner joiner(k, f1.boundary, f2.boundary, j);
  NodeType out = joiner.JoinTypes(f1, f2, k.ToMask(x_k));
  out.boundary = j;
  return out;
}

ExtendedType ExtendedJoin(const ExtendedType& e1, const ExtendedType& e2,
                          const Matroid& k, const ElementSet& fresh,
                          const ElementSet& d, const ElementSet& j) {
  const ElementSet tracked =
      Union(fresh, Union(Members(e1.boundary, e1.trace),
                         Members(e2.boundary, e2.trace)));
  if (!Intersection(tracked, d).empty()) {
    throw DomainError("tracked set meets D in " +
                      Intersection(tracked, d).ToString());
  }
  if (!Intersection(fresh, Union(e1.boundary, e2.boundary)).empty()) {
    throw DomainError("fresh elements must avoid J1 and J2");
  }
  const NodeJoiner joiner(k, e1.boundary, e2.boundary, j);
  const auto r = joiner.Combine(e1.offsets, e1.trace, e2.offsets, e2.trace,
                                k.ToMask(fresh));
  ExtendedType out;
  out.boundary = j;
  out.trace = r.trace;
  out.rank = e1.rank + e2.rank + r.rank_increase;
  out.offsets = r.offsets;
  return out;
}

}  // namespace amalgam

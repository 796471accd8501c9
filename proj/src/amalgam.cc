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

#include "amalgam/amalgam.h"

#include <algorithm>
#include <limits>
#include <memory>

namespace amalgam {

NoProperAmalgam::NoProperAmalgam(ElementSet f, ElementSet g)
    : DomainError("no proper amalgam: zeta is not submodular on F = " +
                  f.ToString() + ", G = " + g.ToString()),
      f_(std::move(f)),
      g_(std::move(g)) {}

namespace {

// Positions of E1 u E2 and how they map into each side.
struct UnionLayout {
  ElementSet ground;
  Mask side1 = 0;
  Mask side2 = 0;
  Mask common = 0;
  std::vector<int> pos1;  // index in m1 or -1
  std::vector<int> pos2;

  UnionLayout(const Matroid& m1, const Matroid& m2)
      : ground(Union(m1.ground_set(), m2.ground_set())) {
    if (ground.size() > static_cast<std::size_t>(kMaxGroundSet)) {
      throw ResourceError("amalgam ground set exceeds " +
                          std::to_string(kMaxGroundSet) + " elements");
    }
    int i = 0;
    for (ElementId e : ground) {
      pos1.push_back(m1.HasElement(e) ? m1.IndexOf(e) : -1);
      pos2.push_back(m2.HasElement(e) ? m2.IndexOf(e) : -1);
      if (pos1.back() >= 0) side1 |= Bit(i);
      if (pos2.back() >= 0) side2 |= Bit(i);
      ++i;
    }
    common = side1 & side2;
  }

  Mask To1(Mask x) const { return Project(x & side1, pos1); }
  Mask To2(Mask x) const { return Project(x & side2, pos2); }
  Mask From1(Mask local) const { return Lift(local, pos1); }
  Mask From2(Mask local) const { return Lift(local, pos2); }

 private:
  static Mask Project(Mask x, const std::vector<int>& pos) {
    Mask out = 0;
    for (; x; x &= x - 1) out |= Bit(pos[std::countr_zero(x)]);
    return out;
  }
  static Mask Lift(Mask local, const std::vector<int>& pos) {
    Mask out = 0;
    for (std::size_t i = 0; i < pos.size(); ++i) {
      if (pos[i] >= 0 && Contains(local, pos[i]))
        out |= Bit(static_cast<int>(i));
    }
    return out;
  }
};

void RequireCommonRestriction(const Matroid& m1, const Matroid& m2) {
  const ElementSet t = Intersection(m1.ground_set(), m2.ground_set());
  if (!RestrictionsEqual(m1, m2, t)) {
    throw DomainError("the matroids disagree on their common elements " +
                      t.ToString());
  }
}

class GpcOracle : public RankOracle {
 public:
  GpcOracle(Matroid m1, Matroid m2)
      : m1_(std::move(m1)), m2_(std::move(m2)), layout_(m1_, m2_) {}

  const UnionLayout& layout() const { return layout_; }

  int Rank(Mask x) const override {
    const auto [x1, x2] = Sides(x);
    return m1_.Rank(layout_.To1(x2)) + m2_.Rank(layout_.To2(x1)) -
           m1_.Rank(layout_.To1(layout_.common & (x1 | x2)));
  }

  Mask Closure(Mask x, Mask ground) const override {
    const auto [x1, x2] = Sides(x);
    const Mask cl = layout_.From1(m1_.Closure(layout_.To1(x2))) |
                    layout_.From2(m2_.Closure(layout_.To2(x1)));
    return (cl | x) & ground;
  }

 private:
  // X_1 = cl_1(X n E1) u X and X_2 = cl_2(X n E2) u X.
  std::pair<Mask, Mask> Sides(Mask x) const {
    const Mask x1 = layout_.From1(m1_.Closure(layout_.To1(x))) | x;
    const Mask x2 = layout_.From2(m2_.Closure(layout_.To2(x))) | x;
    return {x1, x2};
  }

  Matroid m1_;
  Matroid m2_;
  UnionLayout layout_;
};

}  // namespace

bool IsModularFlat(const Matroid& m, Mask x, const std::vector<Mask>& flats) {
  const int rx = m.Rank(x);
  for (Mask y : flats) {
    if (m.Rank(x | y) + m.Rank(x & y) != rx + m.Rank(y)) return false;
  }
  return true;
}

bool IsModularFlat(const Matroid& m, const ElementSet& x) {
  const Mask xm = m.ToMask(x);
  if (m.Closure(xm) != xm) {
    throw DomainError(x.ToString() + " is not a flat");
  }
  return IsModularFlat(m, xm, Flats(m));
}

bool IsModularSemiflat(const Matroid& m, const ElementSet& t) {
  const Mask tm = m.ToMask(t);
  const Mask cl = m.Closure(tm);
  for (Mask rest = cl & ~tm; rest; rest &= rest - 1) {
    const Mask e = rest & -rest;
    if (m.Rank(e) == 0) continue;
    bool parallel = false;
    for (Mask s = tm; s && !parallel; s &= s - 1) {
      const Mask f = s & -s;
      parallel = m.Rank(f) == 1 && m.Rank(e | f) == 1;
    }
    if (!parallel) return false;
  }
  return IsModularFlat(m, cl, Flats(m));
}

int Eta(const Matroid& m1, const Matroid& m2, const ElementSet& x) {
  RequireCommonRestriction(m1, m2);
  const UnionLayout layout(m1, m2);
  Mask xm = 0;
  int i = 0;
  for (ElementId e : layout.ground) {
    if (x.contains(e)) xm |= Bit(i);
    ++i;
  }
  if (static_cast<std::size_t>(Popcount(xm)) != x.size()) {
    throw DomainError(x.ToString() + " is not a subset of E1 u E2");
  }
  return m1.Rank(layout.To1(xm)) + m2.Rank(layout.To2(xm)) -
         m1.Rank(layout.To1(xm & layout.common));
}

int Zeta(const Matroid& m1, const Matroid& m2, const ElementSet& x) {
  RequireCommonRestriction(m1, m2);
  const UnionLayout layout(m1, m2);
  const int n = static_cast<int>(layout.ground.size());
  RequireWithinLimit(n, BruteForceLimit(), "zeta");
  Mask xm = 0;
  int i = 0;
  for (ElementId e : layout.ground) {
    if (x.contains(e)) xm |= Bit(i);
    ++i;
  }
  if (static_cast<std::size_t>(Popcount(xm)) != x.size()) {
    throw DomainError(x.ToString() + " is not a subset of E1 u E2");
  }
  const Mask free = FullMask(n) & ~xm;
  int best = std::numeric_limits<int>::max();
  // Enumerate all Y = X u S for S a subset of the complement.
  for (Mask s = free;; s = (s - 1) & free) {
    const Mask y = xm | s;
    best = std::min(best, m1.Rank(layout.To1(y)) + m2.Rank(layout.To2(y)) -
                              m1.Rank(layout.To1(y & layout.common)));
    if (s == 0) break;
  }
  return best;
}

Matroid ProperAmalgam(const Matroid& m1, const Matroid& m2) {
  RequireCommonRestriction(m1, m2);
  const UnionLayout layout(m1, m2);
  const int n = static_cast<int>(layout.ground.size());
  RequireWithinLimit(n, BruteForceLimit(), "proper amalgam");
  const std::size_t count = std::size_t{1} << n;
  std::vector<int> zeta(count);
  for (Mask y = 0; y < count; ++y) {
    zeta[y] = m1.Rank(layout.To1(y)) + m2.Rank(layout.To2(y)) -
              m1.Rank(layout.To1(y & layout.common));
  }
  // zeta(X) = min(eta(X), zeta(X + e)) over e outside X.
  for (Mask x = count; x-- > 0;) {
    for (int e = 0; e < n; ++e) {
      if (!Contains(x, e)) zeta[x] = std::min(zeta[x], zeta[x | Bit(e)]);
    }
  }
  auto name = [&](Mask m) {
    std::vector<ElementId> ids;
    for (; m; m &= m - 1)
      ids.push_back(layout.ground.ids()[std::countr_zero(m)]);
    return ElementSet(std::move(ids));
  };
  for (Mask x = 0; x < count; ++x) {
    for (int e = 0; e < n; ++e) {
      if (Contains(x, e)) continue;
      for (int f = e + 1; f < n; ++f) {
        if (Contains(x, f)) continue;
        const Mask a = x | Bit(e), b = x | Bit(f);
        if (zeta[a] + zeta[b] < zeta[a | b] + zeta[x]) {
          throw NoProperAmalgam(name(a), name(b));
        }
      }
    }
  }
  std::vector<std::uint8_t> table(zeta.begin(), zeta.end());
  return Matroid::FromRankTable(layout.ground, std::move(table));
}

bool IsProperAmalgam(const Matroid& m, const Matroid& m1, const Matroid& m2) {
  if (m.ground_set() != Union(m1.ground_set(), m2.ground_set()) ||
      !SameMatroid(Restrict(m, m1.ground_set()), m1) ||
      !SameMatroid(Restrict(m, m2.ground_set()), m2)) {
    throw DomainError("not an amalgam of the given matroids");
  }
  const Mask e1 = m.ToMask(m1.ground_set());
  const Mask e2 = m.ToMask(m2.ground_set());
  for (Mask f : Flats(m)) {
    if (m.Rank(f) != m.Rank(f & e1) + m.Rank(f & e2) - m.Rank(f & e1 & e2)) {
      return false;
    }
  }
  return true;
}

Matroid GeneralizedParallelConnectionUnchecked(const Matroid& m1,
                                               const Matroid& m2) {
  auto oracle = std::make_shared<GpcOracle>(m1, m2);
  ElementSet ground = oracle->layout().ground;
  return Matroid::FromOracle(std::move(ground), std::move(oracle));
}

Matroid GeneralizedParallelConnection(const Matroid& m1, const Matroid& m2) {
  RequireCommonRestriction(m1, m2);
  const ElementSet t = Intersection(m1.ground_set(), m2.ground_set());
  if (!IsModularSemiflat(m1, t)) {
    throw PreconditionError("common set " + t.ToString() +
                            " is not a modular semiflat in the first matroid");
  }
  return GeneralizedParallelConnectionUnchecked(m1, m2);
}

std::vector<std::string> GluePreconditionViolations(const Matroid& m1,
                                                    const Matroid& m2,
                                                    const Matroid& k,
                                                    const ElementSet& d) {
  std::vector<std::string> out;
  const ElementSet& ek = k.ground_set();
  const ElementSet shared = Intersection(m1.ground_set(), m2.ground_set());
  if (!shared.IsSubsetOf(ek)) {
    out.push_back("E(M1) n E(M2) = " + shared.ToString() +
                  " is not contained in E(K)");
  }
  if (!d.IsSubsetOf(ek)) {
    out.push_back("D = " + d.ToString() + " is not contained in E(K)");
  }
  const Matroid* sides[2] = {&m1, &m2};
  for (int i = 0; i < 2; ++i) {
    const std::string tag = "J" + std::to_string(i + 1);
    const ElementSet j = Intersection(sides[i]->ground_set(), ek);
    if (!RestrictionsEqual(*sides[i], k, j)) {
      out.push_back("M" + std::to_string(i + 1) + "|" + tag + " != K|" + tag +
                    " for " + tag + " = " + j.ToString());
    } else if (!IsModularSemiflat(k, j)) {
      out.push_back(tag + " = " + j.ToString() +
                    " is not a modular semiflat in K");
    }
  }
  return out;
}

Matroid Glue(const Matroid& m1, const Matroid& m2, const Matroid& k,
             const ElementSet& d) {
  const auto violations = GluePreconditionViolations(m1, m2, k, d);
  if (!violations.empty()) {
    std::string msg = "glue preconditions violated:";
    for (const auto& v : violations) msg += " [" + v + "]";
    throw PreconditionError(msg);
  }
  const Matroid g1 = GeneralizedParallelConnectionUnchecked(k, m1);
  const Matroid g2 = GeneralizedParallelConnectionUnchecked(g1, m2);
  if (d.empty()) return g2.MaterializeIfSmall();
  return Delete(g2, d).MaterializeIfSmall();
}

}  // namespace amalgam

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

#ifndef AMALGAM_MATROID_H_
#define AMALGAM_MATROID_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "amalgam/element_set.h"
#include "amalgam/gf.h"

namespace amalgam {

// Rank function over the positions 0..n-1 of a matroid's sorted ground set.
class RankOracle {
 public:
  virtual ~RankOracle() = default;
  virtual int Rank(Mask set) const = 0;
  // Elements of `ground` whose addition does not raise the rank of `set`,
  // together with `set` itself.
  virtual Mask Closure(Mask set, Mask ground) const;
};

struct LinearRepresentation {
  int field = 2;
  int dimension = 0;
  std::map<ElementId, FieldVector> columns;
};

struct GraphDescription {
  std::map<ElementId, std::pair<int, int>> edges;
};

enum class MatroidKind { kExplicit, kLinear, kGraphic, kDerived };

// Immutable matroid: a finite set of element ids plus a rank oracle.
// Copies share the oracle.
class Matroid {
 public:
  // The matroid on the empty ground set.
  Matroid();

  static Matroid Linear(LinearRepresentation rep);
  static Matroid Graphic(GraphDescription graph);
  // `table[mask]` is the rank of the subset with that mask. The table is
  // checked against the rank axioms.
  static Matroid FromRankTable(ElementSet ground,
                               std::vector<std::uint8_t> table);
  static Matroid FromIndependentSets(ElementSet ground,
                                     const std::vector<ElementSet>& sets);
  static Matroid FromCircuits(ElementSet ground,
                              const std::vector<ElementSet>& circuits);
  // Wraps an arbitrary oracle. The oracle is trusted.
  static Matroid FromOracle(ElementSet ground,
                            std::shared_ptr<const RankOracle> oracle);

  const ElementSet& ground_set() const { return ground_; }
  int size() const { return static_cast<int>(ground_.size()); }
  Mask full_mask() const { return FullMask(size()); }
  ElementId element(int index) const { return ground_.ids()[index]; }
  bool HasElement(ElementId e) const { return ground_.contains(e); }

  // Position of `e` in the sorted ground set; DomainError if absent.
  int IndexOf(ElementId e) const;
  Mask ToMask(const ElementSet& set) const;
  ElementSet ToSet(Mask mask) const;

  int Rank(Mask set) const;
  int Rank(const ElementSet& set) const { return Rank(ToMask(set)); }
  int rank() const { return Rank(full_mask()); }
  Mask Closure(Mask set) const { return oracle_->Closure(set, full_mask()); }
  ElementSet Closure(const ElementSet& set) const {
    return ToSet(Closure(ToMask(set)));
  }
  bool IsIndependent(Mask set) const { return Rank(set) == Popcount(set); }
  bool IsLoop(ElementId e) const { return Rank(Bit(IndexOf(e))) == 0; }
  bool IsColoop(ElementId e) const;

  MatroidKind kind() const { return kind_; }
  const LinearRepresentation* linear() const { return linear_.get(); }
  const GraphDescription* graph() const { return graph_.get(); }
  const std::shared_ptr<const RankOracle>& oracle() const { return oracle_; }

  // Explicit copy with a rank table; ResourceError above kMaxTableElements.
  Matroid Materialize() const;
  // Materialize() when small enough, otherwise *this.
  Matroid MaterializeIfSmall() const;

  static constexpr int kMaxTableElements = 20;

 private:
  ElementSet ground_;
  MatroidKind kind_ = MatroidKind::kExplicit;
  std::shared_ptr<const RankOracle> oracle_;
  std::shared_ptr<const std::vector<std::uint8_t>> table_;
  std::shared_ptr<const LinearRepresentation> linear_;
  std::shared_ptr<const GraphDescription> graph_;
};

// Global bound for exponential-time routines; AMALGAM_MAX_ELEMENTS
// overrides the default of 16.
int BruteForceLimit();
void RequireWithinLimit(int n, int limit, const std::string& what);

Matroid UniformMatroid(int rank, const ElementSet& ground);
Matroid FreeMatroid(const ElementSet& ground);

// All inclusion-minimal dependent sets; |E| <= BruteForceLimit().
std::vector<ElementSet> Circuits(const Matroid& m);
std::vector<Mask> CircuitMasks(const Matroid& m);

// All flats, sorted by mask, found by walking covers from cl(empty).
std::vector<Mask> Flats(const Matroid& m);

Matroid Delete(const Matroid& m, const ElementSet& removed);
Matroid Restrict(const Matroid& m, const ElementSet& kept);
// rank_{M/F}(X) = r(X u F) - r(F).
Matroid Contract(const Matroid& m, const ElementSet& contracted);

// Copy of m with `added` parallel to `existing`.
Matroid AddParallel(const Matroid& m, ElementId existing, ElementId added);
// Renames elements; ids missing from `renaming` are kept.
Matroid Relabel(const Matroid& m,
                const std::map<ElementId, ElementId>& renaming);

// r(A) + r(E \ A) - r(E) + 1.
int SeparationWidth(const Matroid& m, const ElementSet& a);

// Label-sensitive equality of M1|T and M2|T.
bool RestrictionsEqual(const Matroid& m1, const Matroid& m2,
                       const ElementSet& t);

// Same ground set and identical rank on every subset.
bool SameMatroid(const Matroid& a, const Matroid& b);

// 2-sum defined through its circuits; see docs/formats.md for labels.
Matroid TwoSum(const Matroid& m1, const Matroid& m2, ElementId p1,
               ElementId p2);

// Exhaustive check of r(empty) = 0, 0 <= r(X) <= |X|, unit increase and
// local submodularity r(X+e) + r(X+f) >= r(X+e+f) + r(X); together these
// are equivalent to the full rank axioms. Returns a description of the
// first violation.
std::optional<std::string> CheckRankAxioms(const Matroid& m);

}  // namespace amalgam

#endif  // AMALGAM_MATROID_H_

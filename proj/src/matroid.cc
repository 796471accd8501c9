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

#include "amalgam/matroid.h"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

#include "amalgam/errors.h"

namespace amalgam {

std::string ElementSet::ToString() const {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    if (i) os << ", ";
    os << ids_[i];
  }
  os << "}";
  return os.str();
}

Mask RankOracle::Closure(Mask set, Mask ground) const {
  const int r = Rank(set);
  Mask out = set;
  for (Mask rest = ground & ~set; rest; rest &= rest - 1) {
    const Mask b = rest & -rest;
    if (Rank(set | b) == r) out |= b;
  }
  return out;
}

namespace {

class ExplicitOracle : public RankOracle {
 public:
  explicit ExplicitOracle(std::shared_ptr<const std::vector<std::uint8_t>> t)
      : table_(std::move(t)) {}
  int Rank(Mask set) const override { return (*table_)[set]; }

 private:
  std::shared_ptr<const std::vector<std::uint8_t>> table_;
};

class LinearOracle : public RankOracle {
 public:
  LinearOracle(int p, int dimension, std::vector<FieldVector> columns)
      : p_(p), d_(dimension), columns_(std::move(columns)) {}

  int Rank(Mask set) const override {
    std::vector<FieldVector> picked;
    for (Mask m = set; m; m &= m - 1)
      picked.push_back(columns_[std::countr_zero(m)]);
    return VectorRank(picked, p_);
  }

  Mask Closure(Mask set, Mask ground) const override {
    std::vector<FieldVector> picked;
    for (Mask m = set; m; m &= m - 1)
      picked.push_back(columns_[std::countr_zero(m)]);
    const Subspace span = Subspace::Span(p_, d_, picked);
    Mask out = set;
    for (Mask rest = ground & ~set; rest; rest &= rest - 1) {
      const int i = std::countr_zero(rest);
      if (span.Contains(columns_[i])) out |= Bit(i);
    }
    return out;
  }

 private:
  int p_;
  int d_;
  std::vector<FieldVector> columns_;
};

class GraphicOracle : public RankOracle {
 public:
  GraphicOracle(int vertex_count, std::vector<std::pair<int, int>> edges)
      : vertex_count_(vertex_count), edges_(std::move(edges)) {}

  int Rank(Mask set) const override {
    std::vector<int> parent(vertex_count_);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    int rank = 0;
    for (Mask m = set; m; m &= m - 1) {
      const auto& [u, v] = edges_[std::countr_zero(m)];
      const int a = find(u), b = find(v);
      if (a != b) {
        parent[a] = b;
        ++rank;
      }
    }
    return rank;
  }

 private:
  int vertex_count_;
  std::vector<std::pair<int, int>> edges_;
};

// Child position i reads parent position parent_pos[i]; positions may
// collide (parallel copies). `contracted` is added to every query.
class MappedOracle : public RankOracle {
 public:
  MappedOracle(std::shared_ptr<const RankOracle> parent, Mask parent_ground,
               std::vector<int> parent_pos, Mask contracted)
      : parent_(std::move(parent)),
        parent_ground_(parent_ground),
        parent_pos_(std::move(parent_pos)),
        contracted_(contracted),
        contracted_rank_(parent_->Rank(contracted)) {}

  int Rank(Mask set) const override {
    return parent_->Rank(Lift(set) | contracted_) - contracted_rank_;
  }

  Mask Closure(Mask set, Mask ground) const override {
    const Mask cl = parent_->Closure(Lift(set) | contracted_, parent_ground_);
    Mask out = set;
    for (Mask rest = ground & ~set; rest; rest &= rest - 1) {
      const int i = std::countr_zero(rest);
      if (Contains(cl, parent_pos_[i])) out |= Bit(i);
    }
    return out;
  }

 private:
  Mask Lift(Mask set) const {
    Mask out = 0;
    for (Mask m = set; m; m &= m - 1)
      out |= Bit(parent_pos_[std::countr_zero(m)]);
    return out;
  }

  std::shared_ptr<const RankOracle> parent_;
  Mask parent_ground_;
  std::vector<int> parent_pos_;
  Mask contracted_;
  int contracted_rank_;
};

void CheckGroundSize(std::size_t n) {
  if (n > static_cast<std::size_t>(kMaxGroundSet)) {
    throw ResourceError("ground set of " + std::to_string(n) +
                        " elements exceeds the limit of " +
                        std::to_string(kMaxGroundSet));
  }
}

std::vector<std::uint8_t> RanksFromIndependence(int n,
                                                std::vector<bool> indep) {
  std::vector<std::uint8_t> rank(std::size_t{1} << n, 0);
  for (Mask m = 1; m < (Mask{1} << n); ++m) {
    if (indep[m]) {
      rank[m] = static_cast<std::uint8_t>(Popcount(m));
      continue;
    }
    std::uint8_t best = 0;
    for (Mask r = m; r; r &= r - 1) {
      best = std::max(best, rank[m & ~(r & -r)]);
    }
    rank[m] = best;
  }
  return rank;
}

}  // namespace

Matroid::Matroid()
    : table_(std::make_shared<const std::vector<std::uint8_t>>(1, 0)) {
  oracle_ = std::make_shared<ExplicitOracle>(table_);
}

Matroid Matroid::Linear(LinearRepresentation rep) {
  if (!IsSupportedPrime(rep.field)) {
    throw DomainError("unsupported field GF(" + std::to_string(rep.field) +
                      "); supported primes are 2, 3, 5, 7");
  }
  CheckGroundSize(rep.columns.size());
  std::vector<ElementId> ids;
  std::vector<FieldVector> columns;
  for (auto& [id, col] : rep.columns) {
    if (static_cast<int>(col.size()) != rep.dimension) {
      throw DomainError("column of element " + std::to_string(id) +
                        " has length " + std::to_string(col.size()) +
                        ", expected " + std::to_string(rep.dimension));
    }
    for (int& x : col) x = ((x % rep.field) + rep.field) % rep.field;
    ids.push_back(id);
    columns.push_back(col);
  }
  Matroid m;
  m.ground_ = ElementSet(ids);
  m.kind_ = MatroidKind::kLinear;
  m.table_.reset();
  m.oracle_ = std::make_shared<LinearOracle>(rep.field, rep.dimension,
                                             std::move(columns));
  m.linear_ = std::make_shared<const LinearRepresentation>(std::move(rep));
  return m;
}

Matroid Matroid::Graphic(GraphDescription graph) {
  CheckGroundSize(graph.edges.size());
  std::map<int, int> vertex_index;
  for (const auto& [id, uv] : graph.edges) {
    vertex_index.emplace(uv.first, 0);
    vertex_index.emplace(uv.second, 0);
  }
  int next = 0;
  for (auto& [v, idx] : vertex_index) idx = next++;
  std::vector<ElementId> ids;
  std::vector<std::pair<int, int>> edges;
  for (const auto& [id, uv] : graph.edges) {
    ids.push_back(id);
    edges.emplace_back(vertex_index[uv.first], vertex_index[uv.second]);
  }
  Matroid m;
  m.ground_ = ElementSet(ids);
  m.kind_ = MatroidKind::kGraphic;
  m.table_.reset();
  m.oracle_ = std::make_shared<GraphicOracle>(next, std::move(edges));
  m.graph_ = std::make_shared<const GraphDescription>(std::move(graph));
  return m;
}

Matroid Matroid::FromRankTable(ElementSet ground,
                               std::vector<std::uint8_t> table) {
  const int n = static_cast<int>(ground.size());
  if (n > kMaxTableElements) {
    throw ResourceError("explicit matroids are limited to " +
                        std::to_string(kMaxTableElements) + " elements");
  }
  if (table.size() != (std::size_t{1} << n)) {
    throw DomainError("rank table has " + std::to_string(table.size()) +
                      " entries, expected 2^" + std::to_string(n));
  }
  Matroid m;
  m.ground_ = std::move(ground);
  m.kind_ = MatroidKind::kExplicit;
  m.table_ =
      std::make_shared<const std::vector<std::uint8_t>>(std::move(table));
  m.oracle_ = std::make_shared<ExplicitOracle>(m.table_);
  if (auto violation = CheckRankAxioms(m)) {
    throw DomainError("not a matroid: " + *violation);
  }
  return m;
}

Matroid Matroid::FromIndependentSets(ElementSet ground,
                                     const std::vector<ElementSet>& sets) {
  const int n = static_cast<int>(ground.size());
  RequireWithinLimit(n, kMaxTableElements, "independent-set matroid");
  Matroid shell;
  shell.ground_ = ground;
  std::vector<bool> indep(std::size_t{1} << n, false);
  for (const ElementSet& s : sets) indep[shell.ToMask(s)] = true;
  indep[0] = true;
  // Hereditary check: every listed set's subsets must be listed too.
  for (Mask m = 1; m < (Mask{1} << n); ++m) {
    if (!indep[m]) continue;
    for (Mask r = m; r; r &= r - 1) {
      if (!indep[m & ~(r & -r)]) {
        throw DomainError("independent sets are not closed under subsets: " +
                          shell.ToSet(m).ToString() + " is listed but " +
                          shell.ToSet(m & ~(r & -r)).ToString() + " is not");
      }
    }
  }
  return FromRankTable(std::move(ground), RanksFromIndependence(n, indep));
}

Matroid Matroid::FromCircuits(ElementSet ground,
                              const std::vector<ElementSet>& circuits) {
  const int n = static_cast<int>(ground.size());
  RequireWithinLimit(n, kMaxTableElements, "circuit-defined matroid");
  Matroid shell;
  shell.ground_ = ground;
  std::vector<bool> dependent(std::size_t{1} << n, false);
  for (const ElementSet& c : circuits) dependent[shell.ToMask(c)] = true;
  std::vector<bool> indep(std::size_t{1} << n, true);
  for (Mask m = 0; m < (Mask{1} << n); ++m) {
    bool dep = dependent[m];
    for (Mask r = m; r && !dep; r &= r - 1) dep = !indep[m & ~(r & -r)];
    indep[m] = !dep;
  }
  return FromRankTable(std::move(ground), RanksFromIndependence(n, indep));
}

Matroid Matroid::FromOracle(ElementSet ground,
                            std::shared_ptr<const RankOracle> oracle) {
  CheckGroundSize(ground.size());
  Matroid m;
  m.ground_ = std::move(ground);
  m.kind_ = MatroidKind::kDerived;
  m.table_.reset();
  m.oracle_ = std::move(oracle);
  return m;
}

int Matroid::IndexOf(ElementId e) const {
  const auto& ids = ground_.ids();
  auto it = std::lower_bound(ids.begin(), ids.end(), e);
  if (it == ids.end() || *it != e) {
    throw DomainError("unknown element id " + std::to_string(e));
  }
  return static_cast<int>(it - ids.begin());
}

Mask Matroid::ToMask(const ElementSet& set) const {
  Mask m = 0;
  for (ElementId e : set) m |= Bit(IndexOf(e));
  return m;
}

ElementSet Matroid::ToSet(Mask mask) const {
  std::vector<ElementId> ids;
  for (Mask m = mask; m; m &= m - 1)
    ids.push_back(element(std::countr_zero(m)));
  return ElementSet(std::move(ids));
}

int Matroid::Rank(Mask set) const {
  if (table_) return (*table_)[set];
  return oracle_->Rank(set);
}

bool Matroid::IsColoop(ElementId e) const {
  const Mask b = Bit(IndexOf(e));
  return Rank(full_mask() & ~b) < rank();
}

Matroid Matroid::Materialize() const {
  if (kind_ == MatroidKind::kExplicit) return *this;
  const int n = size();
  if (n > kMaxTableElements) {
    throw ResourceError("cannot tabulate a matroid on " + std::to_string(n) +
                        " elements (limit " +
                        std::to_string(kMaxTableElements) + ")");
  }
  std::vector<std::uint8_t> table(std::size_t{1} << n);
  for (Mask m = 0; m < (Mask{1} << n); ++m) {
    table[m] = static_cast<std::uint8_t>(Rank(m));
  }
  Matroid out;
  out.ground_ = ground_;
  out.table_ =
      std::make_shared<const std::vector<std::uint8_t>>(std::move(table));
  out.oracle_ = std::make_shared<ExplicitOracle>(out.table_);
  return out;
}

Matroid Matroid::MaterializeIfSmall() const {
  if (kind_ == MatroidKind::kDerived && size() <= kMaxTableElements) {
    return Materialize();
  }
  return *this;
}

int BruteForceLimit() {
  if (const char* env = std::getenv("AMALGAM_MAX_ELEMENTS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v <= kMaxGroundSet) {
      return static_cast<int>(v);
    }
  }
  return 16;
}

void RequireWithinLimit(int n, int limit, const std::string& what) {
  if (n > limit) {
    throw ResourceError(what + ": " + std::to_string(n) +
                        " elements exceed the brute-force bound of " +
                        std::to_string(limit));
  }
}

Matroid UniformMatroid(int rank, const ElementSet& ground) {
  const int n = static_cast<int>(ground.size());
  RequireWithinLimit(n, Matroid::kMaxTableElements, "uniform matroid");
  std::vector<std::uint8_t> table(std::size_t{1} << n);
  for (Mask m = 0; m < (Mask{1} << n); ++m) {
    table[m] = static_cast<std::uint8_t>(std::min(rank, Popcount(m)));
  }
  return Matroid::FromRankTable(ground, std::move(table));
}

Matroid FreeMatroid(const ElementSet& ground) {
  return UniformMatroid(static_cast<int>(ground.size()), ground);
}

std::vector<Mask> CircuitMasks(const Matroid& m) {
  RequireWithinLimit(m.size(), BruteForceLimit(), "circuit enumeration");
  const int n = m.size();
  std::vector<bool> indep(std::size_t{1} << n);
  std::vector<Mask> out;
  for (Mask x = 0; x < (Mask{1} << n); ++x) {
    indep[x] = m.IsIndependent(x);
    if (indep[x]) continue;
    bool minimal = true;
    for (Mask r = x; r && minimal; r &= r - 1) minimal = indep[x & ~(r & -r)];
    if (minimal) out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ElementSet> Circuits(const Matroid& m) {
  std::vector<ElementSet> out;
  for (Mask c : CircuitMasks(m)) out.push_back(m.ToSet(c));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Mask> Flats(const Matroid& m) {
  constexpr std::size_t kMaxFlats = std::size_t{1} << 20;
  const Mask full = m.full_mask();
  std::unordered_set<Mask> seen;
  std::vector<Mask> queue{m.Closure(Mask{0})};
  seen.insert(queue.front());
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Mask f = queue[head];
    Mask done = f;
    for (Mask rest = full & ~f; rest; rest &= rest - 1) {
      const Mask b = rest & -rest;
      if (done & b) continue;
      const Mask g = m.Closure(f | b);
      done |= g;
      if (seen.insert(g).second) {
        if (seen.size() > kMaxFlats) {
          throw ResourceError("flat enumeration exceeded " +
                              std::to_string(kMaxFlats) + " flats");
        }
        queue.push_back(g);
      }
    }
  }
  std::sort(queue.begin(), queue.end());
  return queue;
}

namespace {

// Builds the matroid on `ground` whose position i reads position
// parent_pos[i] of `parent`, with `contracted` (parent mask) contracted.
Matroid Mapped(const Matroid& parent, ElementSet ground,
               std::vector<int> parent_pos, Mask contracted) {
  auto oracle = std::make_shared<MappedOracle>(
      parent.oracle(), parent.full_mask(), std::move(parent_pos), contracted);
  Matroid out = Matroid::FromOracle(std::move(ground), std::move(oracle));
  if (parent.kind() == MatroidKind::kExplicit) return out.Materialize();
  return out;
}

}  // namespace

Matroid Delete(const Matroid& m, const ElementSet& removed) {
  const Mask gone = m.ToMask(removed);
  return Restrict(m, m.ToSet(m.full_mask() & ~gone));
}

Matroid Restrict(const Matroid& m, const ElementSet& kept) {
  m.ToMask(kept);  // validates ids
  if (const auto* lin = m.linear()) {
    LinearRepresentation rep{lin->field, lin->dimension, {}};
    for (ElementId e : kept) rep.columns[e] = lin->columns.at(e);
    return Matroid::Linear(std::move(rep));
  }
  if (const auto* g = m.graph()) {
    GraphDescription out;
    for (ElementId e : kept) out.edges[e] = g->edges.at(e);
    return Matroid::Graphic(std::move(out));
  }
  std::vector<int> pos;
  for (ElementId e : kept) pos.push_back(m.IndexOf(e));
  return Mapped(m, kept, std::move(pos), 0);
}

Matroid Contract(const Matroid& m, const ElementSet& contracted) {
  const Mask c = m.ToMask(contracted);
  const ElementSet kept = m.ToSet(m.full_mask() & ~c);
  std::vector<int> pos;
  for (ElementId e : kept) pos.push_back(m.IndexOf(e));
  return Mapped(m, kept, std::move(pos), c);
}

Matroid AddParallel(const Matroid& m, ElementId existing, ElementId added) {
  m.IndexOf(existing);
  if (m.HasElement(added)) {
    throw DomainError("element " + std::to_string(added) + " already exists");
  }
  if (const auto* lin = m.linear()) {
    LinearRepresentation rep = *lin;
    rep.columns[added] = rep.columns.at(existing);
    return Matroid::Linear(std::move(rep));
  }
  if (const auto* g = m.graph()) {
    GraphDescription out = *g;
    out.edges[added] = out.edges.at(existing);
    return Matroid::Graphic(std::move(out));
  }
  ElementSet ground = m.ground_set();
  ground.insert(added);
  std::vector<int> pos;
  for (ElementId e : ground)
    pos.push_back(m.IndexOf(e == added ? existing : e));
  return Mapped(m, std::move(ground), std::move(pos), 0);
}

Matroid Relabel(const Matroid& m,
                const std::map<ElementId, ElementId>& renaming) {
  auto rename = [&](ElementId e) {
    auto it = renaming.find(e);
    return it == renaming.end() ? e : it->second;
  };
  std::map<ElementId, ElementId> back;
  for (ElementId e : m.ground_set()) {
    if (!back.emplace(rename(e), e).second) {
      throw DomainError("relabeling merges two elements into id " +
                        std::to_string(rename(e)));
    }
  }
  if (const auto* lin = m.linear()) {
    LinearRepresentation rep{lin->field, lin->dimension, {}};
    for (const auto& [e, col] : lin->columns) rep.columns[rename(e)] = col;
    return Matroid::Linear(std::move(rep));
  }
  if (const auto* g = m.graph()) {
    GraphDescription out;
    for (const auto& [e, uv] : g->edges) out.edges[rename(e)] = uv;
    return Matroid::Graphic(std::move(out));
  }
  std::vector<ElementId> ids;
  std::vector<int> pos;
  for (const auto& [to, from] : back) {
    ids.push_back(to);
    pos.push_back(m.IndexOf(from));
  }
  return Mapped(m, ElementSet(std::move(ids)), std::move(pos), 0);
}

int SeparationWidth(const Matroid& m, const ElementSet& a) {
  const Mask am = m.ToMask(a);
  return m.Rank(am) + m.Rank(m.full_mask() & ~am) - m.rank() + 1;
}

bool RestrictionsEqual(const Matroid& m1, const Matroid& m2,
                       const ElementSet& t) {
  RequireWithinLimit(static_cast<int>(t.size()), 24, "restriction comparison");
  std::vector<int> p1, p2;
  for (ElementId e : t) {
    p1.push_back(m1.IndexOf(e));
    p2.push_back(m2.IndexOf(e));
  }
  const int k = static_cast<int>(t.size());
  for (Mask s = 0; s < (Mask{1} << k); ++s) {
    Mask a = 0, b = 0;
    for (Mask r = s; r; r &= r - 1) {
      const int i = std::countr_zero(r);
      a |= Bit(p1[i]);
      b |= Bit(p2[i]);
    }
    if (m1.Rank(a) != m2.Rank(b)) return false;
  }
  return true;
}

bool SameMatroid(const Matroid& a, const Matroid& b) {
  if (a.ground_set() != b.ground_set()) return false;
  RequireWithinLimit(a.size(), 24, "matroid comparison");
  for (Mask m = 0; m <= a.full_mask(); ++m) {
    if (a.Rank(m) != b.Rank(m)) return false;
    if (m == a.full_mask()) break;
  }
  return true;
}

Matroid TwoSum(const Matroid& m1, const Matroid& m2, ElementId p1,
               ElementId p2) {
  if (!m1.HasElement(p1) || !m2.HasElement(p2)) {
    throw DomainError("2-sum basepoints must belong to their matroids");
  }
  if (m1.IsLoop(p1) || m1.IsColoop(p1)) {
    throw DomainError("2-sum basepoint " + std::to_string(p1) +
                      " is a loop or coloop of the first matroid");
  }
  if (m2.IsLoop(p2) || m2.IsColoop(p2)) {
    throw DomainError("2-sum basepoint " + std::to_string(p2) +
                      " is a loop or coloop of the second matroid");
  }
  const ElementSet rest1 = Difference(m1.ground_set(), ElementSet{p1});
  const ElementSet rest2 = Difference(m2.ground_set(), ElementSet{p2});
  if (!Intersection(rest1, rest2).empty() || rest1.contains(p2) ||
      rest2.contains(p1)) {
    throw DomainError("2-sum operands share labels outside the basepoints");
  }
  const ElementSet ground = Union(rest1, rest2);
  std::vector<ElementSet> circuits;
  std::vector<ElementSet> through1, through2;
  for (const ElementSet& c : Circuits(m1)) {
    (c.contains(p1) ? through1 : circuits)
        .push_back(Difference(c, ElementSet{p1}));
  }
  for (const ElementSet& c : Circuits(m2)) {
    (c.contains(p2) ? through2 : circuits)
        .push_back(Difference(c, ElementSet{p2}));
  }
  for (const ElementSet& a : through1) {
    for (const ElementSet& b : through2) circuits.push_back(Union(a, b));
  }
  return Matroid::FromCircuits(ground, circuits);
}

std::optional<std::string> CheckRankAxioms(const Matroid& m) {
  const int n = m.size();
  RequireWithinLimit(n, Matroid::kMaxTableElements, "rank axiom check");
  std::vector<int> r(std::size_t{1} << n);
  for (Mask x = 0; x < (Mask{1} << n); ++x) r[x] = m.Rank(x);
  auto name = [&](Mask x) { return m.ToSet(x).ToString(); };
  if (r[0] != 0) return "r(empty) = " + std::to_string(r[0]);
  for (Mask x = 0; x < (Mask{1} << n); ++x) {
    if (r[x] < 0 || r[x] > Popcount(x)) {
      return "r(" + name(x) + ") = " + std::to_string(r[x]) +
             " outside [0, |X|]";
    }
    for (int e = 0; e < n; ++e) {
      if (Contains(x, e)) continue;
      const int step = r[x | Bit(e)] - r[x];
      if (step != 0 && step != 1) {
        return "unit increase fails at " + name(x) + " + " +
               std::to_string(m.element(e));
      }
      for (int f = e + 1; f < n; ++f) {
        if (Contains(x, f)) continue;
        if (r[x | Bit(e)] + r[x | Bit(f)] < r[x | Bit(e) | Bit(f)] + r[x]) {
          return "submodularity fails for " + name(x | Bit(e)) + ", " +
                 name(x | Bit(f));
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace amalgam

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


#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/container_hash/hash.hpp>

#include "amalgam/errors.h"
#include "amalgam/mso.h"
#include "amalgam/types.h"

namespace amalgam::mso {

namespace {

// Lowered connectives and atoms.
enum class Op { kConst, kNot, kOr, kExistsElem, kExistsSet, kMem, kEq, kInCl };

struct CNode {
  Op op = Op::kConst;
  bool value = false;
  int a = -1, b = -1;  // children
  int x = -1, y = -1;  // element slots; kMem uses y as the set slot
  int bound = -1;
  int base = -1;                          // kInCl set slot
  std::vector<std::pair<bool, int>> ops;  // kInCl term operations
  std::vector<int> free_slots;
  std::string text;
};

class Lowerer {
 public:
  explicit Lowerer(const Formula& f) {
    Collect(f);
  }

  Formula Lower(const Formula& f) {
    switch (f->kind) {
      case Kind::kTrue:
      case Kind::kFalse:
      case Kind::kInClosure:
        return f;
      case Kind::kNot:
        return Not(Lower(f->children[0]));
      case Kind::kOr:
        return Or(Lower(f->children[0]), Lower(f->children[1]));
      case Kind::kAnd:
        return Not(Or(Not(Lower(f->children[0])),
                      Not(Lower(f->children[1]))));
      case Kind::kImplies:
        return Or(Not(Lower(f->children[0])), Lower(f->children[1]));
      case Kind::kIff: {
        const Formula& a = f->children[0];
        const Formula& b = f->children[1];
        return Lower(And(Implies(a, b), Implies(b, a)));
      }
      case Kind::kExists:
        return Exists(f->var, Lower(f->children[0]));
      case Kind::kForall:
        return Not(Exists(f->var, Not(Lower(f->children[0]))));
      case Kind::kElemEq:
        return f->var == f->var2 ? True() : f;
      case Kind::kMember:
        return MemberOf(f->var, f->terms[0]);
      case Kind::kSetEq: {
        const std::string z = Fresh();
        return Lower(Forall(z, Iff(Member(z, f->terms[0]),
                                   Member(z, f->terms[1]))));
      }
      case Kind::kClosureEq: {
        const std::string z = Fresh();
        return Lower(Forall(z, Iff(InClosure(z, f->terms[0]),
                                   InClosure(z, f->terms[1]))));
      }
      case Kind::kIndep: {
        const std::string e = Fresh();
        SetTerm minus = f->terms[0];
        minus.ops.push_back({false, e});
        return Not(Exists(
            e, Lower(And(Member(e, f->terms[0]), InClosure(e, minus)))));
      }
    }
    return f;
  }

 private:
  void Collect(const Formula& f) {
    used_.insert(f->var);
    used_.insert(f->var2);
    for (const auto& t : f->terms) {
      used_.insert(t.base);
      for (const auto& op : t.ops) used_.insert(op.var);
    }
    for (const auto& c : f->children) Collect(c);
  }

  std::string Fresh() {
    while (true) {
      std::string name = "z#" + std::to_string(++counter_);
      if (!used_.contains(name)) return name;
    }
  }

  // x in (base op1 op2 ...), peeled from the last operation.
  Formula MemberOf(const std::string& x, SetTerm t) {
    if (t.ops.empty()) {
      return t.base.empty() ? False() : Member(x, Var(t.base));
    }
    const SetTerm::Op last = t.ops.back();
    t.ops.pop_back();
    Formula rest = MemberOf(x, t);
    if (last.add) {
      return Or(last.var == x ? True() : ElemEq(x, last.var), rest);
    }
    if (last.var == x) return False();
    return Not(Or(ElemEq(x, last.var), Not(rest)));
  }

  std::set<std::string> used_;
  int counter_ = 0;
};

}  // namespace

struct CompiledFormula::Impl {
  std::vector<CNode> nodes;
  int top = -1;
  std::vector<VarKind> slot_kinds;
  std::map<std::string, int> free_slots;  // free variable -> slot

  int Build(const Formula& f, std::map<std::string, int>& scope) {
    CNode n;
    n.text = ToString(f);
    auto slot = [&](const std::string& v) { return scope.at(v); };
    switch (f->kind) {
      case Kind::kTrue:
      case Kind::kFalse:
        n.op = Op::kConst;
        n.value = f->kind == Kind::kTrue;
        break;
      case Kind::kNot:
        n.op = Op::kNot;
        n.a = Build(f->children[0], scope);
        n.free_slots = nodes[n.a].free_slots;
        break;
      case Kind::kOr: {
        n.op = Op::kOr;
        n.a = Build(f->children[0], scope);
        n.b = Build(f->children[1], scope);
        std::set<int> s(nodes[n.a].free_slots.begin(),
                        nodes[n.a].free_slots.end());
        s.insert(nodes[n.b].free_slots.begin(), nodes[n.b].free_slots.end());
        n.free_slots.assign(s.begin(), s.end());
        break;
      }
      case Kind::kExists: {
        const VarKind kind = KindOf(f->var);
        n.op = kind == VarKind::kElement ? Op::kExistsElem : Op::kExistsSet;
        n.bound = static_cast<int>(slot_kinds.size());
        slot_kinds.push_back(kind);
        auto saved = scope.find(f->var) == scope.end()
                         ? -1
                         : scope.at(f->var);
        scope[f->var] = n.bound;
        n.a = Build(f->children[0], scope);
        if (saved < 0) {
          scope.erase(f->var);
        } else {
          scope[f->var] = saved;
        }
        for (int s : nodes[n.a].free_slots) {
          if (s != n.bound) n.free_slots.push_back(s);
        }
        break;
      }
      case Kind::kElemEq:
        n.op = Op::kEq;
        n.x = slot(f->var);
        n.y = slot(f->var2);
        n.free_slots = {std::min(n.x, n.y), std::max(n.x, n.y)};
        break;
      case Kind::kMember:
        n.op = Op::kMem;
        n.x = slot(f->var);
        n.y = slot(f->terms[0].base);
        n.free_slots = {std::min(n.x, n.y), std::max(n.x, n.y)};
        break;
      case Kind::kInClosure: {
        n.op = Op::kInCl;
        n.x = slot(f->var);
        std::set<int> s = {n.x};
        const SetTerm& t = f->terms[0];
        if (!t.base.empty()) {
          n.base = slot(t.base);
          s.insert(n.base);
        }
        for (const auto& op : t.ops) {
          n.ops.push_back({op.add, slot(op.var)});
          s.insert(slot(op.var));
        }
        n.free_slots.assign(s.begin(), s.end());
        break;
      }
      default:
        throw DomainError("internal: formula not lowered: " + n.text);
    }
    nodes.push_back(std::move(n));
    return static_cast<int>(nodes.size()) - 1;
  }
};

CompiledFormula::CompiledFormula(const Formula& f)
    : source_(f), impl_(std::make_unique<Impl>()) {
  Lowerer lowerer(f);
  const Formula lowered = lowerer.Lower(f);
  std::map<std::string, int> scope;
  for (const auto& v : FreeVariables(f)) {
    scope[v] = static_cast<int>(impl_->slot_kinds.size());
    impl_->free_slots[v] = scope[v];
    impl_->slot_kinds.push_back(KindOf(v));
  }
  impl_->top = impl_->Build(lowered, scope);
}

CompiledFormula::~CompiledFormula() = default;

namespace {

using Key = std::vector<std::int64_t>;

struct KeyHash {
  std::size_t operator()(const Key& k) const {
    return boost::hash_range(k.begin(), k.end());
  }
};

struct TreeNode {
  NodeId id;
  int c1 = -1, c2 = -1;
  NodeJoiner joiner;
  Mask fresh = 0;  // surviving elements whose home is this node
  std::vector<ElementId> universe;
};

class Evaluator {
 public:
  Evaluator(const CompiledFormula::Impl& f, std::vector<TreeNode>& tree,
            const EvalOptions& options)
      : f_(f),
        tree_(tree),
        options_(options),
        tables_(f.nodes.size()),
        cache_(f.nodes.size()),
        elem_(f.slot_kinds.size(), -1),
        set_(f.slot_kinds.size(), 0) {}

  std::vector<int>& elem() { return elem_; }
  std::vector<Mask>& set() { return set_; }

  // State of subformula c at tree node v given the children's states
  // (-1 at leaves) and the local view in elem_/set_.
  int Step(int c, int v, int s1, int s2) {
    const CNode& n = f_.nodes[c];
    if (n.op == Op::kNot) return Step(n.a, v, s1, s2);
    Key ck = {v, s1, s2};
    for (int s : n.free_slots) {
      ck.push_back(f_.slot_kinds[s] == VarKind::kSet
                       ? static_cast<std::int64_t>(set_[s])
                       : elem_[s]);
    }
    auto hit = cache_[c].find(ck);
    if (hit != cache_[c].end()) return hit->second;
    const int out = Compute(c, v, s1, s2);
    cache_[c].emplace(std::move(ck), out);
    return out;
  }

  bool Accept(int c, int s) const {
    const CNode& n = f_.nodes[c];
    switch (n.op) {
      case Op::kConst:
        return n.value;
      case Op::kNot:
        return !Accept(n.a, s);
      case Op::kOr: {
        const Key& k = KeyOf(c, s);
        return Accept(n.a, static_cast<int>(k[0])) ||
               Accept(n.b, static_cast<int>(k[1]));
      }
      case Op::kExistsElem: {
        const Key& k = KeyOf(c, s);
        for (std::int64_t i = 1; i <= k[0]; ++i) {
          if (Accept(n.a, static_cast<int>(k[i]))) return true;
        }
        return false;
      }
      case Op::kExistsSet:
        for (std::int64_t p : KeyOf(c, s)) {
          if (Accept(n.a, static_cast<int>(p))) return true;
        }
        return false;
      case Op::kMem:
        return KeyOf(c, s)[0] == 1;
      case Op::kEq:
        return KeyOf(c, s)[0] == 3;
      case Op::kInCl: {
        const Key& k = KeyOf(c, s);
        return k[0] == 1 && (k[k.size() - 1] & 1) != 0;
      }
    }
    return false;
  }

  std::string Describe(int c, int s) const {
    const CNode& n = f_.nodes[c];
    switch (n.op) {
      case Op::kNot:
        return "not(" + Describe(n.a, s) + ")";
      case Op::kMem: {
        static const char* kNames[] = {"unplaced", "in", "out"};
        return kNames[KeyOf(c, s)[0]];
      }
      case Op::kEq: {
        static const char* kNames[] = {"none", "left", "right", "equal",
                                       "distinct"};
        return kNames[KeyOf(c, s)[0]];
      }
      case Op::kInCl:
        return KeyOf(c, s)[0] == 0 ? "unplaced" : "placed";
      default:
        return "state " + std::to_string(s);
    }
  }

  std::size_t StateCount(int c) const {
    const CNode& n = f_.nodes[c];
    if (n.op == Op::kNot) return StateCount(n.a);
    return tables_[c].keys.size();
  }

 private:
  struct Table {
    std::unordered_map<Key, int, KeyHash> ids;
    std::vector<Key> keys;
  };

  const Key& KeyOf(int c, int s) const { return tables_[c].keys[s]; }

  int Intern(int c, Key key) {
    Table& t = tables_[c];
    auto it = t.ids.find(key);
    if (it != t.ids.end()) return it->second;
    if (t.keys.size() >= options_.state_budget) {
      throw ResourceError("state budget of " +
                          std::to_string(options_.state_budget) +
                          " exceeded in subformula: " + f_.nodes[c].text);
    }
    const int id = static_cast<int>(t.keys.size());
    t.keys.push_back(key);
    t.ids.emplace(std::move(key), id);
    return id;
  }

  // Child state sets of an element quantifier: placed and unplaced.
  void SplitStates(int c, int s, std::vector<int>& placed,
                   std::vector<int>& unplaced) const {
    placed.clear();
    unplaced.clear();
    if (s < 0) {
      unplaced.push_back(-1);
      return;
    }
    const Key& k = KeyOf(c, s);
    for (std::int64_t i = 1; i <= k[0]; ++i) {
      placed.push_back(static_cast<int>(k[i]));
    }
    for (std::size_t i = k[0] + 1; i < k.size(); ++i) {
      unplaced.push_back(static_cast<int>(k[i]));
    }
  }

  std::vector<int> SetStates(int c, int s) const {
    if (s < 0) return {-1};
    const Key& k = KeyOf(c, s);
    return std::vector<int>(k.begin(), k.end());
  }

  // Code of an atom's child state, 0 for a missing child.
  std::int64_t Code(int c, int s) const { return s < 0 ? 0 : KeyOf(c, s)[0]; }

  int Compute(int c, int v, int s1, int s2) {
    const CNode& n = f_.nodes[c];
    switch (n.op) {
      case Op::kConst:
        return Intern(c, {n.value ? 1 : 0});
      case Op::kNot:
        return Step(n.a, v, s1, s2);
      case Op::kOr: {
        const Key* k1 = s1 < 0 ? nullptr : &KeyOf(c, s1);
        const Key* k2 = s2 < 0 ? nullptr : &KeyOf(c, s2);
        const int a = Step(n.a, v, k1 ? static_cast<int>((*k1)[0]) : -1,
                           k2 ? static_cast<int>((*k2)[0]) : -1);
        const int b = Step(n.b, v, k1 ? static_cast<int>((*k1)[1]) : -1,
                           k2 ? static_cast<int>((*k2)[1]) : -1);
        return Intern(c, {a, b});
      }
      case Op::kExistsElem:
        return ExistsElement(c, v, s1, s2);
      case Op::kExistsSet:
        return ExistsSet(c, v, s1, s2);
      case Op::kMem: {
        if (elem_[n.x] >= 0) {
          return Intern(c, {Contains(set_[n.y], elem_[n.x]) ? 1 : 2});
        }
        const std::int64_t code = std::max(Code(c, s1), Code(c, s2));
        return Intern(c, {code});
      }
      case Op::kEq:
        return Equality(c, v, s1, s2);
      case Op::kInCl:
        return Closure(c, v, s1, s2);
    }
    return 0;
  }

  int ExistsElement(int c, int v, int s1, int s2) {
    const CNode& n = f_.nodes[c];
    std::vector<int> p1, u1, p2, u2;
    SplitStates(c, s1, p1, u1);
    SplitStates(c, s2, p2, u2);
    std::set<int> placed, unplaced;
    const int saved = elem_[n.bound];
    elem_[n.bound] = -1;
    for (int a : p1) {
      for (int b : u2) placed.insert(Step(n.a, v, a, b));
    }
    for (int a : u1) {
      for (int b : p2) placed.insert(Step(n.a, v, a, b));
    }
    for (int a : u1) {
      for (int b : u2) unplaced.insert(Step(n.a, v, a, b));
    }
    const Mask fresh = tree_[v].fresh;
    for (int i = 0; i < 64; ++i) {
      if (!Contains(fresh, i)) continue;
      elem_[n.bound] = i;
      for (int a : u1) {
        for (int b : u2) placed.insert(Step(n.a, v, a, b));
      }
    }
    elem_[n.bound] = saved;
    Key key = {static_cast<std::int64_t>(placed.size())};
    key.insert(key.end(), placed.begin(), placed.end());
    key.insert(key.end(), unplaced.begin(), unplaced.end());
    return Intern(c, std::move(key));
  }

  int ExistsSet(int c, int v, int s1, int s2) {
    const CNode& n = f_.nodes[c];
    const std::vector<int> a1 = SetStates(c, s1);
    const std::vector<int> a2 = SetStates(c, s2);
    std::set<int> states;
    const Mask saved = set_[n.bound];
    const Mask fresh = tree_[v].fresh;
    for (Mask sub = fresh;; sub = (sub - 1) & fresh) {
      set_[n.bound] = sub;
      for (int a : a1) {
        for (int b : a2) states.insert(Step(n.a, v, a, b));
      }
      if (sub == 0) break;
    }
    set_[n.bound] = saved;
    return Intern(c, Key(states.begin(), states.end()));
  }

  // Codes: 0 neither placed, 1 only x, 2 only y, 3 equal, 4 distinct.
  int Equality(int c, int v, int s1, int s2) {
    (void)v;
    const CNode& n = f_.nodes[c];
    const std::int64_t c1 = Code(c, s1), c2 = Code(c, s2);
    auto has_x = [](std::int64_t code) { return code == 1 || code >= 3; };
    auto has_y = [](std::int64_t code) { return code >= 2; };
    // Source: 0 none, 1/2 child, 3 fresh here.
    const int sx = elem_[n.x] >= 0 ? 3 : has_x(c1) ? 1 : has_x(c2) ? 2 : 0;
    const int sy = elem_[n.y] >= 0 ? 3 : has_y(c1) ? 1 : has_y(c2) ? 2 : 0;
    std::int64_t code;
    if (sx == 0 && sy == 0) {
      code = 0;
    } else if (sy == 0) {
      code = 1;
    } else if (sx == 0) {
      code = 2;
    } else if (sx == 3 && sy == 3) {
      code = elem_[n.x] == elem_[n.y] ? 3 : 4;
    } else if (sx == sy) {
      code = sx == 1 ? c1 : c2;
    } else {
      code = 4;
    }
    return Intern(c, {code});
  }

  // Key: placed flag, the type map over subsets of J, then the bits
  // Y -> [x in cl(X_v u Y)] packed into 64-bit words.
  int Closure(int c, int v, int s1, int s2) {
    const CNode& n = f_.nodes[c];
    const NodeJoiner& joiner = tree_[v].joiner;
    NodeType f1, f2;
    bool placed1 = false, placed2 = false;
    auto unpack = [&](int s, NodeType& f, bool& placed) {
      if (s < 0) {
        f.map = {0};
        return;
      }
      const Key& k = KeyOf(c, s);
      placed = k[0] == 1;
      const std::size_t size = static_cast<std::size_t>(k[1]);
      f.map.resize(size);
      for (std::size_t i = 0; i < size; ++i) {
        f.map[i] = static_cast<Mask>(k[2 + i]);
      }
    };
    unpack(s1, f1, placed1);
    unpack(s2, f2, placed2);
    Mask t = n.base >= 0 ? set_[n.base] : 0;
    for (const auto& [add, slot] : n.ops) {
      if (elem_[slot] < 0) continue;
      if (add) {
        t |= Bit(elem_[slot]);
      } else {
        t &= ~Bit(elem_[slot]);
      }
    }
    const std::size_t size = std::size_t{1} << joiner.j_size();
    const int x = elem_[n.x];
    const bool placed = x >= 0 || placed1 || placed2;
    Key key = {placed ? 1 : 0, static_cast<std::int64_t>(size)};
    key.reserve(2 + size + size / 64 + 1);
    std::vector<std::int64_t> bits(placed ? (size + 63) / 64 : 0, 0);
    auto child_bit = [&](int s, Mask local) {
      const Key& k = KeyOf(c, s);
      const std::size_t csize = static_cast<std::size_t>(k[1]);
      const std::int64_t word = k[2 + csize + local / 64];
      return ((word >> (local % 64)) & 1) != 0;
    };
    for (Mask y = 0; y < size; ++y) {
      const Mask z = joiner.ClosureFixpoint(f1, f2, joiner.LiftJ(y) | t);
      key.push_back(static_cast<std::int64_t>(joiner.JPart(z)));
      bool in = false;
      if (x >= 0) {
        in = Contains(z, x);
      } else if (placed1) {
        in = child_bit(s1, joiner.J1Part(z));
      } else if (placed2) {
        in = child_bit(s2, joiner.J2Part(z));
      }
      if (in) bits[y / 64] |= std::int64_t{1} << (y % 64);
    }
    key.insert(key.end(), bits.begin(), bits.end());
    return Intern(c, std::move(key));
  }

  const CompiledFormula::Impl& f_;
  std::vector<TreeNode>& tree_;
  EvalOptions options_;
  std::vector<Table> tables_;
  std::vector<std::unordered_map<Key, int, KeyHash>> cache_;
  std::vector<int> elem_;
  std::vector<Mask> set_;
};

}  // namespace

bool EvalDecomposition(const AmalgamDecomposition& input,
                       const CompiledFormula& f, const Assignment& q,
                       const EvalOptions& options, EvalStats* stats) {
  const ValidationReport report = Validate(input);
  if (!report.valid()) {
    throw DomainError("invalid decomposition: " + report.Summary());
  }
  const AmalgamDecomposition t = IsNice(input) ? input : ToNice(input);
  const std::string nonlocal = NonLocalBoundary(t);
  if (!nonlocal.empty()) throw DomainError(nonlocal);

  const auto grounds = GroundSets(t);
  const auto boundaries = Boundaries(t);
  const auto survivors = Survivors(t);
  const ElementSet& ground = grounds.at(t.root);
  CheckAssignment(f.source(), q, ground);

  const std::vector<NodeId> order = PostOrder(t);
  std::map<NodeId, int> index;
  std::vector<TreeNode> tree;
  tree.reserve(order.size());
  std::map<ElementId, std::pair<int, int>> home;  // element -> (node, pos)
  for (const NodeId& id : order) {
    const DecompositionNode& node = t.node(id);
    const ElementSet& j = boundaries.at(id);
    const int i = static_cast<int>(tree.size());
    index[id] = i;
    ElementSet fresh;
    if (node.is_leaf()) {
      tree.push_back({id, -1, -1, NodeJoiner(node.k, {}, {}, j), 0, {}});
      fresh = Intersection(node.k.ground_set(), survivors.at(id));
    } else {
      const NodeId& a = node.children[0];
      const NodeId& b = node.children[1];
      tree.push_back({id, index.at(a), index.at(b),
                      NodeJoiner(node.k, node.j1, node.j2, j), 0, {}});
      fresh = Intersection(
          Difference(node.k.ground_set(), Union(node.j1, node.j2)),
          survivors.at(id));
    }
    tree.back().universe = node.k.ground_set().ids();
    tree.back().fresh = node.k.ToMask(fresh);
    for (ElementId e : fresh) home[e] = {i, node.k.IndexOf(e)};
  }

  const CompiledFormula::Impl& impl = f.impl();
  Evaluator eval(impl, tree, options);
  std::vector<int> state(tree.size(), -1);
  for (std::size_t v = 0; v < tree.size(); ++v) {
    std::fill(eval.elem().begin(), eval.elem().end(), -1);
    std::fill(eval.set().begin(), eval.set().end(), 0);
    for (const auto& [name, slot] : impl.free_slots) {
      const Value& value = q.at(name);
      if (value.is_set) {
        for (ElementId e : value.set) {
          const auto& [node, pos] = home.at(e);
          if (node == static_cast<int>(v)) eval.set()[slot] |= Bit(pos);
        }
      } else {
        const auto& [node, pos] = home.at(value.element);
        if (node == static_cast<int>(v)) eval.elem()[slot] = pos;
      }
    }
    const TreeNode& n = tree[v];
    state[v] = eval.Step(impl.top, static_cast<int>(v),
                         n.c1 < 0 ? -1 : state[n.c1],
                         n.c2 < 0 ? -1 : state[n.c2]);
    if (stats != nullptr) {
      stats->trace.push_back({n.id, eval.Describe(impl.top, state[v])});
    }
  }
  const bool result = eval.Accept(impl.top, state[index.at(t.root)]);
  if (stats != nullptr) {
    for (std::size_t c = 0; c < impl.nodes.size(); ++c) {
      stats->states.push_back(
          {impl.nodes[c].text, eval.StateCount(static_cast<int>(c))});
    }
    stats->top_states = eval.StateCount(impl.top);
  }
  return result;
}

bool EvalDecomposition(const AmalgamDecomposition& t, const Formula& f,
                       const Assignment& q, const EvalOptions& options,
                       EvalStats* stats) {
  const CompiledFormula compiled(f);
  return EvalDecomposition(t, compiled, q, options, stats);
}

bool Msom(const AmalgamDecomposition& t, const Formula& f,
          const Assignment& q) {
  return EvalDecomposition(t, f, q);
}

}  // namespace amalgam::mso

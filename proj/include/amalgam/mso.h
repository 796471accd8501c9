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


#ifndef AMALGAM_MSO_H_
#define AMALGAM_MSO_H_

#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "amalgam/decomposition.h"
#include "amalgam/element_set.h"
#include "amalgam/matroid.h"

namespace amalgam::mso {

// Variables starting with an uppercase letter range over sets, all others
// over elements.
enum class VarKind { kElement, kSet };
VarKind KindOf(const std::string& name);

// base (+|\) {v1} (+|\) {v2} ..., applied left to right. An empty base is
// the empty set.
struct SetTerm {
  struct Op {
    bool add = true;
    std::string var;
    friend bool operator==(const Op&, const Op&) = default;
  };
  std::string base;
  std::vector<Op> ops;

  friend bool operator==(const SetTerm&, const SetTerm&) = default;
};

enum class Kind {
  kTrue,
  kFalse,
  kNot,
  kAnd,
  kOr,
  kImplies,
  kIff,
  kExists,
  kForall,
  kElemEq,     // var = var2
  kSetEq,      // terms[0] = terms[1]
  kMember,     // var in terms[0]
  kInClosure,  // var in cl(terms[0])
  kClosureEq,  // cl(terms[0]) = cl(terms[1])
  kIndep,      // indep(terms[0])
};

struct Node;
using Formula = std::shared_ptr<const Node>;

struct Node {
  Kind kind = Kind::kTrue;
  std::vector<Formula> children;
  std::string var;
  std::string var2;
  std::vector<SetTerm> terms;
};

bool Equal(const Formula& a, const Formula& b);

// Builders.
Formula True();
Formula False();
Formula Not(Formula f);
Formula And(Formula a, Formula b);
Formula Or(Formula a, Formula b);
Formula Implies(Formula a, Formula b);
Formula Iff(Formula a, Formula b);
Formula Exists(const std::string& var, Formula body);
Formula Forall(const std::string& var, Formula body);
Formula ElemEq(const std::string& x, const std::string& y);
Formula SetEq(SetTerm a, SetTerm b);
Formula Member(const std::string& x, SetTerm t);
Formula InClosure(const std::string& x, SetTerm t);
Formula ClosureEq(SetTerm a, SetTerm b);
Formula Indep(SetTerm t);
SetTerm Var(const std::string& set_var);

// Grammar in docs/mso-grammar.md. is_circuit and is_base are expanded
// during parsing. Throws SyntaxError with a byte position.
Formula Parse(const std::string& text);
// ASCII rendering accepted by Parse.
std::string ToString(const Formula& f);

std::set<std::string> FreeVariables(const Formula& f);

// Rewrites to not, or, exists and the atoms =, in, in cl, cl = cl:
// forall -> not exists not, and/implies/iff -> or/not, indep(X) ->
// not exists e (e in X and cl(X) = cl(X \ {e})).
Formula Desugar(const Formula& f);

struct Value {
  bool is_set = false;
  ElementId element = 0;
  ElementSet set;

  static Value Element(ElementId e) { return {false, e, {}}; }
  static Value Set(ElementSet s) { return {true, 0, std::move(s)}; }
};
using Assignment = std::map<std::string, Value>;

// Checks that every free variable of f is assigned a value of the right
// kind whose elements lie in `ground`.
void CheckAssignment(const Formula& f, const Assignment& q,
                     const ElementSet& ground);

// Exhaustive semantics. |E(M)| <= NaiveLimit().
bool EvalNaive(const Matroid& m, const Formula& f, const Assignment& q = {});
int NaiveLimit();

// Immutable lowered form used by the tree evaluator.
class CompiledFormula {
 public:
  explicit CompiledFormula(const Formula& f);
  ~CompiledFormula();
  CompiledFormula(const CompiledFormula&) = delete;
  CompiledFormula& operator=(const CompiledFormula&) = delete;

  const Formula& source() const { return source_; }
  struct Impl;
  const Impl& impl() const { return *impl_; }

 private:
  Formula source_;
  std::unique_ptr<Impl> impl_;
};

struct EvalOptions {
  // Interned states allowed per subformula.
  std::size_t state_budget = 1000000;
};

struct EvalStats {
  // Distinct states per lowered subformula, keyed by its rendering.
  std::vector<std::pair<std::string, std::size_t>> states;
  // Top-level state description at every tree node, in post-order.
  std::vector<std::pair<NodeId, std::string>> trace;
  std::size_t top_states = 0;
};

// Bottom-up evaluation on the decomposition without realizing M. The tree
// must be valid with J(v) inside E(K(v)) at every node.
bool EvalDecomposition(const AmalgamDecomposition& t,
                       const CompiledFormula& f, const Assignment& q = {},
                       const EvalOptions& options = {},
                       EvalStats* stats = nullptr);
bool EvalDecomposition(const AmalgamDecomposition& t, const Formula& f,
                       const Assignment& q = {},
                       const EvalOptions& options = {},
                       EvalStats* stats = nullptr);

// The MSOM problem: validates the assignment against E(M) and runs the
// tree evaluator.
bool Msom(const AmalgamDecomposition& t, const Formula& f,
          const Assignment& q);

}  // namespace amalgam::mso

#endif  // AMALGAM_MSO_H_

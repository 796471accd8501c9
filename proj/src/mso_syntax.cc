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
#include <cctype>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "amalgam/errors.h"
#include "amalgam/mso.h"

namespace amalgam::mso {
namespace {

Formula Make(Kind kind, std::vector<Formula> children = {},
             std::string var = {}, std::string var2 = {},
             std::vector<SetTerm> terms = {}) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->children = std::move(children);
  n->var = std::move(var);
  n->var2 = std::move(var2);
  n->terms = std::move(terms);
  return n;
}

void TermVars(const SetTerm& t, std::set<std::string>& out) {
  if (!t.base.empty()) out.insert(t.base);
  for (const auto& op : t.ops) out.insert(op.var);
}

// Every identifier in f, bound or free.
void AllVars(const Formula& f, std::set<std::string>& out) {
  if (!f->var.empty()) out.insert(f->var);
  if (!f->var2.empty()) out.insert(f->var2);
  for (const auto& t : f->terms) TermVars(t, out);
  for (const auto& c : f->children) AllVars(c, out);
}

std::string FreshElementVar(const std::set<std::string>& used) {
  for (const char* base : {"e", "f", "g", "h"}) {
    if (!used.contains(base)) return base;
  }
  for (int i = 1;; ++i) {
    std::string name = "e" + std::to_string(i);
    if (!used.contains(name)) return name;
  }
}

SetTerm WithOp(SetTerm t, bool add, const std::string& var) {
  t.ops.push_back({add, var});
  return t;
}

// `used` holds the variables in scope; the macro binder avoids them.
Formula IsCircuit(const SetTerm& t, std::set<std::string> used) {
  TermVars(t, used);
  const std::string e = FreshElementVar(used);
  return And(Not(Indep(t)),
             Forall(e, Implies(Member(e, t), Indep(WithOp(t, false, e)))));
}

Formula IsBase(const SetTerm& t, std::set<std::string> used) {
  TermVars(t, used);
  const std::string e = FreshElementVar(used);
  return And(Indep(t), Forall(e, InClosure(e, t)));
}

// ---------------------------------------------------------------- lexer

struct Token {
  enum Type { kIdent, kSymbol, kEnd } type = kEnd;
  std::string text;
  std::size_t pos = 0;
};

const std::vector<std::pair<std::string, std::string>>& UnicodeAliases() {
  static const auto* aliases =
      new std::vector<std::pair<std::string, std::string>>{
          {"∀", "forall"}, {"∃", "exists"}, {"∧", "&"},
          {"∨", "|"},      {"¬", "!"},      {"⇒", "->"},
          {"→", "->"},     {"⇔", "<->"},    {"↔", "<->"},
          {"∈", "in"},     {"∉", "notin"},  {"∖", "\\"},
          {"∪", "+"},      {"≠", "!="}};
  return *aliases;
}

bool IsIdentStart(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool IsIdentChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<Token> Lex(const std::string& s) {
  static const std::vector<std::string> kSymbols = {
      "<->", "->", "!=", "(", ")", "{", "}", ",", ":", ".",
      "=",   "&",  "|",  "!", "\\", "+"};
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '#') {  // comment to end of line
      while (i < s.size() && s[i] != '\n') ++i;
      continue;
    }
    if (IsIdentStart(c)) {
      std::size_t j = i;
      while (j < s.size() && IsIdentChar(s[j])) ++j;
      out.push_back({Token::kIdent, s.substr(i, j - i), i});
      i = j;
      continue;
    }
    bool matched = false;
    for (const auto& [u, ascii] : UnicodeAliases()) {
      if (s.compare(i, u.size(), u) == 0) {
        const bool word = IsIdentStart(ascii[0]);
        out.push_back({word ? Token::kIdent : Token::kSymbol, ascii, i});
        i += u.size();
        matched = true;
        break;
      }
    }
    if (matched) continue;
    for (const auto& sym : kSymbols) {
      if (s.compare(i, sym.size(), sym) == 0) {
        out.push_back({Token::kSymbol, sym, i});
        i += sym.size();
        matched = true;
        break;
      }
    }
    if (!matched) {
      throw SyntaxError("unexpected character '" + std::string(1, c) + "'",
                        i);
    }
  }
  out.push_back({Token::kEnd, "", s.size()});
  return out;
}

bool IsReserved(const std::string& w) {
  static const std::set<std::string> kWords = {
      "exists", "forall", "in",         "notin",   "cl",   "indep",
      "true",   "false",  "is_circuit", "is_base"};
  return kWords.contains(w);
}

// --------------------------------------------------------------- parser

class Parser {
 public:
  explicit Parser(const std::string& text) : tokens_(Lex(text)) {}

  Formula Run() {
    Formula f = ParseIff();
    if (Peek().type != Token::kEnd) Fail("unexpected '" + Peek().text + "'");
    return f;
  }

 private:
  const Token& Peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  bool Is(const std::string& text, std::size_t ahead = 0) const {
    return Peek(ahead).type != Token::kEnd && Peek(ahead).text == text;
  }
  bool Accept(const std::string& text) {
    if (!Is(text)) return false;
    ++pos_;
    return true;
  }
  void Expect(const std::string& text) {
    if (!Accept(text)) {
      Fail("expected '" + text + "'" +
           (Peek().type == Token::kEnd ? " before end of input"
                                       : ", found '" + Peek().text + "'"));
    }
  }
  [[noreturn]] void Fail(const std::string& msg) const {
    throw SyntaxError(msg, Peek().pos);
  }

  std::string Variable() {
    const Token& t = Peek();
    if (t.type != Token::kIdent || IsReserved(t.text)) {
      Fail(t.type == Token::kEnd ? "expected a variable before end of input"
                                 : "expected a variable, found '" + t.text +
                                       "'");
    }
    ++pos_;
    return t.text;
  }
  std::string Variable(VarKind kind) {
    const std::size_t at = Peek().pos;
    std::string v = Variable();
    if (KindOf(v) != kind) {
      throw SyntaxError(
          "kind mismatch: '" + v + "' is " +
              (kind == VarKind::kSet ? "an element variable used as a set"
                                     : "a set variable used as an element"),
          at);
    }
    return v;
  }

  Formula ParseIff() {
    Formula a = ParseImplies();
    while (Accept("<->")) a = Iff(a, ParseImplies());
    return a;
  }
  Formula ParseImplies() {
    Formula a = ParseOr();
    if (Accept("->")) return Implies(a, ParseImplies());
    return a;
  }
  Formula ParseOr() {
    Formula a = ParseAnd();
    while (Accept("|")) a = Or(a, ParseAnd());
    return a;
  }
  Formula ParseAnd() {
    Formula a = ParseUnary();
    while (Accept("&")) a = And(a, ParseUnary());
    return a;
  }

  Formula ParseUnary() {
    if (Accept("!")) return Not(ParseUnary());
    if (Is("exists") || Is("forall")) return ParseQuantifier();
    if (Accept("(")) {
      Formula f = ParseIff();
      Expect(")");
      return f;
    }
    if (Accept("true")) return True();
    if (Accept("false")) return False();
    if (Is("indep") || Is("is_circuit") || Is("is_base")) {
      const std::string word = Peek().text;
      ++pos_;
      Expect("(");
      SetTerm t = ParseTerm();
      Expect(")");
      if (word == "indep") return Indep(t);
      const std::set<std::string> scope(scope_.begin(), scope_.end());
      return word == "is_circuit" ? IsCircuit(t, scope) : IsBase(t, scope);
    }
    if (Is("cl")) {
      SetTerm a = ParseClosure();
      const bool negate = Is("!=");
      if (!Accept("!=")) Expect("=");
      SetTerm b = ParseClosure();
      Formula f = ClosureEq(a, b);
      return negate ? Not(f) : f;
    }
    if (Is("{")) return ParseSetEquation();
    if (Peek().type == Token::kIdent && !IsReserved(Peek().text)) {
      if (KindOf(Peek().text) == VarKind::kSet) return ParseSetEquation();
      return ParseElementAtom();
    }
    Fail(Peek().type == Token::kEnd ? "unexpected end of input"
                                    : "unexpected '" + Peek().text + "'");
  }

  Formula ParseQuantifier() {
    const bool exists = Peek().text == "exists";
    ++pos_;
    const std::string v = Variable();
    std::optional<SetTerm> bound;
    if (Accept("in")) {
      if (KindOf(v) != VarKind::kElement) {
        Fail("kind mismatch: bounded quantifier needs an element variable");
      }
      bound = ParseTerm();
    }
    Formula body;
    scope_.push_back(v);
    if (Accept(":") || Accept(".")) {
      body = ParseIff();
    } else {
      body = ParseUnary();
    }
    scope_.pop_back();
    if (bound) {
      return exists ? Exists(v, And(Member(v, *bound), body))
                    : Forall(v, Implies(Member(v, *bound), body));
    }
    return exists ? Exists(v, body) : Forall(v, body);
  }

  SetTerm ParseClosure() {
    Expect("cl");
    Expect("(");
    SetTerm t = ParseTerm();
    Expect(")");
    return t;
  }

  // {a, b, ...} as a list of element variables.
  std::vector<std::string> ParseBraces() {
    Expect("{");
    std::vector<std::string> vars;
    if (Accept("}")) return vars;
    do {
      vars.push_back(Variable(VarKind::kElement));
    } while (Accept(","));
    Expect("}");
    return vars;
  }

  SetTerm ParseTerm() {
    SetTerm t;
    if (Is("{")) {
      for (auto& v : ParseBraces()) t.ops.push_back({true, v});
    } else {
      t.base = Variable(VarKind::kSet);
    }
    while (Is("\\") || Is("+")) {
      const bool add = Peek().text == "+";
      ++pos_;
      for (auto& v : ParseBraces()) t.ops.push_back({add, v});
    }
    return t;
  }

  Formula ParseSetEquation() {
    const std::size_t at = Peek().pos;
    SetTerm a = ParseTerm();
    if (Is("in") || Is("notin")) {
      throw SyntaxError(
          "kind mismatch: a set term is used as an element", at);
    }
    const bool negate = Is("!=");
    if (!Accept("!=")) Expect("=");
    Formula f = SetEq(a, ParseTerm());
    return negate ? Not(f) : f;
  }

  Formula ParseElementAtom() {
    const std::string x = Variable(VarKind::kElement);
    if (Is("=") || Is("!=")) {
      const bool negate = Is("!=");
      ++pos_;
      Formula f = ElemEq(x, Variable(VarKind::kElement));
      return negate ? Not(f) : f;
    }
    const bool negate = Is("notin");
    if (!Accept("notin")) Expect("in");
    Formula f;
    if (Is("cl")) {
      f = InClosure(x, ParseClosure());
    } else {
      f = Member(x, ParseTerm());
    }
    return negate ? Not(f) : f;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::vector<std::string> scope_;  // enclosing quantified variables
};

// -------------------------------------------------------------- printer

std::string TermString(const SetTerm& t) {
  std::string out;
  std::size_t i = 0;
  if (!t.base.empty()) {
    out = t.base;
  } else if (!t.ops.empty() && t.ops[0].add) {
    out = "{" + t.ops[0].var + "}";
    i = 1;
  } else {
    out = "{}";
  }
  for (; i < t.ops.size(); ++i) {
    out += (t.ops[i].add ? " + {" : " \\ {") + t.ops[i].var + "}";
  }
  return out;
}

bool IsBinary(Kind k) {
  return k == Kind::kAnd || k == Kind::kOr || k == Kind::kImplies ||
         k == Kind::kIff;
}

std::string Print(const Formula& f);

std::string Wrapped(const Formula& f) { return "(" + Print(f) + ")"; }

// Operand of a binary connective; the left operand of a left-associative
// chain stays bare.
std::string Operand(const Formula& child, Kind parent, bool left) {
  if (!IsBinary(child->kind)) return Print(child);
  if (left && child->kind == parent && parent != Kind::kImplies) {
    return Print(child);
  }
  return Wrapped(child);
}

std::string Print(const Formula& f) {
  switch (f->kind) {
    case Kind::kTrue:
      return "true";
    case Kind::kFalse:
      return "false";
    case Kind::kNot: {
      const Formula& c = f->children[0];
      const bool bare = c->kind == Kind::kNot || c->kind == Kind::kTrue ||
                        c->kind == Kind::kFalse || c->kind == Kind::kIndep ||
                        c->kind == Kind::kExists || c->kind == Kind::kForall;
      return "!" + (bare ? Print(c) : Wrapped(c));
    }
    case Kind::kAnd:
    case Kind::kOr:
    case Kind::kImplies:
    case Kind::kIff: {
      static const std::map<Kind, std::string> kOps = {
          {Kind::kAnd, " & "},
          {Kind::kOr, " | "},
          {Kind::kImplies, " -> "},
          {Kind::kIff, " <-> "}};
      return Operand(f->children[0], f->kind, true) + kOps.at(f->kind) +
             Operand(f->children[1], f->kind, false);
    }
    case Kind::kExists:
    case Kind::kForall: {
      const Formula& b = f->children[0];
      const std::string q =
          (f->kind == Kind::kExists ? "exists " : "forall ") + f->var + " ";
      const bool bare = b->kind == Kind::kExists || b->kind == Kind::kForall;
      return q + (bare ? Print(b) : Wrapped(b));
    }
    case Kind::kElemEq:
      return f->var + " = " + f->var2;
    case Kind::kSetEq:
      return TermString(f->terms[0]) + " = " + TermString(f->terms[1]);
    case Kind::kMember:
      return f->var + " in " + TermString(f->terms[0]);
    case Kind::kInClosure:
      return f->var + " in cl(" + TermString(f->terms[0]) + ")";
    case Kind::kClosureEq:
      return "cl(" + TermString(f->terms[0]) + ") = cl(" +
             TermString(f->terms[1]) + ")";
    case Kind::kIndep:
      return "indep(" + TermString(f->terms[0]) + ")";
  }
  return "";
}

void Free(const Formula& f, std::set<std::string>& bound,
          std::set<std::string>& out) {
  auto note = [&](const std::string& v) {
    if (!v.empty() && !bound.contains(v)) out.insert(v);
  };
  note(f->var2);
  for (const auto& t : f->terms) {
    note(t.base);
    for (const auto& op : t.ops) note(op.var);
  }
  if (f->kind == Kind::kExists || f->kind == Kind::kForall) {
    const bool was_bound = bound.contains(f->var);
    bound.insert(f->var);
    Free(f->children[0], bound, out);
    if (!was_bound) bound.erase(f->var);
    return;
  }
  note(f->var);
  for (const auto& c : f->children) Free(c, bound, out);
}

// ------------------------------------------------------- naive evaluator

class NaiveEvaluator {
 public:
  explicit NaiveEvaluator(const Matroid& m) : m_(m.MaterializeIfSmall()) {}

  void Bind(const std::string& v, Mask value) { env_.push_back({v, value}); }

  bool Eval(const Formula& f) {
    switch (f->kind) {
      case Kind::kTrue:
        return true;
      case Kind::kFalse:
        return false;
      case Kind::kNot:
        return !Eval(f->children[0]);
      case Kind::kAnd:
        return Eval(f->children[0]) && Eval(f->children[1]);
      case Kind::kOr:
        return Eval(f->children[0]) || Eval(f->children[1]);
      case Kind::kImplies:
        return !Eval(f->children[0]) || Eval(f->children[1]);
      case Kind::kIff:
        return Eval(f->children[0]) == Eval(f->children[1]);
      case Kind::kExists:
      case Kind::kForall:
        return Quantify(f);
      case Kind::kElemEq:
        return Lookup(f->var) == Lookup(f->var2);
      case Kind::kSetEq:
        return Term(f->terms[0]) == Term(f->terms[1]);
      case Kind::kMember:
        return (Lookup(f->var) & Term(f->terms[0])) != 0;
      case Kind::kInClosure:
        return (Lookup(f->var) & m_.Closure(Term(f->terms[0]))) != 0;
      case Kind::kClosureEq: {
        const Mask a = Term(f->terms[0]);
        const Mask b = Term(f->terms[1]);
        const int r = m_.Rank(a | b);
        return m_.Rank(a) == r && m_.Rank(b) == r;
      }
      case Kind::kIndep:
        return m_.IsIndependent(Term(f->terms[0]));
    }
    return false;
  }

 private:
  bool Quantify(const Formula& f) {
    const bool exists = f->kind == Kind::kExists;
    const int n = m_.size();
    env_.push_back({f->var, 0});
    bool result = !exists;
    if (KindOf(f->var) == VarKind::kElement) {
      for (int i = 0; i < n && result != exists; ++i) {
        env_.back().second = Bit(i);
        if (Eval(f->children[0]) == exists) result = exists;
      }
    } else {
      for (Mask x = 0; x <= FullMask(n) && result != exists; ++x) {
        env_.back().second = x;
        if (Eval(f->children[0]) == exists) result = exists;
        if (x == FullMask(n)) break;
      }
    }
    env_.pop_back();
    return result;
  }

  Mask Lookup(const std::string& v) const {
    for (auto it = env_.rbegin(); it != env_.rend(); ++it) {
      if (it->first == v) return it->second;
    }
    throw DomainError("unbound free variable '" + v + "'");
  }

  Mask Term(const SetTerm& t) const {
    Mask m = t.base.empty() ? 0 : Lookup(t.base);
    for (const auto& op : t.ops) {
      if (op.add) {
        m |= Lookup(op.var);
      } else {
        m &= ~Lookup(op.var);
      }
    }
    return m;
  }

  Matroid m_;
  std::vector<std::pair<std::string, Mask>> env_;
};

}  // namespace

VarKind KindOf(const std::string& name) {
  return !name.empty() && std::isupper(static_cast<unsigned char>(name[0]))
             ? VarKind::kSet
             : VarKind::kElement;
}

bool Equal(const Formula& a, const Formula& b) {
  if (a->kind != b->kind || a->var != b->var || a->var2 != b->var2 ||
      a->terms != b->terms || a->children.size() != b->children.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a->children.size(); ++i) {
    if (!Equal(a->children[i], b->children[i])) return false;
  }
  return true;
}

Formula True() { return Make(Kind::kTrue); }
Formula False() { return Make(Kind::kFalse); }
Formula Not(Formula f) { return Make(Kind::kNot, {std::move(f)}); }
Formula And(Formula a, Formula b) {
  return Make(Kind::kAnd, {std::move(a), std::move(b)});
}
Formula Or(Formula a, Formula b) {
  return Make(Kind::kOr, {std::move(a), std::move(b)});
}
Formula Implies(Formula a, Formula b) {
  return Make(Kind::kImplies, {std::move(a), std::move(b)});
}
Formula Iff(Formula a, Formula b) {
  return Make(Kind::kIff, {std::move(a), std::move(b)});
}
Formula Exists(const std::string& var, Formula body) {
  return Make(Kind::kExists, {std::move(body)}, var);
}
Formula Forall(const std::string& var, Formula body) {
  return Make(Kind::kForall, {std::move(body)}, var);
}
Formula ElemEq(const std::string& x, const std::string& y) {
  return Make(Kind::kElemEq, {}, x, y);
}
Formula SetEq(SetTerm a, SetTerm b) {
  return Make(Kind::kSetEq, {}, {}, {}, {std::move(a), std::move(b)});
}
Formula Member(const std::string& x, SetTerm t) {
  return Make(Kind::kMember, {}, x, {}, {std::move(t)});
}
Formula InClosure(const std::string& x, SetTerm t) {
  return Make(Kind::kInClosure, {}, x, {}, {std::move(t)});
}
Formula ClosureEq(SetTerm a, SetTerm b) {
  return Make(Kind::kClosureEq, {}, {}, {}, {std::move(a), std::move(b)});
}
Formula Indep(SetTerm t) {
  return Make(Kind::kIndep, {}, {}, {}, {std::move(t)});
}
SetTerm Var(const std::string& set_var) { return SetTerm{set_var, {}}; }

Formula Parse(const std::string& text) { return Parser(text).Run(); }

std::string ToString(const Formula& f) { return Print(f); }

std::set<std::string> FreeVariables(const Formula& f) {
  std::set<std::string> bound, out;
  Free(f, bound, out);
  return out;
}

Formula Desugar(const Formula& f) {
  switch (f->kind) {
    case Kind::kNot:
      return Not(Desugar(f->children[0]));
    case Kind::kOr:
      return Or(Desugar(f->children[0]), Desugar(f->children[1]));
    case Kind::kAnd:
      return Not(Or(Not(Desugar(f->children[0])),
                    Not(Desugar(f->children[1]))));
    case Kind::kImplies:
      return Or(Not(Desugar(f->children[0])), Desugar(f->children[1]));
    case Kind::kIff: {
      const Formula a = Desugar(f->children[0]);
      const Formula b = Desugar(f->children[1]);
      return Not(Or(Not(Or(Not(a), b)), Not(Or(Not(b), a))));
    }
    case Kind::kExists:
      return Exists(f->var, Desugar(f->children[0]));
    case Kind::kForall:
      return Not(Exists(f->var, Not(Desugar(f->children[0]))));
    case Kind::kIndep: {
      const SetTerm& t = f->terms[0];
      std::set<std::string> used;
      TermVars(t, used);
      const std::string e = FreshElementVar(used);
      return Not(Exists(e, Desugar(And(Member(e, t),
                                        ClosureEq(t, WithOp(t, false, e))))));
    }
    default:
      return f;
  }
}

void CheckAssignment(const Formula& f, const Assignment& q,
                     const ElementSet& ground) {
  for (const auto& v : FreeVariables(f)) {
    auto it = q.find(v);
    if (it == q.end()) {
      throw DomainError("free variable '" + v + "' is not assigned");
    }
    const bool want_set = KindOf(v) == VarKind::kSet;
    if (it->second.is_set != want_set) {
      throw DomainError("variable '" + v + "' must be assigned " +
                        (want_set ? "a set" : "an element"));
    }
    if (want_set) {
      if (!it->second.set.IsSubsetOf(ground)) {
        throw DomainError(
            "value of '" + v + "' contains elements outside E(M): " +
            Difference(it->second.set, ground).ToString());
      }
    } else if (!ground.contains(it->second.element)) {
      throw DomainError("value of '" + v + "' is not an element of E(M): " +
                        std::to_string(it->second.element));
    }
  }
}

int NaiveLimit() {
  if (std::getenv("AMALGAM_MAX_ELEMENTS") != nullptr) {
    return BruteForceLimit();
  }
  return 12;
}

bool EvalNaive(const Matroid& m, const Formula& f, const Assignment& q) {
  CheckAssignment(f, q, m.ground_set());
  RequireWithinLimit(m.size(), NaiveLimit(), "naive MSO evaluation");
  NaiveEvaluator eval(m);
  for (const auto& v : FreeVariables(f)) {
    const Value& value = q.at(v);
    eval.Bind(v, value.is_set ? m.ToMask(value.set)
                              : Bit(m.IndexOf(value.element)));
  }
  return eval.Eval(f);
}

}  // namespace amalgam::mso

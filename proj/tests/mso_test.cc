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


#include "amalgam/mso.h"

#include <gtest/gtest.h>

#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "amalgam/errors.h"
#include "amalgam/io.h"
#include "test_util.h"

namespace amalgam::mso {
namespace {

using ::amalgam::testing::CorpusFiles;
using ::amalgam::testing::CorpusPath;

std::string ReadFile(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::pair<std::string, Formula>> FormulaCorpus() {
  std::vector<std::pair<std::string, Formula>> out;
  for (const auto& path : CorpusFiles("formulas", ".mso")) {
    out.push_back({path, Parse(ReadFile(path))});
  }
  return out;
}

AmalgamDecomposition LoadTree(const std::string& name) {
  return DecompositionFromJson(
      LoadJsonFile(CorpusPath("decompositions/" + name + ".json")));
}

Assignment Elements(
    std::initializer_list<std::pair<std::string, ElementId>> l) {
  Assignment q;
  for (const auto& [v, e] : l) q[v] = Value::Element(e);
  return q;
}

TEST(ParseTest, FormulaCorpusRoundTrips) {
  const auto corpus = FormulaCorpus();
  ASSERT_GE(corpus.size(), 10u);
  for (const auto& [path, f] : corpus) {
    EXPECT_TRUE(FreeVariables(f).empty()) << path;
    const std::string text = ToString(f);
    EXPECT_TRUE(Equal(Parse(text), f)) << path << ": " << text;
    EXPECT_EQ(ToString(Parse(text)), text);
  }
}

TEST(ParseTest, RoundTripsHandWrittenFormulas) {
  for (const std::string text : {
           "x1 in X1",
           "x in cl(X \\ {y} + {z})",
           "cl({}) = cl({a, b})",
           "!!(a = b) -> c = d -> X = Y",
           "(a = b -> c = d) -> true | false",
           "(x = y | y = z) & !(z in Z) <-> indep(Z + {x})",
           "forall X exists x: x in X | X = {}",
           "exists e in X (e in cl(X \\ {e}))",
       }) {
    const Formula f = Parse(text);
    EXPECT_TRUE(Equal(Parse(ToString(f)), f)) << text << " vs " << ToString(f);
  }
}

TEST(ParseTest, UnicodeAliases) {
  const Formula a = Parse("∀X ∃x (x ∈ X ∨ ¬(x ∈ cl(X ∖ {x}) ∧ x ≠ x))");
  const Formula b =
      Parse("forall X exists x (x in X | !(x in cl(X \\ {x}) & x != x))");
  EXPECT_TRUE(Equal(a, b));
}

TEST(ParseTest, MembershipIsAtomic) {
  const Formula f = Parse("x1 in X1");
  EXPECT_EQ(f->kind, Kind::kMember);
  EXPECT_EQ(f->var, "x1");
  EXPECT_EQ(f->terms[0], Var("X1"));
  EXPECT_EQ(FreeVariables(f), (std::set<std::string>{"X1", "x1"}));
}

TEST(ParseTest, HamiltonicityExpandsMacros) {
  const Formula f =
      Parse("exists H exists e (is_circuit(H) & is_base(H \\ {e}))");
  const SetTerm h = Var("H");
  SetTerm h_e = h;
  h_e.ops.push_back({false, "e"});
  SetTerm h_f = h;
  h_f.ops.push_back({false, "f"});
  const Formula circuit = And(
      Not(Indep(h)), Forall("f", Implies(Member("f", h), Indep(h_f))));
  const Formula base = And(Indep(h_e), Forall("f", InClosure("f", h_e)));
  EXPECT_TRUE(Equal(f, Exists("H", Exists("e", And(circuit, base)))))
      << ToString(f);
}

TEST(ParseTest, ReportsSyntaxErrorsWithPosition) {
  struct Case {
    std::string text;
    std::size_t position;
  };
  for (const Case& c : std::vector<Case>{{"exists", 6},
                                         {"x in", 4},
                                         {"x = ", 4},
                                         {"(a = b", 6},
                                         {"a = b)", 5},
                                         {"a ? b", 2},
                                         {"indep(X", 7}}) {
    try {
      Parse(c.text);
      ADD_FAILURE() << c.text;
    } catch (const SyntaxError& e) {
      EXPECT_EQ(e.position(), c.position) << c.text << ": " << e.what();
    }
  }
}

TEST(ParseTest, RejectsKindMismatch) {
  for (const std::string text :
       {"x in y", "indep(x)", "X in Y", "x = Y", "cl(x) = cl(X)",
        "exists X in Y (true)", "X \\ {Y} = X"}) {
    try {
      Parse(text);
      ADD_FAILURE() << text;
    } catch (const SyntaxError& e) {
      EXPECT_NE(std::string(e.what()).find("kind mismatch"),
                std::string::npos)
          << text << ": " << e.what();
    }
  }
}

TEST(DesugarTest, IndependenceBecomesClosureForm) {
  const Formula d = Desugar(Parse("indep(X1)"));
  EXPECT_EQ(ToString(d),
            "!exists e (!(!(e in X1) | !(cl(X1) = cl(X1 \\ {e}))))");
}

TEST(DesugarTest, UsesOnlyCoreConnectives) {
  std::function<void(const Formula&)> check = [&](const Formula& f) {
    EXPECT_NE(f->kind, Kind::kAnd);
    EXPECT_NE(f->kind, Kind::kImplies);
    EXPECT_NE(f->kind, Kind::kIff);
    EXPECT_NE(f->kind, Kind::kForall);
    EXPECT_NE(f->kind, Kind::kIndep);
    for (const auto& c : f->children) check(c);
  };
  for (const auto& [path, f] : FormulaCorpus()) check(Desugar(f));
}

TEST(NaiveTest, Examples) {
  const Matroid k3 = testing::Triangle(1, 2, 3);
  EXPECT_TRUE(EvalNaive(k3, Parse("is_base({a, b})"),
                        Elements({{"a", 1}, {"b", 2}})));
  EXPECT_FALSE(EvalNaive(k3, Parse("is_base({a})"), Elements({{"a", 1}})));
  const Formula ham = Parse(ReadFile(CorpusPath("formulas/hamiltonian.mso")));
  EXPECT_TRUE(EvalNaive(testing::CompleteGraphK4(), ham));
  EXPECT_FALSE(EvalNaive(testing::PathGraph(4), ham));
  EXPECT_TRUE(EvalNaive(k3, ham));
}

TEST(NaiveTest, CorpusSentencesOnKnownMatroids) {
  const Matroid k4 = testing::CompleteGraphK4();
  const Matroid path = testing::PathGraph(3);
  const Matroid fano = testing::Fano();
  auto eval = [](const Matroid& m, const std::string& name) {
    return EvalNaive(m,
                     Parse(ReadFile(CorpusPath("formulas/" + name + ".mso"))));
  };
  EXPECT_TRUE(eval(k4, "connected"));
  EXPECT_FALSE(eval(path, "connected"));
  EXPECT_TRUE(eval(path, "free"));
  EXPECT_TRUE(eval(path, "has_coloop"));
  EXPECT_FALSE(eval(k4, "has_coloop"));
  EXPECT_TRUE(eval(k4, "has_triangle"));
  EXPECT_TRUE(eval(fano, "has_triangle"));
  EXPECT_TRUE(eval(fano, "simple"));
  EXPECT_FALSE(eval(fano, "rank_exactly_2"));
  EXPECT_TRUE(eval(testing::U24(), "rank_exactly_2"));
  EXPECT_FALSE(eval(testing::U24(), "has_parallel_pair"));
  EXPECT_FALSE(eval(k4, "has_loop"));
  EXPECT_TRUE(eval(UniformMatroid(0, {1, 2}), "has_loop"));
  EXPECT_FALSE(eval(FreeMatroid({1, 2, 3}), "redundant_spanning"));
  EXPECT_TRUE(eval(k4, "redundant_spanning"));
}

TEST(NaiveTest, DesugaringPreservesMeaning) {
  std::mt19937 rng(17);
  const auto corpus = FormulaCorpus();
  for (int trial = 0; trial < 6; ++trial) {
    const Matroid m = testing::RandomLinear(rng, 2 + trial % 2, 3, 5);
    for (const auto& [path, f] : corpus) {
      EXPECT_EQ(EvalNaive(m, f), EvalNaive(m, Desugar(f))) << path;
    }
  }
}

TEST(NaiveTest, BooleanLaws) {
  std::mt19937 rng(5);
  const auto corpus = FormulaCorpus();
  const Matroid m = testing::RandomGraphic(rng, 4, 5);
  for (std::size_t i = 0; i + 1 < corpus.size(); ++i) {
    const Formula& f = corpus[i].second;
    const Formula& g = corpus[i + 1].second;
    const bool a = EvalNaive(m, f), b = EvalNaive(m, g);
    EXPECT_EQ(EvalNaive(m, Not(Not(f))), a);
    EXPECT_EQ(EvalNaive(m, Or(f, g)), a || b);
    EXPECT_EQ(EvalNaive(m, Not(And(f, g))), EvalNaive(m, Or(Not(f), Not(g))));
  }
}

TEST(NaiveTest, RejectsBadAssignments) {
  const Matroid k3 = testing::Triangle(1, 2, 3);
  const Formula f = Parse("x in X");
  EXPECT_THROW(EvalNaive(k3, f, Elements({{"x", 1}})), DomainError);
  Assignment q = Elements({{"x", 1}, {"X", 2}});
  EXPECT_THROW(EvalNaive(k3, f, q), DomainError);
  q["X"] = Value::Set({1, 9});
  EXPECT_THROW(EvalNaive(k3, f, q), DomainError);
  q["X"] = Value::Set({1});
  EXPECT_TRUE(EvalNaive(k3, f, q));
  EXPECT_THROW(EvalNaive(FreeMatroid(ElementSet(std::vector<ElementId>{
                             1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13})),
                         Parse("true")),
               ResourceError);
}

TEST(CompiledTest, HamiltonicityOnCorpus) {
  const Formula ham = Parse(ReadFile(CorpusPath("formulas/hamiltonian.mso")));
  EXPECT_TRUE(EvalDecomposition(LoadTree("k4"), ham));
  EXPECT_TRUE(EvalDecomposition(LoadTree("triangle"), ham));
  EXPECT_FALSE(EvalDecomposition(LoadTree("free4"), ham));
}

TEST(CompiledTest, AgreesWithNaiveOnCorpus) {
  const auto corpus = FormulaCorpus();
  int checked = 0;
  for (const auto& file : CorpusFiles("decompositions")) {
    const AmalgamDecomposition t = DecompositionFromJson(LoadJsonFile(file));
    const Matroid m = Realize(t);
    if (m.size() > 12) continue;
    for (const auto& [path, f] : corpus) {
      EXPECT_EQ(EvalDecomposition(t, f), EvalNaive(m, f))
          << file << " " << path;
      ++checked;
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(CompiledTest, AgreesWithNaiveUnderRandomAssignments) {
  const std::vector<Formula> formulas = {
      Parse("is_circuit(X)"),
      Parse("is_base(X \\ {y})"),
      Parse("x in cl(X \\ {y} + {z})"),
      Parse("indep(X + {x}) <-> !(x in cl(X \\ {x}))"),
      Parse("exists Y (X = Y + {x} & indep(Y))"),
      Parse("cl(X) = cl({x, y})"),
      Parse("forall e (e in X -> e = x | e = y | e in cl(X \\ {e}))"),
  };
  std::mt19937 rng(29);
  for (const auto& file : CorpusFiles("decompositions")) {
    const AmalgamDecomposition t = DecompositionFromJson(LoadJsonFile(file));
    const Matroid m = Realize(t);
    if (m.size() > 10) continue;
    for (const Formula& f : formulas) {
      const CompiledFormula compiled(f);
      for (int trial = 0; trial < 6; ++trial) {
        Assignment q;
        q["X"] = Value::Set(m.ToSet(rng() & m.full_mask()));
        for (const char* v : {"x", "y", "z"}) {
          q[v] = Value::Element(m.element(rng() % m.size()));
        }
        EXPECT_EQ(EvalDecomposition(t, compiled, q), EvalNaive(m, f, q))
            << file << " " << ToString(f);
      }
    }
  }
}

TEST(CompiledTest, NegationComplements) {
  const auto corpus = FormulaCorpus();
  for (const std::string name : {"two_sum_triangles", "u24", "fan4"}) {
    const AmalgamDecomposition t = LoadTree(name);
    for (const auto& [path, f] : corpus) {
      EXPECT_NE(EvalDecomposition(t, Not(f)), EvalDecomposition(t, f));
      EXPECT_EQ(EvalDecomposition(t, Not(Not(f))), EvalDecomposition(t, f));
    }
  }
}

TEST(CompiledTest, DisjunctionStatesBoundedByProduct) {
  const auto corpus = FormulaCorpus();
  const AmalgamDecomposition t = LoadTree("two_sum_triangles");
  for (std::size_t i = 0; i + 1 < corpus.size(); i += 2) {
    const Formula& f = corpus[i].second;
    const Formula& g = corpus[i + 1].second;
    EvalStats sf, sg, sfg;
    const bool a = EvalDecomposition(t, f, {}, {}, &sf);
    const bool b = EvalDecomposition(t, g, {}, {}, &sg);
    EXPECT_EQ(EvalDecomposition(t, Or(f, g), {}, {}, &sfg), a || b);
    EXPECT_LE(sfg.top_states, sf.top_states * sg.top_states);
  }
}

TEST(CompiledTest, ClosureMatchesRealizedMatroid) {
  const CompiledFormula f(Parse("x in cl(X)"));
  std::mt19937 rng(3);
  for (const std::string name :
       {"two_sum_triangles", "k4", "mixed_fields", "two_k4_triangle_deleted",
        "parallel_triangles", "cycle8"}) {
    const AmalgamDecomposition t = LoadTree(name);
    const Matroid m = Realize(t);
    for (int trial = 0; trial < 40; ++trial) {
      const Mask x = rng() & m.full_mask();
      const Mask cl = m.Closure(x);
      for (int i = 0; i < m.size(); ++i) {
        Assignment q;
        q["X"] = Value::Set(m.ToSet(x));
        q["x"] = Value::Element(m.element(i));
        EXPECT_EQ(EvalDecomposition(t, f, q), Contains(cl, i))
            << name << " X=" << m.ToSet(x).ToString() << " x=" << m.element(i);
      }
    }
  }
}

TEST(CompiledTest, MembershipTraceStaysUnplacedUntilHome) {
  const AmalgamDecomposition t = LoadTree("two_sum_triangles");
  const Matroid m = Realize(t);
  const ElementId x = m.element(0);
  Assignment q;
  q["x1"] = Value::Element(x);
  q["X2"] = Value::Set({x});
  EvalStats stats;
  EXPECT_TRUE(EvalDecomposition(t, Parse("x1 in X2"), q, {}, &stats));
  const auto grounds = GroundSets(t);
  ASSERT_EQ(stats.trace.size(), t.nodes.size());
  for (const auto& [node, state] : stats.trace) {
    const bool below = grounds.at(node).contains(x);
    EXPECT_EQ(state, below ? "in" : "unplaced") << node;
  }
  q["X2"] = Value::Set({});
  EXPECT_FALSE(EvalDecomposition(t, Parse("x1 in X2"), q));
}

TEST(MsomTest, Examples) {
  const AmalgamDecomposition t = LoadTree("two_sum_triangles");
  const Matroid m = Realize(t);
  Assignment same;
  same["X1"] = Value::Set(m.ToSet(0b101));
  same["X2"] = Value::Set(m.ToSet(0b101));
  EXPECT_TRUE(Msom(t, Parse("X1 = X2"), same));
  same["X2"] = Value::Set(m.ToSet(0b100));
  EXPECT_FALSE(Msom(t, Parse("X1 = X2"), same));

  const Formula circuit = Parse("is_circuit(X1)");
  ASSERT_EQ(m.size(), 4);
  Assignment q;
  q["X1"] = Value::Set(m.ground_set());
  EXPECT_TRUE(Msom(t, circuit, q));
  q["X1"] = Value::Set(m.ToSet(0b0011));
  EXPECT_FALSE(Msom(t, circuit, q));
}

TEST(MsomTest, RejectsBadAssignments) {
  const AmalgamDecomposition t = LoadTree("triangle");
  const Formula f = Parse("x in X");
  EXPECT_THROW(Msom(t, f, Elements({{"x", 1}})), DomainError);
  Assignment q = Elements({{"x", 999}});
  q["X"] = Value::Set({});
  EXPECT_THROW(Msom(t, f, q), DomainError);
}

TEST(CompiledTest, BudgetExceededNamesSubformula) {
  EvalOptions options;
  options.state_budget = 2;
  try {
    EvalDecomposition(LoadTree("k4"), Parse("exists C is_circuit(C)"), {},
                      options);
    ADD_FAILURE();
  } catch (const ResourceError& e) {
    EXPECT_NE(std::string(e.what()).find("subformula"), std::string::npos);
  }
}

TEST(CompiledTest, LongChain) {
  const AmalgamDecomposition t = DecompositionFromJson(
      LoadJsonFile(CorpusPath("scaling/chain16.json")));
  EXPECT_TRUE(EvalDecomposition(t, Parse("exists C is_circuit(C)")));
  EXPECT_FALSE(EvalDecomposition(t, Parse("exists e (e in cl({}))")));
  EXPECT_TRUE(EvalDecomposition(
      t, Parse(ReadFile(CorpusPath("formulas/connected.mso")))));
}

}  // namespace
}  // namespace amalgam::mso

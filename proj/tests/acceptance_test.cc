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


// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "amalgam/amalgam.h"
#include "amalgam/decomposition.h"
#include "amalgam/errors.h"
#include "amalgam/io.h"
#include "amalgam/matroid.h"
#include "amalgam/mso.h"
#include "amalgam/tutte.h"
#include "test_util.h"

namespace amalgam {
namespace {

using testing::CorpusFiles;
using testing::CorpusPath;
using testing::RunCli;

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

// Collects the first few failure messages of a criterion.
class Check {
 public:
  void Expect(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (messages_.size() < 5) messages_.push_back(what);
  }
  bool ok() const { return failures_ == 0; }
  int checks() const { return checks_; }
  std::string Failures() const {
    std::string out;
    for (const auto& m : messages_) out += "\n    " + m;
    return out;
  }

 private:
  int checks_ = 0;
  int failures_ = 0;
  std::vector<std::string> messages_;
};

std::string Name(const std::string& path) {
  return path.substr(path.find_last_of('/') + 1);
}

AmalgamDecomposition LoadTree(const std::string& path) {
  return DecompositionFromJson(LoadJsonFile(path));
}

std::string ReadText(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// 1. Tutte DP equals subset enumeration through the CLI on every corpus
// decomposition.
std::string TutteOracle(Check& c) {
  const auto start = Clock::now();
  const auto files = CorpusFiles("decompositions");
  int min_size = 1 << 20, max_size = 0, min_width = 1 << 20, max_width = 0;
  for (const auto& f : files) {
    const AmalgamDecomposition t = LoadTree(f);
    const int n = Realize(t).size();
    const int w = Width(t);
    min_size = std::min(min_size, n);
    max_size = std::max(max_size, n);
    min_width = std::min(min_width, w);
    max_width = std::max(max_width, w);
    const auto dp = RunCli("tutte --dp " + f);
    const auto brute = RunCli("tutte --brute " + f);
    c.Expect(dp.exit_code == 0 && brute.exit_code == 0,
             Name(f) + ": exit codes " + std::to_string(dp.exit_code) + "/" +
                 std::to_string(brute.exit_code));
    c.Expect(!dp.out.empty() && dp.out == brute.out,
             Name(f) + ": dp " + dp.out + " brute " + brute.out);
  }
  c.Expect(files.size() >= 15, "corpus has fewer than 15 decompositions");
  c.Expect(min_size <= 3 && max_size >= 14, "realized sizes do not span 3-14");
  c.Expect(min_width <= 1 && max_width >= 6, "widths do not span 1-6");
  const double secs = Seconds(start);
  c.Expect(secs < 120, "took longer than 2 minutes");
  std::ostringstream out;
  out << files.size() << " files, sizes " << min_size << "-" << max_size
      << ", widths " << min_width << "-" << max_width << ", " << secs << " s";
  return out.str();
}

// 2. Known polynomials.
std::string KnownPolynomials(Check& c) {
  const std::string u24 = "x^2 + 2*x + 2*y + y^2";
  const std::string k3 = "x^2 + x + y";
  c.Expect(TutteBruteForce(testing::U24()).ToString() == u24, "U24 brute");
  c.Expect(TutteDecomposition(LoadTree(CorpusPath("decompositions/u24.json")))
                   .ToString() == u24,
           "U24 dp");
  c.Expect(TutteBruteForce(testing::Triangle(1, 2, 3)).ToString() == k3,
           "K3 brute");
  c.Expect(
      TutteDecomposition(LoadTree(CorpusPath("decompositions/triangle.json")))
              .ToString() == k3,
      "K3 dp");
  const Matroid fano = testing::Fano();
  int bases = 0;
  for (Mask x = 0; x <= fano.full_mask(); ++x) {
    if (Popcount(x) == 3 && fano.IsIndependent(x)) ++bases;
  }
  c.Expect(bases == 28, "Fano has " + std::to_string(bases) + " bases");
  c.Expect(TutteBruteForce(fano).Evaluate(1, 1) == 28, "Fano brute T(1,1)");
  const Json j = LoadJsonFile(CorpusPath("branch/fano_gf2.json"));
  const AmalgamDecomposition t = FromBranchDecomposition(
      MatroidFromJson(j["matroid"]), BranchFromJson(j["branch"]));
  c.Expect(TutteDecomposition(t).Evaluate(1, 1) == 28, "Fano dp T(1,1)");
  return "U24, K3 brute and dp; Fano 28 bases";
}

// 3. Generalized parallel connection against the proper amalgam.
std::string AmalgamConstruction(Check& c) {
  int pairs = 0, triples = 0;
  for (const auto& f : CorpusFiles("gpc")) {
    const Json j = LoadJsonFile(f);
    const Matroid m1 = MatroidFromJson(j["m1"]);
    const Matroid m2 = MatroidFromJson(j["m2"]);
    const Matroid gpc = GeneralizedParallelConnection(m1, m2);
    c.Expect(gpc.size() <= 12, Name(f) + ": more than 12 elements");
    const Matroid zeta = ProperAmalgam(m1, m2);
    bool same = gpc.ground_set() == zeta.ground_set();
    for (Mask x = 0; same && x <= gpc.full_mask(); ++x) {
      same = gpc.Rank(x) == zeta.Rank(x);
      if (x == gpc.full_mask()) break;
    }
    c.Expect(same, Name(f) + ": rank formula differs from zeta");
    c.Expect(RestrictionsEqual(gpc, m1, m1.ground_set()) &&
                 RestrictionsEqual(gpc, m2, m2.ground_set()),
             Name(f) + ": restriction property");
    c.Expect(IsProperAmalgam(gpc, m1, m2), Name(f) + ": not proper");
    ++pairs;
  }
  for (const auto& f : CorpusFiles("glue")) {
    const Json j = LoadJsonFile(f);
    const Matroid k = MatroidFromJson(j["K"]);
    const Matroid m1 = MatroidFromJson(j["m1"]);
    const Matroid m2 = MatroidFromJson(j["m2"]);
    const Matroid left = GeneralizedParallelConnection(
        GeneralizedParallelConnection(k, m1), m2);
    const Matroid right = GeneralizedParallelConnection(
        GeneralizedParallelConnection(k, m2), m1);
    c.Expect(SameMatroid(left, right), Name(f) + ": order matters");
    ++triples;
  }
  c.Expect(pairs > 0 && triples > 0, "empty gpc/glue corpus");
  return std::to_string(pairs) + " pairs, " + std::to_string(triples) +
         " triples";
}

// 4. Glue through K = {p} with D = {p} is the 2-sum.
std::string TwoSumRealization(Check& c) {
  int n = 0;
  for (const auto& f : CorpusFiles("two_sum")) {
    const Json j = LoadJsonFile(f);
    const Matroid m1 = MatroidFromJson(j["m1"]);
    const Matroid m2 = MatroidFromJson(j["m2"]);
    const ElementId p = j["p"].get<ElementId>();
    const Matroid k = Restrict(m1, ElementSet{p});
    const Matroid glued = Glue(m1, m2, k, ElementSet{p});
    ElementId fresh = 1;
    for (ElementId e : Union(m1.ground_set(), m2.ground_set())) {
      fresh = std::max(fresh, e + 1);
    }
    const Matroid sum = TwoSum(m1, Relabel(m2, {{p, fresh}}), p, fresh);
    c.Expect(glued.ground_set() == sum.ground_set() &&
                 Circuits(glued) == Circuits(sum),
             Name(f) + ": circuit sets differ");
    ++n;
  }
  c.Expect(n > 0, "empty two_sum corpus");
  return std::to_string(n) + " pairs";
}

// 5. Branch decomposition conversion through the CLI.
std::string ConversionBound(Check& c) {
  int n = 0;
  std::set<int> fields, widths;
  for (const auto& f : CorpusFiles("branch")) {
    const Json j = LoadJsonFile(f);
    const Matroid m = MatroidFromJson(j["matroid"]);
    const BranchDecomposition b = BranchFromJson(j["branch"]);
    const int k = BranchWidthOf(m, b);
    const int p = m.linear()->field;
    const std::string out = testing::TempPath(Name(f));
    const auto r = RunCli("convert " + f + " -o " + out);
    c.Expect(r.exit_code == 0, Name(f) + ": convert exit " +
                                   std::to_string(r.exit_code) + " " + r.err);
    if (r.exit_code != 0) continue;
    const AmalgamDecomposition t = LoadTree(out);
    const ValidationReport report = Validate(t);
    c.Expect(report.valid(), Name(f) + ": " + report.Summary());
    if (!report.valid()) continue;
    c.Expect(SameMatroid(Realize(t), m), Name(f) + ": realization differs");
    const double bound = std::pow(p, (3 * k) / 2);
    c.Expect(report.width <= bound, Name(f) + ": width " +
                                        std::to_string(report.width) +
                                        " above bound");
    fields.insert(p);
    widths.insert(k);
    ++n;
  }
  c.Expect(n >= 5, "fewer than 5 branch decompositions");
  c.Expect(fields.contains(2) && fields.contains(3), "need GF(2) and GF(3)");
  c.Expect(widths.contains(1) && widths.contains(2) && widths.contains(3),
           "need branch widths 1, 2 and 3");
  return std::to_string(n) + " matroids over GF(2)/GF(3), widths 1-3";
}

// 6. to_nice keeps the matroid and at most doubles the width.
std::string NiceTransform(Check& c) {
  int n = 0;
  for (const auto& f : CorpusFiles("decompositions")) {
    const AmalgamDecomposition t = LoadTree(f);
    const AmalgamDecomposition nice = ToNice(t);
    c.Expect(Validate(nice).valid(), Name(f) + ": nice tree invalid");
    c.Expect(IsNice(nice), Name(f) + ": not nice");
    c.Expect(SameMatroid(Realize(nice), Realize(t)),
             Name(f) + ": realization differs");
    c.Expect(Width(nice) <= 2 * Width(t),
             Name(f) + ": width more than doubled");
    ++n;
  }
  return std::to_string(n) + " files";
}

// 7. MSO engines agree through the CLI.
std::string MsoOracle(Check& c) {
  const auto formulas = CorpusFiles("formulas", ".mso");
  c.Expect(formulas.size() >= 10, "fewer than 10 sentences");
  int runs = 0;
  for (const auto& f : CorpusFiles("decompositions")) {
    if (Realize(LoadTree(f)).size() > 12) continue;
    for (const auto& phi : formulas) {
      const auto r = RunCli("mso --engine both --formula " + phi +
                            " --decomposition " + f);
      c.Expect(r.exit_code == 0, Name(f) + " " + Name(phi) + ": exit " +
                                     std::to_string(r.exit_code) + " " +
                                     r.err);
      ++runs;
    }
  }
  const std::string ham = CorpusPath("formulas/hamiltonian.mso");
  const auto k4 = RunCli("--pretty mso --engine both --formula " + ham +
                         " --decomposition " +
                         CorpusPath("decompositions/k4.json"));
  c.Expect(k4.out == "ACCEPT\n", "hamiltonicity on K4: " + k4.out);
  const auto path = RunCli("--pretty mso --engine both --formula " + ham +
                           " --decomposition " +
                           CorpusPath("decompositions/free4.json"));
  c.Expect(path.out == "REJECT\n", "hamiltonicity on a path: " + path.out);
  const mso::Formula h = mso::Parse(ReadText(ham));
  c.Expect(mso::EvalNaive(testing::CompleteGraphK4(), h), "naive K4");
  c.Expect(!mso::EvalNaive(testing::PathGraph(5), h), "naive path");
  return std::to_string(formulas.size()) + " sentences, " +
         std::to_string(runs) + " cross-checked runs";
}

// 8. Tutte DP time on chained triangles; log-log slope.
std::string Scaling(Check& c) {
  std::vector<double> xs, ys;
  std::ostringstream detail;
  for (int n : {8, 16, 32, 64}) {
    const AmalgamDecomposition t = LoadTree(
        CorpusPath("scaling/chain" + std::to_string(n) + ".json"));
    double best = 1e9;
    for (int rep = 0; rep < 5; ++rep) {
      const auto start = Clock::now();
      const TuttePolynomial p = TutteDecomposition(t);
      best = std::min(best, Seconds(start));
      c.Expect(p.Coefficient(0, 1) == 1, "chain" + std::to_string(n));
    }
    xs.push_back(std::log(n));
    ys.push_back(std::log(best));
    detail << "n=" << n << ":" << best * 1000 << "ms ";
  }
  const double mx = (xs[0] + xs[1] + xs[2] + xs[3]) / 4;
  const double my = (ys[0] + ys[1] + ys[2] + ys[3]) / 4;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  const double slope = sxy / sxx;
  c.Expect(slope <= 3.3, "slope " + std::to_string(slope));
  detail << "slope " << slope;
  return detail.str();
}

// 9. Random glue/delete/contract compositions obey the rank axioms.
std::string RankAxiomFuzz(Check& c) {
  std::mt19937 rng(2026);
  auto pick = [&](int n) {
    return std::uniform_int_distribution<int>(0, n - 1)(rng);
  };
  int glues = 0, deletes = 0, contracts = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    Matroid m = pick(2) == 0
                    ? testing::RandomLinear(rng, pick(2) == 0 ? 2 : 3,
                                            2 + pick(3), 3 + pick(4))
                    : testing::RandomGraphic(rng, 3 + pick(2), 3 + pick(4));
    const int steps = 1 + pick(3);
    for (int s = 0; s < steps; ++s) {
      const int op = pick(3);
      if (op == 0 && m.size() >= 1 && m.size() <= 8) {
        // Glue a random matroid along one element through K = M|S.
        ElementSet s_set;
        const ElementId shared = m.element(pick(m.size()));
        s_set.insert(shared);
        for (ElementId e : m.ground_set()) {
          if (pick(4) == 0) s_set.insert(e);
        }
        const Matroid k = Restrict(m, s_set);
        ElementId next = m.ground_set().ids().back() + 1;
        Matroid m2 = testing::RandomLinear(rng, 2 + pick(2), 2 + pick(2),
                                           1 + pick(3), next);
        const ElementId attach = m2.element(0);
        if (m2.IsLoop(attach) != m.IsLoop(shared)) continue;
        m2 = Relabel(m2, {{attach, shared}});
        ElementSet d;
        for (ElementId e : s_set) {
          if (pick(3) == 0) d.insert(e);
        }
        m = Glue(m, m2, k, d);
        ++glues;
      } else if (op == 1 && m.size() >= 2) {
        ElementSet d;
        for (ElementId e : m.ground_set()) {
          if (pick(4) == 0) d.insert(e);
        }
        m = Delete(m, d);
        ++deletes;
      } else if (m.size() >= 2) {
        ElementSet f;
        for (ElementId e : m.ground_set()) {
          if (pick(4) == 0) f.insert(e);
        }
        m = Contract(m, f);
        ++contracts;
      }
      const auto violation = CheckRankAxioms(m);
      c.Expect(!violation, "trial " + std::to_string(trial) + ": " +
                               violation.value_or(""));
      if (m.size() <= 8) {
        const std::string v = testing::AxiomViolation(testing::RankTable(m));
        c.Expect(v.empty(), "trial " + std::to_string(trial) + ": " + v);
      }
      m = m.MaterializeIfSmall();
    }
  }
  return "1000 compositions: " + std::to_string(glues) + " glues, " +
         std::to_string(deletes) + " deletions, " + std::to_string(contracts) +
         " contractions";
}

int Main() {
  struct Criterion {
    const char* name;
    std::function<std::string(Check&)> run;
  };
  const std::vector<Criterion> criteria = {
      {"Tutte oracle equivalence", TutteOracle},
      {"Known polynomials", KnownPolynomials},
      {"Amalgam construction", AmalgamConstruction},
      {"2-sum realization", TwoSumRealization},
      {"Branch conversion bound", ConversionBound},
      {"Nice transform", NiceTransform},
      {"MSO oracle equivalence", MsoOracle},
      {"Tutte DP scaling", Scaling},
      {"Rank-axiom fuzzing", RankAxiomFuzz},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check check;
    std::string detail;
    const auto start = Clock::now();
    try {
      detail = criteria[i].run(check);
    } catch (const std::exception& e) {
      check.Expect(false, std::string("exception: ") + e.what());
    }
    const bool ok = check.ok();
    if (!ok) ++failed;
    std::cout << (ok ? "PASS" : "FAIL") << "  " << (i + 1) << ". "
              << criteria[i].name << " (" << detail << "; " << check.checks()
              << " checks, " << Seconds(start) << " s)"
              << (ok ? "" : check.Failures()) << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size()
            << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}

}  // namespace
}  // namespace amalgam

int main() { return amalgam::Main(); }

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


// Command-line entry point: amalgam <subcommand> [options].

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "amalgam/amalgam.h"
#include "amalgam/decomposition.h"
#include "amalgam/errors.h"
#include "amalgam/io.h"
#include "amalgam/matroid.h"
#include "amalgam/mso.h"
#include "amalgam/tutte.h"

namespace amalgam {
namespace {

constexpr int kOk = 0;
constexpr int kDomain = 1;
constexpr int kResource = 2;
constexpr int kUsage = 3;

class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

struct Options {
  bool pretty = false;
};

void Emit(const Options& o, const Json& j, const std::string& text) {
  if (o.pretty) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  } else {
    std::cout << j.dump() << '\n';
  }
}

void WriteDocument(const Json& j, const std::string& out) {
  if (out.empty()) {
    std::cout << j.dump(1) << '\n';
    return;
  }
  std::ofstream f(out);
  if (!f) throw DomainError("cannot write " + out);
  f << j.dump(1) << '\n';
}

bool IsDecomposition(const Json& j) {
  return j.is_object() && j.contains("nodes");
}

std::string ReadText(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string JoinIds(const ElementSet& s) {
  std::string out;
  for (ElementId e : s) {
    if (!out.empty()) out += ' ';
    out += std::to_string(e);
  }
  return "{" + out + "}";
}

// Matroid from a matroid document, the "matroid" member of a combined
// branch file, or the realization of a decomposition.
Matroid MatroidLike(const Json& j) {
  if (IsDecomposition(j)) return Realize(DecompositionFromJson(j));
  if (j.is_object() && j.contains("matroid") && !j.contains("type")) {
    return MatroidFromJson(j["matroid"]);
  }
  return MatroidFromJson(j);
}

Matroid LoadMatroidLike(const std::string& path) {
  return MatroidLike(LoadJsonFile(path));
}

// ------------------------------------------------------------------ info

int RunInfo(const Options& o, const std::string& path) {
  const Matroid m = LoadMatroidLike(path);
  ElementSet loops, coloops;
  for (ElementId e : m.ground_set()) {
    if (m.IsLoop(e)) loops.insert(e);
    if (m.IsColoop(e)) coloops.insert(e);
  }
  const std::vector<ElementSet> circuits = Circuits(m);
  const std::size_t flats = Flats(m).size();
  Json j;
  j["size"] = m.size();
  j["rank"] = m.rank();
  j["elements"] = ElementSetToJson(m.ground_set());
  j["loops"] = ElementSetToJson(loops);
  j["coloops"] = ElementSetToJson(coloops);
  j["circuits"] = Json::array();
  for (const auto& c : circuits) j["circuits"].push_back(ElementSetToJson(c));
  j["flats"] = flats;
  std::ostringstream text;
  text << "elements: " << m.size() << "\nrank: " << m.rank()
       << "\nloops: " << JoinIds(loops) << "\ncoloops: " << JoinIds(coloops)
       << "\ncircuits: " << circuits.size() << "\n";
  for (const auto& c : circuits) text << "  " << JoinIds(c) << "\n";
  text << "flats: " << flats << "\n";
  Emit(o, j, text.str());
  return kOk;
}

// -------------------------------------------------------------- validate

int RunValidate(const Options& o, const std::string& path) {
  const AmalgamDecomposition t = DecompositionFromJson(LoadJsonFile(path));
  const ValidationReport report = Validate(t);
  Json j;
  j["valid"] = report.valid();
  j["width"] = report.width;
  j["violations"] = Json::array();
  for (const auto& v : report.violations) {
    j["violations"].push_back({{"node", v.node}, {"message", v.message}});
  }
  if (report.valid()) j["nice"] = IsNice(t);
  Emit(o, j, report.Summary());
  if (!report.valid()) {
    for (const auto& v : report.violations) {
      std::cerr << "node " << v.node << ": " << v.message << "\n";
    }
    return kDomain;
  }
  return kOk;
}

// ----------------------------------------------------------------- width

struct BranchInput {
  Matroid matroid;
  BranchDecomposition branch;
};

// A combined {"matroid", "branch"} file, or separate files.
BranchInput LoadBranch(const std::string& combined, const std::string& matroid,
                       const std::string& branch) {
  if (!combined.empty()) {
    const Json j = LoadJsonFile(combined);
    if (!j.contains("matroid") || !j.contains("branch")) {
      throw DomainError(combined +
                        ": expected \"matroid\" and \"branch\" members");
    }
    return {MatroidFromJson(j["matroid"]), BranchFromJson(j["branch"])};
  }
  if (matroid.empty() || branch.empty()) {
    throw UsageError("need a combined file or both --matroid and --branch");
  }
  return {MatroidFromJson(LoadJsonFile(matroid)),
          BranchFromJson(LoadJsonFile(branch))};
}

int RunWidth(const Options& o, const std::string& path,
             const std::string& matroid, const std::string& branch) {
  if (!path.empty() && IsDecomposition(LoadJsonFile(path))) {
    const AmalgamDecomposition t = DecompositionFromJson(LoadJsonFile(path));
    const ValidationReport report = Validate(t);
    if (!report.valid()) throw DomainError(report.Summary());
    Emit(o, Json{{"amalgam_width", report.width}},
         "amalgam width " + std::to_string(report.width));
    return kOk;
  }
  const BranchInput in = LoadBranch(path, matroid, branch);
  const int w = BranchWidthOf(in.matroid, in.branch);
  Emit(o, Json{{"branch_width", w}}, "branch width " + std::to_string(w));
  return kOk;
}

// ------------------------------------------------------- nice / convert

int RunNice(const std::string& path, const std::string& out) {
  const AmalgamDecomposition t = DecompositionFromJson(LoadJsonFile(path));
  const ValidationReport report = Validate(t);
  if (!report.valid()) throw DomainError(report.Summary());
  WriteDocument(DecompositionToJson(ToNice(t)), out);
  return kOk;
}

int RunConvert(const std::string& path, const std::string& matroid,
               const std::string& branch, const std::string& out) {
  const BranchInput in = LoadBranch(path, matroid, branch);
  WriteDocument(DecompositionToJson(
                    FromBranchDecomposition(in.matroid, in.branch)),
                out);
  return kOk;
}

// ----------------------------------------------------------------- tutte

Json CoefficientJson(const BigInt& c) {
  if (c >= std::numeric_limits<std::int64_t>::min() &&
      c <= std::numeric_limits<std::int64_t>::max()) {
    return Json(static_cast<std::int64_t>(c));
  }
  return Json(c.str());
}

Rational ParseRational(const std::string& s) {
  try {
    return Rational(s);
  } catch (const std::exception&) {
    throw UsageError("not a rational number: " + s);
  }
}

int RunTutte(const Options& o, const std::string& path, bool brute, bool dp,
             const std::vector<std::string>& eval) {
  const Json j = LoadJsonFile(path);
  const bool is_tree = IsDecomposition(j);
  if (!brute && !dp) (is_tree ? dp : brute) = true;
  if (dp && !is_tree) {
    throw UsageError("--dp needs a decomposition file");
  }
  std::optional<TuttePolynomial> p_brute, p_dp;
  if (is_tree) {
    const AmalgamDecomposition t = DecompositionFromJson(j);
    if (dp) p_dp = TutteDecomposition(t);
    if (brute) p_brute = TutteBruteForce(Realize(t));
  } else {
    p_brute = TutteBruteForce(MatroidLike(j));
  }
  if (p_brute && p_dp && !(*p_brute == *p_dp)) {
    std::cerr << "engines disagree: brute " << p_brute->ToString() << ", dp "
              << p_dp->ToString() << "\n";
    return kDomain;
  }
  const TuttePolynomial& p = p_dp ? *p_dp : *p_brute;
  Json out;
  out["coeffs"] = Json::array();
  const auto& c = p.coefficients();
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t k = 0; k < c[i].size(); ++k) {
      if (c[i][k] != 0)
        out["coeffs"].push_back({i, k, CoefficientJson(c[i][k])});
    }
  }
  out["text"] = p.ToString();
  std::string text = "T(x,y) = " + p.ToString();
  if (!eval.empty()) {
    const Rational value =
        p.Evaluate(ParseRational(eval[0]), ParseRational(eval[1]));
    out["eval"] = {{"x", eval[0]}, {"y", eval[1]}, {"value", value.str()}};
    text += "\nT(" + eval[0] + "," + eval[1] + ") = " + value.str();
  }
  Emit(o, out, text);
  return kOk;
}

// ------------------------------------------------------------------- mso

mso::Assignment ParseAssignment(const std::string& arg) {
  mso::Assignment q;
  if (arg.empty()) return q;
  const Json j = arg.front() == '{' ? Json::parse(arg) : LoadJsonFile(arg);
  if (!j.is_object()) throw DomainError("assignment must be a JSON object");
  for (const auto& [name, value] : j.items()) {
    if (value.is_array()) {
      q[name] = mso::Value::Set(ElementSetFromJson(value));
    } else if (value.is_number_integer()) {
      q[name] = mso::Value::Element(value.get<ElementId>());
    } else {
      throw DomainError("assignment of '" + name +
                        "' must be an element id or a list of ids");
    }
  }
  return q;
}

const char* Verdict(bool b) { return b ? "ACCEPT" : "REJECT"; }

int RunMso(const Options& o, const std::string& formula_arg,
           const std::string& matroid_path, const std::string& tree_path,
           const std::string& assign, std::string engine, bool dump) {
  if (matroid_path.empty() == tree_path.empty()) {
    throw UsageError("give exactly one of --matroid and --decomposition");
  }
  const std::string text = std::filesystem::is_regular_file(formula_arg)
                               ? ReadText(formula_arg)
                               : formula_arg;
  const mso::Formula f = mso::Parse(text);
  const mso::Assignment q = ParseAssignment(assign);
  if (engine.empty()) engine = tree_path.empty() ? "naive" : "dp";
  if (engine != "naive" && tree_path.empty()) {
    throw UsageError("--engine " + engine + " needs --decomposition");
  }
  Json out;
  out["formula"] = mso::ToString(f);
  std::optional<bool> naive, dp;
  mso::EvalStats stats;
  if (!tree_path.empty()) {
    const AmalgamDecomposition t =
        DecompositionFromJson(LoadJsonFile(tree_path));
    if (engine != "naive") {
      dp = mso::EvalDecomposition(t, f, q, {}, dump ? &stats : nullptr);
    }
    if (engine != "dp") naive = mso::EvalNaive(Realize(t), f, q);
  } else {
    naive = mso::EvalNaive(LoadMatroidLike(matroid_path), f, q);
  }
  if (naive) out["naive"] = Verdict(*naive);
  if (dp) out["dp"] = Verdict(*dp);
  if (naive && dp && *naive != *dp) {
    std::cerr << "engines disagree: naive " << Verdict(*naive) << ", dp "
              << Verdict(*dp) << "\n";
    return kDomain;
  }
  const bool result = dp ? *dp : *naive;
  out["result"] = Verdict(result);
  if (dump) {
    out["states"] = Json::array();
    for (const auto& [sub, count] : stats.states) {
      out["states"].push_back({{"subformula", sub}, {"states", count}});
    }
    out["trace"] = Json::array();
    for (const auto& [node, state] : stats.trace) {
      out["trace"].push_back({{"node", node}, {"state", state}});
    }
  }
  Emit(o, out, Verdict(result));
  return kOk;
}

// ------------------------------------------------------------------ glue

int RunGlue(const std::string& triple, const std::string& k_path,
            const std::string& m1_path, const std::string& m2_path,
            const std::vector<ElementId>& deleted, const std::string& out) {
  std::optional<Matroid> k, m1, m2;
  ElementSet d(deleted);
  if (!triple.empty()) {
    const Json j = LoadJsonFile(triple);
    for (const char* key : {"K", "m1", "m2"}) {
      if (!j.contains(key)) {
        throw DomainError(triple + ": missing \"" + key + "\"");
      }
    }
    k = MatroidFromJson(j["K"]);
    m1 = MatroidFromJson(j["m1"]);
    m2 = MatroidFromJson(j["m2"]);
    if (j.contains("D")) d = Union(d, ElementSetFromJson(j["D"]));
  } else {
    if (k_path.empty() || m1_path.empty() || m2_path.empty()) {
      throw UsageError("need a triple file or all of --k, --m1, --m2");
    }
    k = MatroidFromJson(LoadJsonFile(k_path));
    m1 = MatroidFromJson(LoadJsonFile(m1_path));
    m2 = MatroidFromJson(LoadJsonFile(m2_path));
  }
  WriteDocument(MatroidToJson(Glue(*m1, *m2, *k, d)), out);
  return kOk;
}

int Main(int argc, char** argv) {
  CLI::App app{"Matroid amalgam decompositions: validation, conversion, "
               "Tutte polynomials and MSO model checking."};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--pretty", o.pretty, "Human-readable output instead of JSON");

  std::string file, matroid, branch, out, formula, tree, assign, engine;
  bool brute = false, dp = false, dump = false;
  std::vector<std::string> eval;
  std::vector<ElementId> deleted;
  std::string k_path, m1_path, m2_path;

  auto* info = app.add_subcommand("info", "Summary of a matroid file");
  info->add_option("file", file, "Matroid or decomposition file")->required();

  auto* validate = app.add_subcommand("validate", "Validate a decomposition");
  validate->add_option("file", file, "Decomposition file")->required();

  auto* width = app.add_subcommand("width", "Amalgam or branch width");
  width->add_option("file", file,
                    "Decomposition file or combined matroid+branch file");
  width->add_option("--matroid", matroid, "Matroid file");
  width->add_option("--branch", branch, "Branch decomposition file");

  auto* nice =
      app.add_subcommand("nice", "Emit an equivalent nice decomposition");
  nice->add_option("file", file, "Decomposition file")->required();
  nice->add_option("-o,--output", out, "Output path (default stdout)");

  auto* convert = app.add_subcommand(
      "convert", "Branch decomposition of a linear matroid to a decomposition");
  convert->add_option("file", file, "Combined matroid+branch file");
  convert->add_option("--matroid", matroid, "Linear matroid file");
  convert->add_option("--branch", branch, "Branch decomposition file");
  convert->add_option("-o,--output", out, "Output path (default stdout)");

  auto* tutte = app.add_subcommand("tutte", "Tutte polynomial");
  tutte->add_option("file", file, "Matroid or decomposition file")->required();
  tutte->add_flag("--brute", brute, "Subset enumeration on the matroid");
  tutte->add_flag("--dp", dp, "Dynamic program over the decomposition");
  tutte->add_option("--eval", eval, "Evaluate at x y")->expected(2);

  auto* mso_cmd = app.add_subcommand("mso", "Evaluate an MSO formula");
  mso_cmd->add_option("--formula", formula, "Formula text or file")
      ->required();
  mso_cmd->add_option("--matroid", matroid, "Matroid file");
  mso_cmd->add_option("--decomposition", tree, "Decomposition file");
  mso_cmd->add_option("--assign", assign,
                      "Free variables as JSON object or JSON file");
  mso_cmd->add_option("--engine", engine, "naive, dp or both")
      ->check(CLI::IsMember({"naive", "dp", "both"}));
  mso_cmd->add_flag("--dump-states", dump,
                    "Include per-subformula state counts and the node trace");

  auto* glue = app.add_subcommand("glue", "((K + M1) + M2) minus D");
  glue->add_option("file", file, "File with \"K\", \"m1\", \"m2\" (and \"D\")");
  glue->add_option("--k", k_path, "Glue matroid K");
  glue->add_option("--m1", m1_path, "First matroid");
  glue->add_option("--m2", m2_path, "Second matroid");
  glue->add_option("--delete", deleted, "Elements of D")->delimiter(',');
  glue->add_option("-o,--output", out, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*info) return RunInfo(o, file);
    if (*validate) return RunValidate(o, file);
    if (*width) return RunWidth(o, file, matroid, branch);
    if (*nice) return RunNice(file, out);
    if (*convert) return RunConvert(file, matroid, branch, out);
    if (*tutte) return RunTutte(o, file, brute, dp, eval);
    if (*mso_cmd) {
      return RunMso(o, formula, matroid, tree, assign, engine, dump);
    }
    if (*glue) return RunGlue(file, k_path, m1_path, m2_path, deleted, out);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ResourceError& e) {
    std::cerr << "resource bound: " << e.what() << "\n";
    return kResource;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomain;
  } catch (const Json::exception& e) {
    std::cerr << "error: malformed JSON: " << e.what() << "\n";
    return kDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomain;
  }
  return kUsage;
}

}  // namespace
}  // namespace amalgam

int main(int argc, char** argv) { return amalgam::Main(argc, argv); }

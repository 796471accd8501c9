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

#ifndef AMALGAM_TESTS_TEST_UTIL_H_
#define AMALGAM_TESTS_TEST_UTIL_H_

#include <array>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "amalgam/matroid.h"

namespace amalgam::testing {

// Graphic matroid from (id, u, v) triples.
Matroid GraphicFromEdges(const std::vector<std::array<int, 3>>& edges);

// Triangle on vertices 0,1,2 with edge ids a, b, c.
Matroid Triangle(ElementId a, ElementId b, ElementId c);
// K4 with edge ids first..first+5.
Matroid CompleteGraphK4(ElementId first = 1);
// Four generic vectors of GF(3)^2, ids first..first+3.
Matroid U24(ElementId first = 1);
// All seven nonzero vectors of GF(2)^3; id i has binary expansion i.
Matroid Fano();
// Path graph with `edges` edges, ids first..
Matroid PathGraph(int edges, ElementId first = 1);

Matroid RandomLinear(std::mt19937& rng, int p, int dimension, int elements,
                     ElementId first = 1);
Matroid RandomGraphic(std::mt19937& rng, int vertices, int edges,
                      ElementId first = 1);

// Full rank table of m.
std::vector<int> RankTable(const Matroid& m);

// Exhaustive pairwise submodularity (4^n), independent of CheckRankAxioms.
bool PairwiseSubmodular(const Matroid& m);

// Rank of every subset of a linear matroid by searching for vanishing
// linear combinations; no elimination involved.
std::vector<int> EnumeratedLinearRanks(const Matroid& m);
// Rank of every subset of a graphic matroid as
// |vertices touched| - |components|.
std::vector<int> ComponentGraphicRanks(const Matroid& m);

// Checks r(0) = 0, 0 <= r(F) <= |F|, monotonicity and pairwise
// submodularity over all subsets. Empty string when all hold.
std::string AxiomViolation(const std::vector<int>& ranks);

// Inclusion-minimal dependent sets read off a rank table.
std::set<ElementSet> MinimalDependentSets(const Matroid& m);

// Sorted paths of the files in corpus/<subdir> with the given extension.
std::vector<std::string> CorpusFiles(const std::string& subdir,
                                     const std::string& extension = ".json");
std::string CorpusPath(const std::string& relative);

struct CommandResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};
// Runs the amalgam binary with `args` (shell syntax) and captures output.
CommandResult RunCli(const std::string& args);
// Path of a fresh file under the system temp directory.
std::string TempPath(const std::string& name);

}  // namespace amalgam::testing

#endif  // AMALGAM_TESTS_TEST_UTIL_H_

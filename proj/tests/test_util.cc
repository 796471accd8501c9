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

#include "test_util.h"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include <sys/wait.h>
#include <unistd.h>

namespace amalgam::testing {

Matroid GraphicFromEdges(const std::vector<std::array<int, 3>>& edges) {
  GraphDescription g;
  for (const auto& [id, u, v] : edges) g.edges[id] = {u, v};
  return Matroid::Graphic(std::move(g));
}

Matroid Triangle(ElementId a, ElementId b, ElementId c) {
  return GraphicFromEdges({{a, 0, 1}, {b, 1, 2}, {c, 0, 2}});
}

Matroid CompleteGraphK4(ElementId first) {
  return GraphicFromEdges({{first, 0, 1},
                           {first + 1, 0, 2},
                           {first + 2, 0, 3},
                           {first + 3, 1, 2},
                           {first + 4, 1, 3},
                           {first + 5, 2, 3}});
}

Matroid U24(ElementId first) {
  LinearRepresentation rep{3, 2, {}};
  rep.columns[first] = {1, 0};
  rep.columns[first + 1] = {0, 1};
  rep.columns[first + 2] = {1, 1};
  rep.columns[first + 3] = {1, 2};
  return Matroid::Linear(std::move(rep));
}

Matroid Fano() {
  LinearRepresentation rep{2, 3, {}};
  for (int i = 1; i < 8; ++i)
    rep.columns[i] = {i & 1, (i >> 1) & 1, (i >> 2) & 1};
  return Matroid::Linear(std::move(rep));
}

Matroid PathGraph(int edges, ElementId first) {
  GraphDescription g;
  for (int i = 0; i < edges; ++i) g.edges[first + i] = {i, i + 1};
  return Matroid::Graphic(std::move(g));
}

Matroid RandomLinear(std::mt19937& rng, int p, int dimension, int elements,
                     ElementId first) {
  LinearRepresentation rep{p, dimension, {}};
  std::uniform_int_distribution<int> coeff(0, p - 1);
  for (int i = 0; i < elements; ++i) {
    FieldVector v(dimension);
    for (int& x : v) x = coeff(rng);
    rep.columns[first + i] = v;
  }
  return Matroid::Linear(std::move(rep));
}

Matroid RandomGraphic(std::mt19937& rng, int vertices, int edges,
                      ElementId first) {
  GraphDescription g;
  std::uniform_int_distribution<int> vertex(0, vertices - 1);
  for (int i = 0; i < edges; ++i)
    g.edges[first + i] = {vertex(rng), vertex(rng)};
  return Matroid::Graphic(std::move(g));
}

std::vector<int> RankTable(const Matroid& m) {
  std::vector<int> out(std::size_t{1} << m.size());
  for (Mask x = 0; x < out.size(); ++x) out[x] = m.Rank(x);
  return out;
}

bool PairwiseSubmodular(const Matroid& m) {
  const auto r = RankTable(m);
  for (Mask a = 0; a < r.size(); ++a) {
    for (Mask b = 0; b < r.size(); ++b) {
      if (r[a | b] + r[a & b] > r[a] + r[b]) return false;
    }
  }
  return true;
}

std::vector<int> EnumeratedLinearRanks(const Matroid& m) {
  const LinearRepresentation& rep = *m.linear();
  const int n = m.size();
  const int p = rep.field;
  std::vector<bool> independent(std::size_t{1} << n, true);
  for (Mask s = 1; s < independent.size(); ++s) {
    std::vector<int> idx;
    for (int i = 0; i < n; ++i) {
      if (Contains(s, i)) {
        idx.push_back(i);
        if (!independent[s & ~Bit(i)]) independent[s] = false;
      }
    }
    if (!independent[s]) continue;
    // Try every coefficient vector with all entries nonzero.
    std::vector<int> coeff(idx.size(), 1);
    while (true) {
      FieldVector sum(rep.dimension, 0);
      for (std::size_t k = 0; k < idx.size(); ++k) {
        const FieldVector& col = rep.columns.at(m.element(idx[k]));
        for (int r = 0; r < rep.dimension; ++r) {
          sum[r] = (sum[r] + coeff[k] * col[r]) % p;
        }
      }
      if (std::all_of(sum.begin(), sum.end(), [](int x) { return x == 0; })) {
        independent[s] = false;
        break;
      }
      std::size_t k = 0;
      while (k < coeff.size() && coeff[k] == p - 1) coeff[k++] = 1;
      if (k == coeff.size()) break;
      ++coeff[k];
    }
  }
  std::vector<int> ranks(independent.size(), 0);
  for (Mask s = 0; s < ranks.size(); ++s) {
    for (Mask t = s;; t = (t - 1) & s) {
      if (independent[t]) ranks[s] = std::max(ranks[s], Popcount(t));
      if (t == 0) break;
    }
  }
  return ranks;
}

std::vector<int> ComponentGraphicRanks(const Matroid& m) {
  const GraphDescription& g = *m.graph();
  const int n = m.size();
  std::vector<int> ranks(std::size_t{1} << n);
  for (Mask s = 0; s < ranks.size(); ++s) {
    std::map<int, int> parent;
    std::function<int(int)> find = [&](int v) {
      return parent[v] == v ? v : parent[v] = find(parent[v]);
    };
    for (int i = 0; i < n; ++i) {
      if (!Contains(s, i)) continue;
      const auto [u, v] = g.edges.at(m.element(i));
      parent.try_emplace(u, u);
      parent.try_emplace(v, v);
    }
    int components = static_cast<int>(parent.size());
    for (int i = 0; i < n; ++i) {
      if (!Contains(s, i)) continue;
      const auto [u, v] = g.edges.at(m.element(i));
      const int a = find(u), b = find(v);
      if (a != b) {
        parent[a] = b;
        --components;
      }
    }
    ranks[s] = static_cast<int>(parent.size()) - components;
  }
  return ranks;
}

std::string AxiomViolation(const std::vector<int>& r) {
  if (r.empty() || r[0] != 0) return "rank of empty set is not 0";
  for (Mask a = 0; a < r.size(); ++a) {
    if (r[a] < 0 || r[a] > Popcount(a)) {
      return "rank out of range at mask " + std::to_string(a);
    }
    for (Mask b = 0; b < r.size(); ++b) {
      if (IsSubset(a, b) && r[a] > r[b]) {
        return "not monotone at " + std::to_string(a);
      }
      if (r[a | b] + r[a & b] > r[a] + r[b]) {
        return "not submodular at " + std::to_string(a) + ", " +
               std::to_string(b);
      }
    }
  }
  return "";
}

std::set<ElementSet> MinimalDependentSets(const Matroid& m) {
  const auto r = RankTable(m);
  std::set<ElementSet> out;
  for (Mask s = 0; s < r.size(); ++s) {
    if (r[s] == Popcount(s)) continue;
    bool minimal = true;
    for (int i = 0; i < m.size() && minimal; ++i) {
      if (Contains(s, i) && r[s & ~Bit(i)] < Popcount(s) - 1) minimal = false;
    }
    if (minimal) out.insert(m.ToSet(s));
  }
  return out;
}

std::string CorpusPath(const std::string& relative) {
  return std::string(AMALGAM_CORPUS_DIR) + "/" + relative;
}

std::vector<std::string> CorpusFiles(const std::string& subdir,
                                     const std::string& extension) {
  std::vector<std::string> out;
  for (const auto& entry :
       std::filesystem::directory_iterator(CorpusPath(subdir))) {
    if (entry.path().extension() == extension) out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string TempPath(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() /
                   ("amalgam_test_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return dir / name;
}

CommandResult RunCli(const std::string& args) {
  static int counter = 0;
  const std::string stem = "cmd" + std::to_string(++counter);
  const std::string out = TempPath(stem + ".out");
  const std::string err = TempPath(stem + ".err");
  const std::string command = std::string(AMALGAM_CLI) + " " + args + " >" +
                              out + " 2>" + err;
  const int status = std::system(command.c_str());
  auto slurp = [](const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  CommandResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

}  // namespace amalgam::testing

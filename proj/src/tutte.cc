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

#include "amalgam/tutte.h"

#include <algorithm>
#include <bit>

#include "amalgam/errors.h"
#include "amalgam/types.h"

namespace amalgam {
namespace {

using Grid = std::vector<std::vector<BigInt>>;

BigInt Binomial(int n, int k) {
  BigInt out = 1;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

void Trim(Grid& g) {
  for (auto& row : g) {
    while (!row.empty() && row.back() == 0) row.pop_back();
  }
  while (!g.empty() && g.back().empty()) g.pop_back();
}

BigInt& At(Grid& g, int i, int j) {
  if (static_cast<int>(g.size()) <= i) g.resize(i + 1);
  if (static_cast<int>(g[i].size()) <= j) g[i].resize(j + 1);
  return g[i][j];
}

std::string Monomial(int i, int j) {
  std::string out;
  auto power = [&](const char* var, int e) {
    if (e == 0) return;
    if (!out.empty()) out += "*";
    out += var;
    if (e > 1) out += "^" + std::to_string(e);
  };
  power("x", i);
  power("y", j);
  return out;
}

}  // namespace

TuttePolynomial TuttePolynomial::FromWhitney(Grid w) {
  TuttePolynomial p;
  for (std::size_t a = 0; a < w.size(); ++a) {
    for (std::size_t b = 0; b < w[a].size(); ++b) {
      if (w[a][b] == 0) continue;
      for (std::size_t i = 0; i <= a; ++i) {
        const BigInt ca = Binomial(a, i) * ((a - i) % 2 ? -1 : 1);
        for (std::size_t j = 0; j <= b; ++j) {
          const BigInt cb = Binomial(b, j) * ((b - j) % 2 ? -1 : 1);
          At(p.coeffs_, i, j) += w[a][b] * ca * cb;
        }
      }
    }
  }
  Trim(w);
  Trim(p.coeffs_);
  p.whitney_ = std::move(w);
  return p;
}

TuttePolynomial TuttePolynomial::FromRankSizeCounts(const Grid& counts,
                                                    int rank) {
  Grid w;
  for (std::size_t r = 0; r < counts.size(); ++r) {
    for (std::size_t s = 0; s < counts[r].size(); ++s) {
      if (counts[r][s] != 0) At(w, rank - r, s - r) += counts[r][s];
    }
  }
  return FromWhitney(std::move(w));
}

BigInt TuttePolynomial::Coefficient(int i, int j) const {
  if (i < 0 || j < 0 || i >= static_cast<int>(coeffs_.size()) ||
      j >= static_cast<int>(coeffs_[i].size())) {
    return 0;
  }
  return coeffs_[i][j];
}

Rational TuttePolynomial::Evaluate(const Rational& x, const Rational& y) const {
  Rational total = 0;
  Rational xi = 1;
  for (const auto& row : coeffs_) {
    Rational yj = 1;
    for (const BigInt& c : row) {
      total += Rational(c) * xi * yj;
      yj *= y;
    }
    xi *= x;
  }
  return total;
}

std::string TuttePolynomial::ToString() const {
  std::string out;
  for (int i = static_cast<int>(coeffs_.size()) - 1; i >= 0; --i) {
    for (std::size_t j = 0; j < coeffs_[i].size(); ++j) {
      const BigInt& c = coeffs_[i][j];
      if (c == 0) continue;
      const std::string mono = Monomial(i, j);
      const bool negative = c < 0;
      const BigInt mag = negative ? BigInt(-c) : c;
      if (!out.empty()) out += negative ? " - " : " + ";
      else if (negative) out += "-";
      if (mono.empty()) {
        out += mag.str();
      } else {
        if (mag != 1) out += mag.str() + "*";
        out += mono;
      }
    }
  }
  return out.empty() ? "0" : out;
}

TuttePolynomial TutteBruteForce(const Matroid& m) {
  RequireWithinLimit(m.size(), 20, "brute-force Tutte polynomial");
  const Matroid table = m.size() <= Matroid::kMaxTableElements
                            ? m.Materialize()
                            : m;
  const int rank = table.rank();
  Grid counts;
  for (Mask x = 0;; ++x) {
    At(counts, table.Rank(x), Popcount(x)) += 1;
    if (x == table.full_mask()) break;
  }
  return TuttePolynomial::FromRankSizeCounts(counts, rank);
}

namespace {

struct Signature {
  Mask trace = 0;
  std::vector<std::int8_t> offsets;

  friend auto operator<=>(const Signature&, const Signature&) = default;
};

using CountTable = std::map<Signature, Grid>;

std::vector<int> Widen(const std::vector<std::int8_t>& v) {
  return std::vector<int>(v.begin(), v.end());
}

std::vector<std::int8_t> Narrow(const std::vector<int>& v) {
  return std::vector<std::int8_t>(v.begin(), v.end());
}

Grid Convolve(const Grid& a, const Grid& b) {
  Grid out;
  for (std::size_t r1 = 0; r1 < a.size(); ++r1) {
    for (std::size_t s1 = 0; s1 < a[r1].size(); ++s1) {
      if (a[r1][s1] == 0) continue;
      for (std::size_t r2 = 0; r2 < b.size(); ++r2) {
        for (std::size_t s2 = 0; s2 < b[r2].size(); ++s2) {
          if (b[r2][s2] == 0) continue;
          At(out, r1 + r2, s1 + s2) += a[r1][s1] * b[r2][s2];
        }
      }
    }
  }
  return out;
}

void AddShifted(Grid& target, const Grid& src, int dr, int ds) {
  for (std::size_t r = 0; r < src.size(); ++r) {
    for (std::size_t s = 0; s < src[r].size(); ++s) {
      if (src[r][s] != 0) At(target, r + dr, s + ds) += src[r][s];
    }
  }
}

CountTable LeafTable(const DecompositionNode& n, const ElementSet& boundary,
                     const ElementSet& alive) {
  CountTable out;
  std::vector<ElementSet> tracked = {ElementSet()};
  for (ElementId e : n.k.ground_set()) {
    if (alive.contains(e)) tracked.push_back(ElementSet{e});
  }
  for (const ElementSet& x : tracked) {
    const ExtendedType e = ExtendedTypeOf(n.k, boundary, x);
    At(out[Signature{e.trace, Narrow(e.offsets)}], e.rank,
       static_cast<int>(x.size())) += 1;
  }
  return out;
}

}  // namespace

TuttePolynomial TutteDecomposition(const AmalgamDecomposition& input,
                                   TutteDpStats* stats) {
  const ValidationReport report = Validate(input);
  if (!report.valid()) {
    throw DomainError("invalid decomposition: node " +
                      report.violations[0].node + ": " +
                      report.violations[0].message);
  }
  const AmalgamDecomposition t = IsNice(input) ? input : ToNice(input);
  if (const std::string bad = NonLocalBoundary(t); !bad.empty()) {
    throw DomainError("dynamic program needs local boundaries: " + bad);
  }
  const auto boundary = Boundaries(t);
  const auto alive = Survivors(t);
  std::map<NodeId, CountTable> tables;
  TutteDpStats local;
  for (const NodeId& v : PostOrder(t)) {
    const DecompositionNode& n = t.nodes.at(v);
    ++local.nodes;
    if (n.is_leaf()) {
      tables[v] = LeafTable(n, boundary.at(v), alive.at(v));
    } else {
      const NodeJoiner joiner(n.k, n.j1, n.j2, boundary.at(v));
      const Mask fresh_all = n.k.ToMask(Intersection(
          Difference(n.k.ground_set(), Union(n.j1, n.j2)), alive.at(v)));
      CountTable out;
      const CountTable& t1 = tables.at(n.children[0]);
      const CountTable& t2 = tables.at(n.children[1]);
      for (const auto& [sig1, c1] : t1) {
        const std::vector<int> g1 = Widen(sig1.offsets);
        for (const auto& [sig2, c2] : t2) {
          const std::vector<int> g2 = Widen(sig2.offsets);
          const Grid both = Convolve(c1, c2);
          for (Mask s = fresh_all;; s = (s - 1) & fresh_all) {
            const auto r = joiner.Combine(g1, sig1.trace, g2, sig2.trace, s);
            AddShifted(out[Signature{r.trace, Narrow(r.offsets)}], both,
                       r.rank_increase, Popcount(s));
            if (s == 0) break;
          }
        }
      }
      tables[v] = std::move(out);
      tables.erase(n.children[0]);
      tables.erase(n.children[1]);
    }
    local.max_signatures = std::max(local.max_signatures, tables[v].size());
    local.total_entries += tables[v].size();
  }
  Grid counts;
  for (const auto& [sig, grid] : tables.at(t.root))
    AddShifted(counts, grid, 0, 0);
  Trim(counts);
  int rank = 0;
  for (std::size_t r = 0; r < counts.size(); ++r) {
    if (!counts[r].empty()) rank = static_cast<int>(r);
  }
  if (stats) *stats = local;
  return TuttePolynomial::FromRankSizeCounts(counts, rank);
}

}  // namespace amalgam

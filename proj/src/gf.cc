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

#include "amalgam/gf.h"

#include <algorithm>
#include <cassert>
#include <utility>

namespace amalgam {

bool IsSupportedPrime(int p) { return p == 2 || p == 3 || p == 5 || p == 7; }

int InverseMod(int a, int p) {
  assert(a % p != 0);
  for (int x = 1; x < p; ++x) {
    if (a * x % p == 1) return x;
  }
  return 0;
}

int VectorRank(const std::vector<FieldVector>& vectors, int p) {
  if (vectors.empty()) return 0;
  std::vector<FieldVector> m = vectors;
  const int cols = static_cast<int>(m[0].size());
  int rank = 0;
  for (int c = 0; c < cols && rank < static_cast<int>(m.size()); ++c) {
    int pivot = -1;
    for (int r = rank; r < static_cast<int>(m.size()); ++r) {
      if (m[r][c] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(m[rank], m[pivot]);
    const int inv = InverseMod(m[rank][c], p);
    for (int k = c; k < cols; ++k) m[rank][k] = m[rank][k] * inv % p;
    for (int r = rank + 1; r < static_cast<int>(m.size()); ++r) {
      const int f = m[r][c];
      if (f == 0) continue;
      for (int k = c; k < cols; ++k) {
        m[r][k] = ((m[r][k] - f * m[rank][k]) % p + p) % p;
      }
    }
    ++rank;
  }
  return rank;
}

Subspace::Subspace(int p, int dimension) : p_(p), d_(dimension) {}

Subspace Subspace::Span(int p, int dimension,
                        const std::vector<FieldVector>& vectors) {
  Subspace s(p, dimension);
  for (const FieldVector& v : vectors) s.Insert(v);
  return s;
}

FieldVector Subspace::Reduce(FieldVector v) const {
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const int c = pivots_[i];
    const int f = v[c];
    if (f == 0) continue;
    for (int k = 0; k < d_; ++k) {
      v[k] = ((v[k] - f * basis_[i][k]) % p_ + p_) % p_;
    }
  }
  return v;
}

void Subspace::Insert(FieldVector v) {
  v = Reduce(std::move(v));
  int c = 0;
  while (c < d_ && v[c] == 0) ++c;
  if (c == d_) return;
  const int inv = InverseMod(v[c], p_);
  for (int& x : v) x = x * inv % p_;
  // Clear column c from the existing rows to stay reduced.
  for (FieldVector& row : basis_) {
    const int f = row[c];
    if (f == 0) continue;
    for (int k = 0; k < d_; ++k) {
      row[k] = ((row[k] - f * v[k]) % p_ + p_) % p_;
    }
  }
  auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), c);
  const auto idx = pos - pivots_.begin();
  pivots_.insert(pos, c);
  basis_.insert(basis_.begin() + idx, std::move(v));
}

bool Subspace::Contains(const FieldVector& v) const {
  const FieldVector r = Reduce(v);
  return std::all_of(r.begin(), r.end(), [](int x) { return x == 0; });
}

Subspace Subspace::Sum(const Subspace& other) const {
  Subspace s = *this;
  for (const FieldVector& v : other.basis_) s.Insert(v);
  return s;
}

Subspace Subspace::Intersect(const Subspace& other) const {
  // Zassenhaus: rows (a | a) for a in this basis, (b | 0) for b in the
  // other; rows of the echelon form whose left half vanishes span the
  // intersection in their right half.
  Subspace big(p_, 2 * d_);
  for (const FieldVector& a : basis_) {
    FieldVector row(2 * d_);
    std::copy(a.begin(), a.end(), row.begin());
    std::copy(a.begin(), a.end(), row.begin() + d_);
    big.Insert(std::move(row));
  }
  for (const FieldVector& b : other.basis_) {
    FieldVector row(2 * d_, 0);
    std::copy(b.begin(), b.end(), row.begin());
    big.Insert(std::move(row));
  }
  Subspace out(p_, d_);
  for (std::size_t i = 0; i < big.basis_.size(); ++i) {
    if (big.pivots_[i] < d_) continue;
    out.Insert(FieldVector(big.basis_[i].begin() + d_, big.basis_[i].end()));
  }
  return out;
}

std::vector<FieldVector> Subspace::Enumerate() const {
  std::vector<FieldVector> out;
  const int k = dimension();
  std::vector<int> coeff(k, 0);
  while (true) {
    FieldVector v(d_, 0);
    for (int i = 0; i < k; ++i) {
      if (coeff[i] == 0) continue;
      for (int c = 0; c < d_; ++c) v[c] = (v[c] + coeff[i] * basis_[i][c]) % p_;
    }
    out.push_back(std::move(v));
    int i = k - 1;
    while (i >= 0 && coeff[i] == p_ - 1) coeff[i--] = 0;
    if (i < 0) break;
    ++coeff[i];
  }
  return out;
}

std::int64_t VectorIndex(const FieldVector& v, int p) {
  std::int64_t idx = 0;
  for (auto it = v.rbegin(); it != v.rend(); ++it) idx = idx * p + *it;
  return idx;
}

}  // namespace amalgam

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

#ifndef AMALGAM_GF_H_
#define AMALGAM_GF_H_

#include <cstdint>
#include <vector>

namespace amalgam {

// Vectors over GF(p) with entries in [0, p).
using FieldVector = std::vector<int>;

bool IsSupportedPrime(int p);

// Modular inverse of a nonzero residue.
int InverseMod(int a, int p);

// Rank of the given vectors (all of the same dimension) over GF(p).
int VectorRank(const std::vector<FieldVector>& vectors, int p);

// Linear subspace of GF(p)^d kept as a reduced row echelon basis.
class Subspace {
 public:
  Subspace(int p, int dimension);

  static Subspace Span(int p, int dimension,
                       const std::vector<FieldVector>& vectors);

  int field() const { return p_; }
  int ambient_dimension() const { return d_; }
  int dimension() const { return static_cast<int>(basis_.size()); }
  const std::vector<FieldVector>& basis() const { return basis_; }

  bool Contains(const FieldVector& v) const;
  Subspace Sum(const Subspace& other) const;
  Subspace Intersect(const Subspace& other) const;

  // All p^dimension vectors, zero first, in lexicographic order of the
  // coefficient tuples over the basis.
  std::vector<FieldVector> Enumerate() const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.p_ == b.p_ && a.d_ == b.d_ && a.basis_ == b.basis_;
  }

 private:
  // Reduces v against the basis; returns the residual.
  FieldVector Reduce(FieldVector v) const;
  void Insert(FieldVector v);

  int p_;
  int d_;
  std::vector<FieldVector> basis_;  // RREF rows
  std::vector<int> pivots_;
};

// Index of v as a base-p number, least significant coordinate first.
std::int64_t VectorIndex(const FieldVector& v, int p);

}  // namespace amalgam

#endif  // AMALGAM_GF_H_

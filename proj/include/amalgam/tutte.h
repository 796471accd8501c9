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

#ifndef AMALGAM_TUTTE_H_
#define AMALGAM_TUTTE_H_

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "amalgam/decomposition.h"
#include "amalgam/matroid.h"

namespace amalgam {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

class TuttePolynomial {
 public:
  TuttePolynomial() = default;

  // From w[a][b], the coefficient of (x-1)^a (y-1)^b.
  static TuttePolynomial FromWhitney(std::vector<std::vector<BigInt>> w);
  // Sum over (rank, size) counts of subsets of a matroid of rank `rank`.
  static TuttePolynomial FromRankSizeCounts(
      const std::vector<std::vector<BigInt>>& counts, int rank);

  // c[i][j] is the coefficient of x^i y^j.
  const std::vector<std::vector<BigInt>>& coefficients() const {
    return coeffs_;
  }
  const std::vector<std::vector<BigInt>>& whitney() const { return whitney_; }
  BigInt Coefficient(int i, int j) const;

  Rational Evaluate(const Rational& x, const Rational& y) const;

  // "x^2 + 2*x*y + y", or "0".
  std::string ToString() const;

  friend bool operator==(const TuttePolynomial& a, const TuttePolynomial& b) {
    return a.coeffs_ == b.coeffs_;
  }

 private:
  std::vector<std::vector<BigInt>> whitney_;
  std::vector<std::vector<BigInt>> coeffs_;
};

// Sum over all subsets; ResourceError above 20 elements.
TuttePolynomial TutteBruteForce(const Matroid& m);

struct TutteDpStats {
  int nodes = 0;
  std::size_t max_signatures = 0;  // largest per-node table
  std::size_t total_entries = 0;
};

// Count-table dynamic program over the decomposition. Trees that are not
// nice are passed through ToNice first. DomainError for invalid trees or
// boundaries outside K(v).
TuttePolynomial TutteDecomposition(const AmalgamDecomposition& t,
                                   TutteDpStats* stats = nullptr);

}  // namespace amalgam

#endif  // AMALGAM_TUTTE_H_

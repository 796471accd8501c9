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

#ifndef AMALGAM_AMALGAM_H_
#define AMALGAM_AMALGAM_H_

#include <string>
#include <vector>

#include "amalgam/element_set.h"
#include "amalgam/errors.h"
#include "amalgam/matroid.h"

namespace amalgam {

// Raised when zeta is not submodular; carries a violating pair (F, G) with
// zeta(F u G) + zeta(F n G) > zeta(F) + zeta(G).
class NoProperAmalgam : public DomainError {
 public:
  NoProperAmalgam(ElementSet f, ElementSet g);
  const ElementSet& f() const { return f_; }
  const ElementSet& g() const { return g_; }

 private:
  ElementSet f_;
  ElementSet g_;
};

// X must be a flat of m (DomainError otherwise).
bool IsModularFlat(const Matroid& m, const ElementSet& x);
bool IsModularFlat(const Matroid& m, Mask x, const std::vector<Mask>& flats);

bool IsModularSemiflat(const Matroid& m, const ElementSet& t);

// eta(X) = r1(X n E1) + r2(X n E2) - r(X n T), with T = E1 n E2.
int Eta(const Matroid& m1, const Matroid& m2, const ElementSet& x);
// min eta(Y) over all Y containing X, by direct enumeration.
int Zeta(const Matroid& m1, const Matroid& m2, const ElementSet& x);

// The matroid on E1 u E2 with rank function zeta; NoProperAmalgam if zeta
// is not submodular.
Matroid ProperAmalgam(const Matroid& m1, const Matroid& m2);

// Whether m (an amalgam of m1 and m2) satisfies r(F) = r(F n E1) +
// r(F n E2) - r(F n T) on every flat F.
bool IsProperAmalgam(const Matroid& m, const Matroid& m1, const Matroid& m2);

// Generalized parallel connection of m1 and m2 along T = E1 n E2, which
// must be a modular semiflat of m1. Ranks and closures follow the closed
// formulas with X_i = cl_i(X n E_i) u X:
//   cl(X) = cl_1(X_2 n E_1) u cl_2(X_1 n E_2)
//   r(X)  = r_1(X_2 n E_1) + r_2(X_1 n E_2) - r(T n (X_1 u X_2)).
// The result is evaluated lazily.
Matroid GeneralizedParallelConnection(const Matroid& m1, const Matroid& m2);
// Same construction without checking the modular semiflat precondition.
Matroid GeneralizedParallelConnectionUnchecked(const Matroid& m1,
                                               const Matroid& m2);

// Names of the violated glue preconditions, empty when all hold.
std::vector<std::string> GluePreconditionViolations(const Matroid& m1,
                                                    const Matroid& m2,
                                                    const Matroid& k,
                                                    const ElementSet& d);

// ((K (+)_{J1} M1) (+)_{J2} M2) \ D, where J_i = E(M_i) n E(K).
// PreconditionError lists every violated precondition.
Matroid Glue(const Matroid& m1, const Matroid& m2, const Matroid& k,
             const ElementSet& d);

}  // namespace amalgam

#endif  // AMALGAM_AMALGAM_H_

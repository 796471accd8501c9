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

#ifndef AMALGAM_IO_H_
#define AMALGAM_IO_H_

#include <string>

#include <nlohmann/json.hpp>

#include "amalgam/decomposition.h"
#include "amalgam/matroid.h"

namespace amalgam {

using Json = nlohmann::ordered_json;

// Reads and parses a JSON file; DomainError on I/O or syntax problems.
Json LoadJsonFile(const std::string& path);

Matroid MatroidFromJson(const Json& j);
// Linear and graphic matroids keep their description; anything else is
// written as an explicit rank table.
Json MatroidToJson(const Matroid& m);

AmalgamDecomposition DecompositionFromJson(const Json& j);
Json DecompositionToJson(const AmalgamDecomposition& t);

BranchDecomposition BranchFromJson(const Json& j);
Json BranchToJson(const BranchDecomposition& b);

Json ElementSetToJson(const ElementSet& s);
ElementSet ElementSetFromJson(const Json& j);

}  // namespace amalgam

#endif  // AMALGAM_IO_H_

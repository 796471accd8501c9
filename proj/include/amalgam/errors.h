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

#ifndef AMALGAM_ERRORS_H_
#define AMALGAM_ERRORS_H_

#include <stdexcept>
#include <string>

namespace amalgam {

// Input violates a mathematical requirement (unknown element, bad
// precondition, invalid tree). Maps to CLI exit code 1.
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// A named precondition of an operation does not hold.
class PreconditionError : public DomainError {
 public:
  explicit PreconditionError(const std::string& what) : DomainError(what) {}
};

// A brute-force or compilation bound was exceeded. Maps to exit code 2.
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what)
      : std::runtime_error(what) {}
};

// Formula text could not be parsed; `position` is a byte offset.
class SyntaxError : public DomainError {
 public:
  SyntaxError(const std::string& what, std::size_t position)
      : DomainError(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

}  // namespace amalgam

#endif  // AMALGAM_ERRORS_H_

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

#ifndef AMALGAM_ELEMENT_SET_H_
#define AMALGAM_ELEMENT_SET_H_

#include <algorithm>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace amalgam {

using ElementId = int;

// Subset of a matroid's ground set, as bits over the matroid's sorted
// element order. Ground sets are limited to 64 elements.
using Mask = std::uint64_t;

inline constexpr int kMaxGroundSet = 64;

inline int Popcount(Mask m) { return std::popcount(m); }
inline Mask Bit(int i) { return Mask{1} << i; }
inline bool Contains(Mask m, int i) { return (m >> i) & 1; }
inline bool IsSubset(Mask a, Mask b) { return (a & ~b) == 0; }
inline Mask FullMask(int n) { return n >= 64 ? ~Mask{0} : Bit(n) - 1; }

// Sorted, duplicate-free list of element ids.
class ElementSet {
 public:
  ElementSet() = default;
  ElementSet(std::initializer_list<ElementId> ids) : ids_(ids) { Normalize(); }
  explicit ElementSet(std::vector<ElementId> ids) : ids_(std::move(ids)) {
    Normalize();
  }

  const std::vector<ElementId>& ids() const { return ids_; }
  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  auto begin() const { return ids_.begin(); }
  auto end() const { return ids_.end(); }

  bool contains(ElementId e) const {
    return std::binary_search(ids_.begin(), ids_.end(), e);
  }
  void insert(ElementId e) {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), e);
    if (it == ids_.end() || *it != e) ids_.insert(it, e);
  }
  void erase(ElementId e) {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), e);
    if (it != ids_.end() && *it == e) ids_.erase(it);
  }

  bool IsSubsetOf(const ElementSet& other) const {
    return std::includes(other.ids_.begin(), other.ids_.end(), ids_.begin(),
                         ids_.end());
  }

  friend ElementSet Union(const ElementSet& a, const ElementSet& b) {
    ElementSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                   std::back_inserter(out.ids_));
    return out;
  }
  friend ElementSet Intersection(const ElementSet& a, const ElementSet& b) {
    ElementSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                          std::back_inserter(out.ids_));
    return out;
  }
  friend ElementSet Difference(const ElementSet& a, const ElementSet& b) {
    ElementSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out.ids_));
    return out;
  }

  friend bool operator==(const ElementSet&, const ElementSet&) = default;
  friend auto operator<=>(const ElementSet&, const ElementSet&) = default;

  // "{1, 2, 5}"
  std::string ToString() const;

 private:
  void Normalize() {
    std::sort(ids_.begin(), ids_.end());
    ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
  }

  std::vector<ElementId> ids_;
};

}  // namespace amalgam

#endif  // AMALGAM_ELEMENT_SET_H_

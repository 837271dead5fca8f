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

#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "lwca/common.hpp"

namespace lwca {

// A subset of an item universe {0..m-1}, held as a bitmask. Carries the
// universe size so that operations across mismatched universes are caught.
struct ItemSet {
  std::uint32_t bits = 0;
  int universe = 0;

  ItemSet() = default;

  ItemSet(std::uint32_t mask, int m) : bits(mask), universe(m) {
    require(m >= 0 && m <= kMaxItems, "ItemSet: universe size out of range");
    require(m == kMaxItems || (mask >> m) == 0,
            "ItemSet: member outside universe");
  }

  static ItemSet empty(int m) { return ItemSet(0, m); }

  static ItemSet full(int m) {
    return ItemSet(m == 0 ? 0u : (m == 32 ? ~0u : ((1u << m) - 1u)), m);
  }

  static ItemSet of(std::initializer_list<int> items, int m) {
    std::uint32_t mask = 0;
    for (int j : items) {
      require(j >= 0 && j < m, "ItemSet: member outside universe");
      mask |= (1u << j);
    }
    return ItemSet(mask, m);
  }

  bool contains(int j) const { return j >= 0 && j < universe && (bits >> j) & 1u; }
  int size() const { return std::popcount(bits); }
  bool is_empty() const { return bits == 0; }

  ItemSet with(int j) const {
    require(j >= 0 && j < universe, "ItemSet: member outside universe");
    return ItemSet(bits | (1u << j), universe);
  }
  ItemSet without(int j) const { return ItemSet(bits & ~(1u << j), universe); }

  ItemSet unite(const ItemSet& o) const {
    require(universe == o.universe, "ItemSet: universe mismatch");
    return ItemSet(bits | o.bits, universe);
  }
  ItemSet intersect(const ItemSet& o) const {
    require(universe == o.universe, "ItemSet: universe mismatch");
    return ItemSet(bits & o.bits, universe);
  }
  ItemSet minus(const ItemSet& o) const {
    require(universe == o.universe, "ItemSet: universe mismatch");
    return ItemSet(bits & ~o.bits, universe);
  }
  bool subset_of(const ItemSet& o) const {
    require(universe == o.universe, "ItemSet: universe mismatch");
    return (bits & ~o.bits) == 0;
  }

  std::vector<int> members() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (std::uint32_t b = bits; b != 0; b &= b - 1)
      out.push_back(std::countr_zero(b));
    return out;
  }

  std::string str() const {
    std::string s = "{";
    bool first = true;
    for (int j : members()) {
      if (!first) s += ",";
      s += std::to_string(j);
      first = false;
    }
    return s + "}";
  }

  friend bool operator==(const ItemSet& a, const ItemSet& b) {
    return a.bits == b.bits && a.universe == b.universe;
  }
  friend bool operator!=(const ItemSet& a, const ItemSet& b) { return !(a == b); }
};

// Lexicographic order on the ascending member list: {0,3} precedes {1,2}.
// Used as the final demand-query tie-break.
inline bool lex_less(std::uint32_t a, std::uint32_t b) {
  while (a != 0 && b != 0) {
    int la = std::countr_zero(a);
    int lb = std::countr_zero(b);
    if (la != lb) return la < lb;
    a &= a - 1;
    b &= b - 1;
  }
  return a == 0 && b != 0;
}

// Visits every submask of `mask`, including 0 and `mask` itself.
template <typename Fn>
inline void for_each_subset(std::uint32_t mask, Fn&& fn) {
  std::uint32_t sub = mask;
  while (true) {
    fn(sub);
    if (sub == 0) break;
    sub = (sub - 1) & mask;
  }
}

}  // namespace lwca

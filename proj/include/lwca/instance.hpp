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

#include <utility>
#include <vector>

#include "lwca/common.hpp"
#include "lwca/valuation.hpp"

namespace lwca {

struct Bidder {
  Valuation valuation;
  double budget = 0.0;

  Bidder(Valuation v, double b) : valuation(std::move(v)), budget(b) {
    require(b >= 0.0, "Bidder: negative budget");
  }

  friend bool operator==(const Bidder& a, const Bidder& b) {
    return a.budget == b.budget && a.valuation == b.valuation;
  }
};

// The bidder's valuation capped at its budget. Idempotent when the valuation
// is already capped at exactly the budget.
inline Valuation liquid(const Bidder& b) {
  if (b.valuation.kind() == Valuation::Kind::Capped &&
      b.valuation.cap() == b.budget) {
    return b.valuation;
  }
  return Valuation::capped(b.valuation, b.budget);
}

inline double liquid_value(const Bidder& b, const ItemSet& s) {
  return std::min(b.valuation.value(s), b.budget);
}

struct Instance {
  int m = 0;
  std::vector<Bidder> bidders;

  Instance(int items, std::vector<Bidder> bs)
      : m(items), bidders(std::move(bs)) {
    require(m >= 1 && m <= kMaxItems, "Instance: item count out of range");
    require(!bidders.empty(), "Instance: needs at least one bidder");
    for (const auto& b : bidders)
      require(b.valuation.item_count() == m,
              "Instance: bidder valuation universe mismatch");
  }

  int n() const { return static_cast<int>(bidders.size()); }

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.m == b.m && a.bidders == b.bidders;
  }
};

// A copy of `inst` keeping only the listed bidders, in the given order.
inline Instance subset_instance(const Instance& inst,
                                const std::vector<int>& keep) {
  std::vector<Bidder> bs;
  bs.reserve(keep.size());
  for (int i : keep) {
    require(i >= 0 && i < inst.n(), "subset_instance: bidder index out of range");
    bs.push_back(inst.bidders[static_cast<std::size_t>(i)]);
  }
  return Instance(inst.m, std::move(bs));
}

}  // namespace lwca

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

#include <cstdint>
#include <limits>
#include <vector>

#include "lwca/common.hpp"
#include "lwca/instance.hpp"
#include "lwca/item_set.hpp"
#include "lwca/valuation.hpp"

namespace lwca {

// Per-item nonnegative posted prices; the price of a bundle is the sum over
// its members.
struct PriceVector {
  std::vector<double> prices;

  PriceVector() = default;
  explicit PriceVector(std::vector<double> p) : prices(std::move(p)) {
    for (double x : prices) require(x >= 0.0, "PriceVector: negative price");
  }

  static PriceVector uniform(int m, double p) {
    return PriceVector(std::vector<double>(static_cast<std::size_t>(m), p));
  }
  static PriceVector zero(int m) { return uniform(m, 0.0); }

  int size() const { return static_cast<int>(prices.size()); }
  double operator[](int j) const { return prices[static_cast<std::size_t>(j)]; }

  double bundle(const ItemSet& s) const {
    require(s.universe == size(), "PriceVector: universe mismatch");
    double total = 0.0;
    for (std::uint32_t b = s.bits; b != 0; b &= b - 1)
      total += prices[static_cast<std::size_t>(std::countr_zero(b))];
    return total;
  }

  friend bool operator==(const PriceVector& a, const PriceVector& b) {
    return a.prices == b.prices;
  }
};

// Counts oracle calls made during a run. dq/bcdq count queries; value_count
// counts the set-function evaluations they spent.
struct QueryCounter {
  std::uint64_t dq_count = 0;
  std::uint64_t bcdq_count = 0;
  std::uint64_t value_count = 0;

  void add(const QueryCounter& o) {
    dq_count += o.dq_count;
    bcdq_count += o.bcdq_count;
    value_count += o.value_count;
  }
};

namespace detail {

// Shared enumeration core for both demand queries. Ties within kTol resolve
// to the smaller cardinality, then the lexicographically smallest member
// list, so identical inputs always yield identical bundles.
inline ItemSet best_bundle(const Valuation& v, const ItemSet& avail,
                           const PriceVector& p, double budget,
                           QueryCounter* qc) {
  require(avail.universe == v.item_count(), "demand query: universe mismatch");
  require(avail.universe == p.size(), "demand query: price vector mismatch");
  require(avail.size() <= kMaxItems, "demand query: availability too large");

  std::uint32_t best = 0;
  double best_utility = 0.0;  // empty set: value 0, price 0
  bool have = false;
  for_each_subset(avail.bits, [&](std::uint32_t sub) {
    ItemSet s(sub, avail.universe);
    double price = p.bundle(s);
    if (price > budget + kTol) return;
    double utility = v.value(s) - price;
    if (qc != nullptr) ++qc->value_count;
    if (!have) {
      best = sub;
      best_utility = utility;
      have = true;
      return;
    }
    if (utility > best_utility + kTol) {
      best = sub;
      best_utility = utility;
    } else if (utility >= best_utility - kTol) {
      int c = std::popcount(sub), bc = std::popcount(best);
      if (c < bc || (c == bc && lex_less(sub, best))) {
        best = sub;
        best_utility = utility;
      }
    }
  });
  // The empty set is always affordable, so a bundle is always found and its
  // utility is never below zero by more than the tie tolerance.
  return ItemSet(best, avail.universe);
}

}  // namespace detail

// The bundle S <= avail maximizing v(S) - p(S).
inline ItemSet demand_query(const Valuation& v, const ItemSet& avail,
                            const PriceVector& p, QueryCounter* qc = nullptr) {
  if (qc != nullptr) ++qc->dq_count;
  return detail::best_bundle(v, avail, p,
                             std::numeric_limits<double>::infinity(), qc);
}

// The bundle S <= avail maximizing v(S) - p(S) subject to p(S) <= budget.
inline ItemSet bc_demand_query(const Valuation& v, const ItemSet& avail,
                               const PriceVector& p, double budget,
                               QueryCounter* qc = nullptr) {
  require(budget >= 0.0, "bc_demand_query: negative budget");
  if (qc != nullptr) ++qc->bcdq_count;
  return detail::best_bundle(v, avail, p, budget, qc);
}

// Outcome of checking, against every T <= avail, the two efficiency
// guarantees of the bundle S returned by the budget-constrained demand
// query under the liquid valuation min{v, B}:
//   (i)  lv(S) >= lv(T) - p(T)
//   (ii) 2*lv(S) - p(S) >= lv(T) - p(T)
struct BcdqLemmaReport {
  bool pass = true;
  ItemSet chosen;
  std::uint32_t witness_t = 0;
  int failed_inequality = 0;  // 1 or 2 when pass is false
  double lhs = 0.0;
  double rhs = 0.0;
};

inline BcdqLemmaReport verify_bcdq_lemma(const Valuation& v, double budget,
                                         const ItemSet& avail,
                                         const PriceVector& p) {
  require(avail.size() <= 16, "verify_bcdq_lemma: availability too large");
  BcdqLemmaReport r;
  r.chosen = bc_demand_query(v, avail, p, budget);
  auto lv = [&](const ItemSet& s) { return std::min(v.value(s), budget); };
  double lv_s = lv(r.chosen);
  double p_s = p.bundle(r.chosen);
  for_each_subset(avail.bits, [&](std::uint32_t t) {
    if (!r.pass) return;
    ItemSet ts(t, avail.universe);
    double rhs = lv(ts) - p.bundle(ts);
    if (lv_s + kTol < rhs) {
      r.pass = false;
      r.witness_t = t;
      r.failed_inequality = 1;
      r.lhs = lv_s;
      r.rhs = rhs;
      return;
    }
    if (2.0 * lv_s - p_s + kTol < rhs) {
      r.pass = false;
      r.witness_t = t;
      r.failed_inequality = 2;
      r.lhs = 2.0 * lv_s - p_s;
      r.rhs = rhs;
    }
  });
  return r;
}

}  // namespace lwca

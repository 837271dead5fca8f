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

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "lwca/engine.hpp"
#include "lwca/instance.hpp"

namespace lwca {

enum class Objective { Sw, Lw };

struct OptResult {
  double value = 0.0;
  std::vector<ItemSet> allocation;
  Objective objective = Objective::Lw;
};

// Exact welfare optimum by enumerating every item -> (bidder | unassigned)
// assignment map. Maps are scanned in lexicographic item-major order with
// bidders before "unassigned" per digit, and only strictly better maps
// replace the incumbent, so ties resolve to the lexicographically smallest
// map. Rejects instances where (n+1)^m would exceed the enumeration cap.
inline OptResult opt_welfare(const Instance& inst, Objective objective) {
  const int n = inst.n();
  const int m = inst.m;
  {
    double maps = std::pow(static_cast<double>(n) + 1.0, m);
    require(maps <= static_cast<double>(kMaxOptMaps),
            "opt_welfare: instance too large for exact enumeration");
  }

  auto eval = [&](int i, std::uint32_t mask) {
    const Bidder& b = inst.bidders[static_cast<std::size_t>(i)];
    double v = b.valuation.value(ItemSet(mask, m));
    return objective == Objective::Lw ? std::min(v, b.budget) : v;
  };

  // Per-bidder value tables over all 2^m subsets keep the scan cheap; for
  // large universes fall back to direct evaluation to bound memory.
  const bool use_table = m <= 16;
  std::vector<std::vector<double>> table;
  if (use_table) {
    table.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      auto& t = table[static_cast<std::size_t>(i)];
      t.resize(1u << m);
      for (std::uint32_t s = 0; s < (1u << m); ++s) t[s] = eval(i, s);
    }
  }

  std::vector<int> digits(static_cast<std::size_t>(m), 0);  // 0..n-1 bidder, n = unassigned
  std::vector<std::uint32_t> best_masks(static_cast<std::size_t>(n), 0);
  double best = -1.0;
  std::vector<std::uint32_t> masks(static_cast<std::size_t>(n));
  while (true) {
    std::fill(masks.begin(), masks.end(), 0u);
    for (int j = 0; j < m; ++j) {
      int d = digits[static_cast<std::size_t>(j)];
      if (d < n) masks[static_cast<std::size_t>(d)] |= (1u << j);
    }
    double total = 0.0;
    for (int i = 0; i < n; ++i)
      total += use_table
                   ? table[static_cast<std::size_t>(i)][masks[static_cast<std::size_t>(i)]]
                   : eval(i, masks[static_cast<std::size_t>(i)]);
    if (total > best) {
      best = total;
      best_masks = masks;
    }
    // Advance the odometer; item 0 is the most significant digit.
    int j = m - 1;
    while (j >= 0 && digits[static_cast<std::size_t>(j)] == n) {
      digits[static_cast<std::size_t>(j)] = 0;
      --j;
    }
    if (j < 0) break;
    ++digits[static_cast<std::size_t>(j)];
  }

  OptResult r;
  r.value = best;
  r.objective = objective;
  r.allocation.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    r.allocation.emplace_back(best_masks[static_cast<std::size_t>(i)], m);
  return r;
}

// The per-item contribution of each allocated item to its winner's bundle
// value: the item's weight in the winner's representative clause (the
// prefix-capped liquid clause when `liquid_prices` is set). Unallocated
// items get price zero, and the prices sum to the allocation's (liquid)
// welfare.
inline PriceVector supporting_prices(const Instance& inst,
                                     const std::vector<ItemSet>& alloc,
                                     bool liquid_prices) {
  require(static_cast<int>(alloc.size()) == inst.n(),
          "supporting_prices: allocation/instance mismatch");
  std::vector<double> q(static_cast<std::size_t>(inst.m), 0.0);
  ItemSet seen = ItemSet::empty(inst.m);
  for (int i = 0; i < inst.n(); ++i) {
    const auto& s = alloc[static_cast<std::size_t>(i)];
    require(s.universe == inst.m, "supporting_prices: universe mismatch");
    require(s.intersect(seen).is_empty(),
            "supporting_prices: allocation not disjoint");
    seen = seen.unite(s);
    if (s.is_empty()) continue;
    const Bidder& b = inst.bidders[static_cast<std::size_t>(i)];
    AdditiveClause clause =
        liquid_prices ? liquid_xos_clause(b.valuation, b.budget, s)
                      : representative_clause(b.valuation, s);
    for (int j : s.members())
      q[static_cast<std::size_t>(j)] = clause.weights[static_cast<std::size_t>(j)];
  }
  return PriceVector(std::move(q));
}

// Verifies that `prices` support `alloc` in the strong-profitability sense:
// for every winner i and every T inside its bundle, min{v_i(T), B_i} >= p(T).
// Throws with a witness when support fails, since the halved-price auction
// bound below is meaningless without it.
struct FixedPriceReport {
  bool pass = false;
  double auction_lw = 0.0;
  double supported_price_sum = 0.0;  // sum of p_j over allocated items
  double slack = 0.0;                // auction_lw - supported_price_sum / 4
  Outcome auction;
};

inline void verify_strong_profitability(const Instance& inst,
                                        const std::vector<ItemSet>& alloc,
                                        const PriceVector& prices) {
  for (int i = 0; i < inst.n(); ++i) {
    const auto& s = alloc[static_cast<std::size_t>(i)];
    require(s.size() <= 12,
            "fixed-price check: allocated bundle too large for exhaustive support check");
    const Bidder& b = inst.bidders[static_cast<std::size_t>(i)];
    bool ok = true;
    std::uint32_t witness = 0;
    for_each_subset(s.bits, [&](std::uint32_t t) {
      if (!ok) return;
      ItemSet ts(t, inst.m);
      if (liquid_value(b, ts) + kTol < prices.bundle(ts)) {
        ok = false;
        witness = t;
      }
    });
    if (!ok) {
      throw std::invalid_argument(
          "fixed-price check: prices do not support the allocation; bidder " +
          std::to_string(i) + " undervalues T=" + ItemSet(witness, inst.m).str());
    }
  }
}

// Runs the fixed-price auction at half the supporting prices (budget-
// constrained demand queries, caller-chosen arrival order, no updates) and
// checks that its liquid welfare reaches a quarter of the supported price
// mass.
inline FixedPriceReport check_fixed_price_lemma(const Instance& inst,
                                                const std::vector<ItemSet>& alloc,
                                                const PriceVector& prices,
                                                const std::vector<int>& order) {
  require(prices.size() == inst.m, "fixed-price check: price vector mismatch");
  verify_strong_profitability(inst, alloc, prices);

  double supported_sum = 0.0;
  for (const auto& s : alloc) supported_sum += prices.bundle(s);

  std::vector<double> halved(static_cast<std::size_t>(inst.m));
  for (int j = 0; j < inst.m; ++j) halved[static_cast<std::size_t>(j)] = prices[j] / 2.0;

  PostedPriceConfig cfg;
  cfg.order = order.empty() ? identity_order(inst.n()) : order;
  cfg.init = PriceVector(std::move(halved));
  cfg.q = 1.0;
  CoinStream coins(0);
  FixedPriceReport r;
  r.auction = run_posted_price(inst, cfg, coins);
  r.auction_lw = outcome_welfare(inst, r.auction).lw;
  r.supported_price_sum = supported_sum;
  r.slack = r.auction_lw - supported_sum / 4.0;
  r.pass = r.slack >= -kTol;
  return r;
}

}  // namespace lwca

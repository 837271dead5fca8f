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

#include <functional>
#include <numeric>
#include <vector>

#include "lwca/coin_stream.hpp"
#include "lwca/demand.hpp"
#include "lwca/instance.hpp"

namespace lwca {

// One sequential step of a posted-price run: the arriving bidder, the price
// snapshot it faced, its provisional demand, the coin, and what it actually
// received and paid.
struct TraceStep {
  int bidder = -1;
  PriceVector prices;
  ItemSet provisional;
  bool coin_win = false;
  ItemSet allocated;
  double payment = 0.0;
};

struct Outcome {
  bool overselling = false;
  std::vector<ItemSet> allocation;  // per bidder; disjoint unless overselling
  std::vector<double> payments;
  std::vector<TraceStep> trace;
  PriceVector final_prices;
  QueryCounter queries;

  // Copies of each item handed out; at most 1 per item unless overselling.
  std::vector<int> copy_counts() const {
    if (allocation.empty()) return {};
    std::vector<int> copies(
        static_cast<std::size_t>(allocation.front().universe), 0);
    for (const auto& s : allocation)
      for (int j : s.members()) ++copies[static_cast<std::size_t>(j)];
    return copies;
  }
};

// Maps (current prices, provisional demand) to updated prices. Must be
// nondecreasing per item; the engine verifies that after every call.
using PriceUpdate = std::function<void(PriceVector&, const ItemSet&)>;

inline PriceUpdate no_price_update() { return nullptr; }

// Doubles the price of every item in the provisional demand.
inline PriceUpdate doubling_price_update() {
  return [](PriceVector& p, const ItemSet& s) {
    for (int j : s.members()) p.prices[static_cast<std::size_t>(j)] *= 2.0;
  };
}

struct PostedPriceConfig {
  std::vector<int> order;  // distinct bidder indices; unlisted bidders sit out
  PriceVector init;
  double q = 1.0;
  PriceUpdate update;  // null = prices never change
  bool overselling = false;
  // Variant for experiments: only update prices when the coin allocates.
  // The default updates on the provisional demand regardless of the coin,
  // which keeps the price trajectory independent of allocation randomness.
  bool update_only_on_allocation = false;
};

inline std::vector<int> identity_order(int n) {
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  return order;
}

// Runs the sequential posted-price auction: bidders arrive in the given
// order, each answers a budget-constrained demand query against the items
// still available at the current prices, the coin decides whether the
// provisional bundle is actually allocated (and, outside overselling mode,
// removed), and the price-update rule fires on the provisional demand.
// Winners pay the posted price of their bundle at arrival time.
inline Outcome run_posted_price(const Instance& inst,
                                const PostedPriceConfig& cfg,
                                CoinStream& coins) {
  require(cfg.q > 0.0 && cfg.q <= 1.0, "run_posted_price: q outside (0,1]");
  require(!cfg.overselling || cfg.q == 1.0,
          "run_posted_price: overselling requires q = 1");
  require(cfg.init.size() == inst.m, "run_posted_price: price vector mismatch");
  {
    std::vector<bool> seen(static_cast<std::size_t>(inst.n()), false);
    for (int i : cfg.order) {
      require(i >= 0 && i < inst.n(), "run_posted_price: bad bidder index");
      require(!seen[static_cast<std::size_t>(i)],
              "run_posted_price: duplicate bidder in order");
      seen[static_cast<std::size_t>(i)] = true;
    }
  }

  Outcome out;
  out.overselling = cfg.overselling;
  out.allocation.assign(static_cast<std::size_t>(inst.n()),
                        ItemSet::empty(inst.m));
  out.payments.assign(static_cast<std::size_t>(inst.n()), 0.0);

  PriceVector prices = cfg.init;
  ItemSet avail = ItemSet::full(inst.m);
  for (int i : cfg.order) {
    const Bidder& bidder = inst.bidders[static_cast<std::size_t>(i)];
    TraceStep step;
    step.bidder = i;
    step.prices = prices;
    step.provisional =
        bc_demand_query(bidder.valuation, avail, prices, bidder.budget,
                        &out.queries);
    step.coin_win = coins.flip(cfg.q);
    if (step.coin_win) {
      step.allocated = step.provisional;
      step.payment = prices.bundle(step.provisional);
      out.allocation[static_cast<std::size_t>(i)] = step.provisional;
      out.payments[static_cast<std::size_t>(i)] = step.payment;
      if (!cfg.overselling) avail = avail.minus(step.provisional);
    } else {
      step.allocated = ItemSet::empty(inst.m);
    }
    if (cfg.update && (!cfg.update_only_on_allocation || step.coin_win)) {
      PriceVector before = prices;
      cfg.update(prices, step.provisional);
      require(prices.size() == inst.m, "run_posted_price: update resized prices");
      for (int j = 0; j < inst.m; ++j)
        if (prices[j] < before[j])
          throw std::logic_error("run_posted_price: price update decreased a price");
    }
    out.trace.push_back(std::move(step));
  }
  out.final_prices = prices;
  return out;
}

struct WelfareSummary {
  double sw = 0.0;
  double lw = 0.0;
  double revenue = 0.0;
};

inline WelfareSummary outcome_welfare(const Instance& inst, const Outcome& o) {
  require(static_cast<int>(o.allocation.size()) == inst.n(),
          "outcome_welfare: allocation/instance mismatch");
  require(o.payments.size() == o.allocation.size(),
          "outcome_welfare: payments/allocation mismatch");
  WelfareSummary w;
  for (int i = 0; i < inst.n(); ++i) {
    const auto& s = o.allocation[static_cast<std::size_t>(i)];
    require(s.universe == inst.m, "outcome_welfare: allocation universe mismatch");
    const Bidder& b = inst.bidders[static_cast<std::size_t>(i)];
    double v = b.valuation.value(s);
    w.sw += v;
    w.lw += std::min(v, b.budget);
    w.revenue += o.payments[static_cast<std::size_t>(i)];
  }
  return w;
}

// Liquid welfare of an arbitrary allocation.
inline double allocation_lw(const Instance& inst,
                            const std::vector<ItemSet>& alloc) {
  require(static_cast<int>(alloc.size()) == inst.n(),
          "allocation_lw: allocation/instance mismatch");
  double lw = 0.0;
  for (int i = 0; i < inst.n(); ++i)
    lw += liquid_value(inst.bidders[static_cast<std::size_t>(i)],
                       alloc[static_cast<std::size_t>(i)]);
  return lw;
}

}  // namespace lwca

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

// Why budget-constrained demand queries, not demand queries on the capped
// valuation: a two-item walk-through where the two disagree and only the
// budget-constrained answer keeps the bidder happy.

#include <cstdio>

#include "lwca/demand.hpp"
#include "lwca/generators.hpp"

int main() {
  using namespace lwca;

  Instance demo = footnote_demo_instance();
  const Bidder& bidder = demo.bidders[0];
  PriceVector prices = footnote_demo_prices();
  ItemSet everything = ItemSet::full(demo.m);

  std::printf("bidder: v({a})=%g v({b})=%g v({a,b})=%g, budget %g\n",
              bidder.valuation.value(ItemSet::of({0}, 2)),
              bidder.valuation.value(ItemSet::of({1}, 2)),
              bidder.valuation.value(everything), bidder.budget);
  std::printf("posted prices: p_a=%g p_b=%g\n\n", prices[0], prices[1]);

  Valuation capped = liquid(bidder);
  ItemSet liquid_pick = demand_query(capped, everything, prices);
  std::printf("demand query on the capped valuation buys %s (liquid utility %g)\n",
              liquid_pick.str().c_str(),
              capped.value(liquid_pick) - prices.bundle(liquid_pick));

  ItemSet bc_pick =
      bc_demand_query(bidder.valuation, everything, prices, bidder.budget);
  std::printf("budget-constrained demand query buys %s (true utility %g)\n\n",
              bc_pick.str().c_str(),
              bidder.valuation.value(bc_pick) - prices.bundle(bc_pick));

  auto lemma = verify_bcdq_lemma(bidder.valuation, bidder.budget, everything,
                                 prices);
  std::printf("efficiency guarantees vs every alternative bundle: %s\n",
              lemma.pass ? "hold" : "violated");
  return lemma.pass ? 0 : 1;
}

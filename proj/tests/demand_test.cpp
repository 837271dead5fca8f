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

#include "lwca/demand.hpp"

#include <gtest/gtest.h>

#include "lwca/generators.hpp"

namespace lwca {
namespace {

TEST(PriceVector, BundlePriceSumsMembers) {
  PriceVector p({1.0, 2.0, 4.0});
  EXPECT_DOUBLE_EQ(p.bundle(ItemSet::of({0, 2}, 3)), 5.0);
  EXPECT_DOUBLE_EQ(p.bundle(ItemSet::empty(3)), 0.0);
  EXPECT_THROW(PriceVector({-1.0}), std::invalid_argument);
}

TEST(DemandQuery, PicksUtilityMaximizingBundle) {
  // Additive (5,1) at prices (1,2): {0} gives 4, {0,1} gives 3.
  Valuation v = Valuation::additive({5, 1});
  ItemSet s = demand_query(v, ItemSet::full(2), PriceVector({1, 2}));
  EXPECT_EQ(s, ItemSet::of({0}, 2));
}

TEST(DemandQuery, EmptyAvailabilityReturnsEmpty) {
  Valuation v = Valuation::additive({5, 1});
  EXPECT_EQ(demand_query(v, ItemSet::empty(2), PriceVector({1, 2})),
            ItemSet::empty(2));
}

TEST(DemandQuery, FootnoteLiquidValuationBuysItemB) {
  Instance demo = footnote_demo_instance();
  Valuation lv = liquid(demo.bidders[0]);
  ItemSet s = demand_query(lv, ItemSet::full(2), footnote_demo_prices());
  EXPECT_EQ(s, ItemSet::of({1}, 2));
}

TEST(DemandQuery, TieBreaksToSmallerCardinalityThenLex) {
  // All bundles have utility 0: the empty set wins.
  Valuation v = Valuation::additive({2, 1, 1});
  ItemSet s = demand_query(v, ItemSet::full(3), PriceVector({2, 1, 1}));
  EXPECT_EQ(s, ItemSet::empty(3));

  // Capped at 2 with prices (1,1): {0} and {1} both give utility 1; the
  // lexicographically smaller member list wins.
  Valuation cap = Valuation::capped(Valuation::additive({2, 2}), 2.0);
  ItemSet t = demand_query(cap, ItemSet::full(2), PriceVector({1, 1}));
  EXPECT_EQ(t, ItemSet::of({0}, 2));
}

TEST(BcDemandQuery, FootnoteBidderBuysItemA) {
  Instance demo = footnote_demo_instance();
  const Bidder& b = demo.bidders[0];
  ItemSet s = bc_demand_query(b.valuation, ItemSet::full(2),
                              footnote_demo_prices(), b.budget);
  EXPECT_EQ(s, ItemSet::of({0}, 2));
}

TEST(BcDemandQuery, ZeroBudgetBuysNothingAtPositivePrices) {
  Valuation v = Valuation::additive({5, 5});
  EXPECT_EQ(bc_demand_query(v, ItemSet::full(2), PriceVector({1, 1}), 0.0),
            ItemSet::empty(2));
}

TEST(BcDemandQuery, SlackBudgetMatchesUnconstrainedQuery) {
  GenParams params;
  params.m = 5;
  params.n = 1;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Instance inst = gen_instance(InstanceFamily::Xos, params, seed);
    const Valuation& v = inst.bidders[0].valuation;
    PriceVector p = PriceVector::uniform(5, 2.0);
    EXPECT_EQ(bc_demand_query(v, ItemSet::full(5), p, 1e6),
              demand_query(v, ItemSet::full(5), p));
  }
}

TEST(BcDemandQuery, OutputIsAffordableAndOptimal) {
  GenParams params;
  params.m = 6;
  params.n = 1;
  params.budget_lo = 1.0;
  params.budget_hi = 10.0;
  CoinStream coins(99);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Instance inst = gen_instance(InstanceFamily::Coverage, params, seed);
    const Bidder& b = inst.bidders[0];
    std::vector<double> prices(6);
    for (double& x : prices) x = coins.grid_uniform(0.0, 4.0);
    PriceVector p(std::move(prices));
    ItemSet s = bc_demand_query(b.valuation, ItemSet::full(6), p, b.budget);

    EXPECT_LE(p.bundle(s), b.budget + kTol);
    // Affordability under the liquid valuation.
    EXPECT_GE(liquid_value(b, s), p.bundle(s) - kTol);
    // Weak dominance over every budget-feasible subset.
    double best = b.valuation.value(s) - p.bundle(s);
    for_each_subset(ItemSet::full(6).bits, [&](std::uint32_t t) {
      ItemSet ts(t, 6);
      if (p.bundle(ts) > b.budget + kTol) return;
      EXPECT_LE(b.valuation.value(ts) - p.bundle(ts), best + kTol);
    });
  }
}

TEST(BcDemandQuery, DeterministicAcrossCalls) {
  GenParams params;
  params.m = 6;
  params.n = 1;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Instance inst = gen_instance(InstanceFamily::Xos, params, seed);
    const Bidder& b = inst.bidders[0];
    PriceVector p = PriceVector::uniform(6, 1.5);
    EXPECT_EQ(bc_demand_query(b.valuation, ItemSet::full(6), p, b.budget),
              bc_demand_query(b.valuation, ItemSet::full(6), p, b.budget));
  }
}

TEST(QueryCounterTest, CountsQueries) {
  QueryCounter qc;
  Valuation v = Valuation::additive({1, 1});
  demand_query(v, ItemSet::full(2), PriceVector::zero(2), &qc);
  bc_demand_query(v, ItemSet::full(2), PriceVector::zero(2), 1.0, &qc);
  bc_demand_query(v, ItemSet::full(2), PriceVector::zero(2), 1.0, &qc);
  EXPECT_EQ(qc.dq_count, 1u);
  EXPECT_EQ(qc.bcdq_count, 2u);
  EXPECT_GE(qc.value_count, 8u);
}

TEST(BcdqLemma, FootnoteInstancePasses) {
  Instance demo = footnote_demo_instance();
  const Bidder& b = demo.bidders[0];
  auto r = verify_bcdq_lemma(b.valuation, b.budget, ItemSet::full(2),
                             footnote_demo_prices());
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.chosen, ItemSet::of({0}, 2));
}

TEST(BcdqLemma, EmptyAvailabilityPassesVacuously) {
  Valuation v = Valuation::additive({5});
  EXPECT_TRUE(verify_bcdq_lemma(v, 1.0, ItemSet::empty(1), PriceVector({3})).pass);
}

TEST(BcdqLemma, HoldsOnRandomDraws) {
  GenParams params;
  params.m = 6;
  params.n = 1;
  params.budget_lo = 0.0;
  params.budget_hi = 16.0;
  CoinStream coins(4242);
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    InstanceFamily family = seed % 3 == 0 ? InstanceFamily::Coverage
                            : seed % 3 == 1 ? InstanceFamily::Xos
                                            : InstanceFamily::Additive;
    Instance inst = gen_instance(family, params, seed);
    const Bidder& b = inst.bidders[0];
    std::vector<double> prices(6);
    for (double& x : prices) x = coins.grid_uniform(0.0, 5.0);
    std::uint32_t avail =
        static_cast<std::uint32_t>(coins.below(1u << 6));
    auto r = verify_bcdq_lemma(b.valuation, b.budget, ItemSet(avail, 6),
                               PriceVector(std::move(prices)));
    EXPECT_TRUE(r.pass) << "seed " << seed << " ineq " << r.failed_inequality
                        << " T=" << ItemSet(r.witness_t, 6).str();
    ++checked;
  }
  EXPECT_EQ(checked, 150);
}

}  // namespace
}  // namespace lwca

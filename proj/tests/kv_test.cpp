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

#include "lwca/kv.hpp"

#include <gtest/gtest.h>

#include "lwca/generators.hpp"

namespace lwca {
namespace {

Instance two_identical_additive() {
  return Instance(2, {Bidder(Valuation::additive({8, 8}), 100.0),
                      Bidder(Valuation::additive({8, 8}), 100.0)});
}

TEST(ComputeL, MaxLiquidValueForUniverse) {
  EXPECT_DOUBLE_EQ(compute_L(two_identical_additive()), 16.0);
  EXPECT_DOUBLE_EQ(compute_L(Instance(1, {Bidder(Valuation::additive({7}), 50)})),
                   7.0);
  Instance three(2, {Bidder(Valuation::additive({3, 3}), 5.0),
                     Bidder(Valuation::additive({6, 6}), 9.0),
                     Bidder(Valuation::additive({2, 2}), 3.0)});
  EXPECT_DOUBLE_EQ(compute_L(three), 9.0);
  // Exactly one bidder weakly exceeds L.
  int count = 0;
  for (const auto& b : three.bidders)
    if (std::min(b.valuation.value(ItemSet::full(2)), b.budget) >= 9.0) ++count;
  EXPECT_EQ(count, 1);
}

TEST(ComputeL, RejectsDegenerateInstance) {
  Instance zero(2, {Bidder(Valuation::additive({0, 0}), 5.0),
                    Bidder(Valuation::additive({3, 3}), 0.0)});
  EXPECT_THROW(compute_L(zero), std::invalid_argument);
}

TEST(DefaultQ, MatchesClosedForm) {
  EXPECT_NEAR(default_q(4), 1.0 / 20.0, 1e-15);   // log2(16) = 4
  EXPECT_NEAR(default_q(1), 1.0 / 12.0, 1e-15);   // log2(4) = 2
  EXPECT_NEAR(default_q(16), 1.0 / 28.0, 1e-15);  // log2(64) = 6
}

TEST(RunKv, HandSimulatedTwoBidderInstance) {
  Instance inst = two_identical_additive();
  KvConfig cfg;
  cfg.L = compute_L(inst);
  cfg.q = 1.0;
  CoinStream coins(0);
  Outcome o = run_kv(inst, cfg, coins);
  // Initial price L/(4m) = 2; bidder 0 demands both items, prices double,
  // bidder 1 finds nothing left.
  EXPECT_DOUBLE_EQ(o.trace[0].prices[0], 2.0);
  EXPECT_EQ(o.allocation[0], ItemSet::full(2));
  EXPECT_EQ(o.allocation[1], ItemSet::empty(2));
  EXPECT_DOUBLE_EQ(o.payments[0], 4.0);
  EXPECT_DOUBLE_EQ(o.final_prices[0], 4.0);
  EXPECT_DOUBLE_EQ(o.final_prices[1], 4.0);
}

TEST(RunKv, AllRejectingCoinsLeaveTraceOfDemands) {
  Instance inst = two_identical_additive();
  KvConfig cfg;
  cfg.L = 16.0;
  cfg.q = 1e-12;
  CoinStream coins(3);
  Outcome o = run_kv(inst, cfg, coins);
  WelfareSummary w = outcome_welfare(inst, o);
  EXPECT_DOUBLE_EQ(w.lw, 0.0);
  EXPECT_EQ(o.trace[0].provisional, ItemSet::full(2));
  EXPECT_EQ(o.trace[1].provisional, ItemSet::full(2));
}

TEST(RunKv, RejectsBadConfig) {
  Instance inst = two_identical_additive();
  CoinStream coins(0);
  KvConfig cfg;
  cfg.L = 0.0;
  cfg.q = 0.5;
  EXPECT_THROW(run_kv(inst, cfg, coins), std::invalid_argument);
  cfg.L = 16.0;
  cfg.q = 1.5;
  EXPECT_THROW(run_kv(inst, cfg, coins), std::invalid_argument);
}

TEST(RunKvOverselling, BothCloneBiddersBuyEverything) {
  Instance inst = two_identical_additive();
  Outcome o = run_kv_overselling(inst, 16.0);
  EXPECT_EQ(o.allocation[0], ItemSet::full(2));
  EXPECT_EQ(o.allocation[1], ItemSet::full(2));
  EXPECT_DOUBLE_EQ(outcome_welfare(inst, o).lw, 32.0);
  EXPECT_DOUBLE_EQ(o.final_prices[0], 8.0);
  EXPECT_DOUBLE_EQ(o.final_prices[1], 8.0);
}

TEST(RunKvOverselling, SingleBidderMatchesStandardRun) {
  Instance inst(2, {Bidder(Valuation::additive({8, 8}), 100.0)});
  Outcome oversell = run_kv_overselling(inst, 16.0);
  KvConfig cfg;
  cfg.L = 16.0;
  cfg.q = 1.0;
  CoinStream coins(0);
  Outcome standard = run_kv(inst, cfg, coins);
  EXPECT_EQ(oversell.allocation, standard.allocation);
  EXPECT_EQ(oversell.payments, standard.payments);
}

TEST(RunKvOverselling, UnaffordablePricesAllocateNothing) {
  // L makes the initial price exceed every bidder's whole-universe value.
  Instance inst(2, {Bidder(Valuation::additive({1, 1}), 100.0),
                    Bidder(Valuation::additive({1, 1}), 100.0)});
  Outcome o = run_kv_overselling(inst, 1000.0);
  EXPECT_EQ(o.copy_counts(), (std::vector<int>{0, 0}));
  EXPECT_DOUBLE_EQ(outcome_welfare(inst, o).lw, 0.0);
}

TEST(KvLemmas, HandCheckedInstanceNumbers) {
  Instance inst = two_identical_additive();
  KvLemmaReport r = check_kv_lemmas(inst, 16.0);
  EXPECT_TRUE(r.pass);
  EXPECT_DOUBLE_EQ(r.lw, 32.0);
  EXPECT_DOUBLE_EQ(r.price_sum, 16.0);
  EXPECT_DOUBLE_EQ(r.opt_lw, 16.0);
  EXPECT_EQ(r.max_copies, 2);
  EXPECT_DOUBLE_EQ(r.copy_bound, 5.0);  // log2(8) + 2
}

TEST(KvLemmas, HoldOnRandomInstances) {
  GenParams params;
  params.n = 3;
  params.m = 5;
  params.budget_lo = 1.0;
  params.budget_hi = 16.0;
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    InstanceFamily family = seed % 3 == 0 ? InstanceFamily::Coverage
                            : seed % 3 == 1 ? InstanceFamily::Xos
                                            : InstanceFamily::Additive;
    Instance inst = gen_instance(family, params, seed);
    double L;
    try {
      L = compute_L(inst);
    } catch (const std::invalid_argument&) {
      continue;  // degenerate all-zero draw
    }
    KvLemmaReport r = check_kv_lemmas(inst, L);
    EXPECT_TRUE(r.pass) << "seed " << seed << " slacks " << r.slack_lb1 << " "
                        << r.slack_lb2 << " " << r.slack_apx;
    ++checked;
  }
  EXPECT_GE(checked, 70);
}

TEST(KvPriceTrajectory, FinalPriceIsInitialTimesTwoToDemandCount) {
  GenParams params;
  params.n = 4;
  params.m = 4;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Instance inst = gen_instance(InstanceFamily::Additive, params, seed);
    double L;
    try {
      L = compute_L(inst);
    } catch (const std::invalid_argument&) {
      continue;
    }
    Outcome o = run_kv_overselling(inst, L);
    std::vector<int> demanded(4, 0);
    for (const auto& step : o.trace)
      for (int j : step.provisional.members()) ++demanded[j];
    for (int j = 0; j < 4; ++j) {
      double expected = (L / 16.0) * std::pow(2.0, demanded[j]);
      EXPECT_NEAR(o.final_prices[j], expected, kTol);
    }
  }
}

TEST(RunKv, SingleBidderWinsItsDemandWithProbabilityQ) {
  // n = 1: the provisional demand is the query at prices L/(4m), and the
  // coin allocates it with probability q, so mean lw converges to
  // q * lv(demand).
  Instance inst(2, {Bidder(Valuation::additive({8, 8}), 10.0)});
  KvConfig cfg;
  cfg.L = compute_L(inst);
  cfg.q = 0.5;
  ItemSet demand =
      bc_demand_query(inst.bidders[0].valuation, ItemSet::full(2),
                      PriceVector::uniform(2, cfg.L / 8.0), inst.bidders[0].budget);
  double per_win = liquid_value(inst.bidders[0], demand);
  const int trials = 4000;
  double sum = 0.0;
  for (int t = 0; t < trials; ++t) {
    CoinStream coins(static_cast<std::uint64_t>(t));
    Outcome o = run_kv(inst, cfg, coins);
    EXPECT_TRUE(o.allocation[0] == demand || o.allocation[0].is_empty());
    sum += outcome_welfare(inst, o).lw;
  }
  double expected = cfg.q * per_win;
  double bound = 3.0 * per_win * std::sqrt(0.25 / trials);
  EXPECT_NEAR(sum / trials, expected, bound);
}

// With q = default_q(m), the sampled mean liquid welfare of the final
// allocation clears q*OPT/8 within three standard errors.
TEST(KvStatistical, MeanWelfareClearsCoinScaledBound) {
  GenParams params;
  params.n = 3;
  params.m = 4;
  params.budget_lo = 1.0;
  params.budget_hi = 16.0;
  for (std::uint64_t inst_seed = 0; inst_seed < 3; ++inst_seed) {
    Instance inst = gen_instance(InstanceFamily::Xos, params, inst_seed + 50);
    double L = compute_L(inst);
    double opt = opt_welfare(inst, Objective::Lw).value;
    KvConfig cfg;
    cfg.L = L;
    cfg.q = default_q(params.m);
    const int trials = 400;
    double sum = 0.0, sumsq = 0.0;
    for (int t = 0; t < trials; ++t) {
      CoinStream coins(mix_seed(inst_seed, 77) + static_cast<std::uint64_t>(t));
      double lw = outcome_welfare(inst, run_kv(inst, cfg, coins)).lw;
      sum += lw;
      sumsq += lw * lw;
    }
    double mean = sum / trials;
    double se = std::sqrt(std::max(0.0, (sumsq - trials * mean * mean) /
                                            (trials - 1)) /
                          trials);
    EXPECT_GE(mean, cfg.q * opt / 8.0 - 3.0 * se) << "seed " << inst_seed;
  }
}

}  // namespace
}  // namespace lwca

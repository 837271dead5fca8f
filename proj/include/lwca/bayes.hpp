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

#include "lwca/cm.hpp"
#include "lwca/coin_stream.hpp"
#include "lwca/engine.hpp"
#include "lwca/oracles.hpp"

namespace lwca {

// Seed-stream tags keeping ghost pricing samples, evaluation profiles and
// baseline samples pairwise independent.
inline constexpr std::uint64_t kGhostStreamTag = 0x67686f7374ULL;  // pricing
inline constexpr std::uint64_t kTrialStreamTag = 0x747269616cULL;  // mechanism
inline constexpr std::uint64_t kAlgStreamTag = 0x616c67ULL;        // baseline

struct BudgetDistribution {
  enum class Kind { Point, Uniform };
  Kind kind = Kind::Point;
  double lo = 0.0;  // point mass value when Kind::Point
  double hi = 0.0;

  static BudgetDistribution point(double b) { return {Kind::Point, b, b}; }
  static BudgetDistribution uniform(double lo, double hi) {
    return {Kind::Uniform, lo, hi};
  }

  double draw(CoinStream& coins) const {
    if (kind == Kind::Point) return lo;
    return coins.grid_uniform(lo, hi);
  }

  friend bool operator==(const BudgetDistribution& a,
                         const BudgetDistribution& b) {
    return a.kind == b.kind && a.lo == b.lo && a.hi == b.hi;
  }
};

// Generator for one bidder's (valuation, budget) pair. Weight-style values
// land on the 1/64 grid so downstream arithmetic stays exact.
struct BidderDistribution {
  enum class Family { Additive, Xos, Coverage, Finite };
  Family family = Family::Additive;

  double weight_lo = 0.0;
  double weight_hi = 8.0;
  int clause_count = 2;    // Xos
  int element_count = 6;   // Coverage
  int cover_degree = 2;    // Coverage: elements covered per item
  BudgetDistribution budget = BudgetDistribution::point(100.0);

  // Finite: explicit support, drawn uniformly.
  std::vector<Bidder> options;

  Bidder draw(int m, CoinStream& coins) const {
    switch (family) {
      case Family::Additive: {
        std::vector<double> w(static_cast<std::size_t>(m));
        for (double& x : w) x = coins.grid_uniform(weight_lo, weight_hi);
        return Bidder(Valuation::additive(std::move(w)), budget.draw(coins));
      }
      case Family::Xos: {
        std::vector<AdditiveClause> cs;
        cs.reserve(static_cast<std::size_t>(clause_count));
        for (int k = 0; k < clause_count; ++k) {
          std::vector<double> w(static_cast<std::size_t>(m));
          for (double& x : w) x = coins.grid_uniform(weight_lo, weight_hi);
          cs.emplace_back(std::move(w));
        }
        return Bidder(Valuation::xos(std::move(cs)), budget.draw(coins));
      }
      case Family::Coverage: {
        std::vector<std::uint64_t> covers(static_cast<std::size_t>(m), 0);
        for (auto& c : covers)
          for (int d = 0; d < cover_degree; ++d)
            c |= 1ULL << coins.below(static_cast<std::uint32_t>(element_count));
        std::vector<double> ew(static_cast<std::size_t>(element_count));
        for (double& x : ew) x = coins.grid_uniform(weight_lo, weight_hi);
        return Bidder(Valuation::coverage(std::move(covers), std::move(ew)),
                      budget.draw(coins));
      }
      case Family::Finite: {
        require(!options.empty(), "BidderDistribution: empty finite support");
        return options[coins.below(static_cast<std::uint32_t>(options.size()))];
      }
    }
    throw std::logic_error("BidderDistribution: unknown family");
  }

  friend bool operator==(const BidderDistribution& a,
                         const BidderDistribution& b) {
    return a.family == b.family && a.weight_lo == b.weight_lo &&
           a.weight_hi == b.weight_hi && a.clause_count == b.clause_count &&
           a.element_count == b.element_count &&
           a.cover_degree == b.cover_degree && a.budget == b.budget &&
           a.options == b.options;
  }
};

// Product distribution over instances: bidders draw independently.
struct DistributionSpec {
  int m = 0;
  std::vector<BidderDistribution> bidders;

  Instance draw(CoinStream& coins) const {
    std::vector<Bidder> bs;
    bs.reserve(bidders.size());
    for (const auto& d : bidders) bs.push_back(d.draw(m, coins));
    return Instance(m, std::move(bs));
  }

  int n() const { return static_cast<int>(bidders.size()); }

  friend bool operator==(const DistributionSpec& a, const DistributionSpec& b) {
    return a.m == b.m && a.bidders == b.bidders;
  }
};

// Per-item contribution of an allocation to the liquid welfare: the item's
// weight in its winner's prefix-capped liquid clause. Contributions sum to
// the allocation's liquid welfare exactly.
inline std::vector<double> lw_contributions(const Instance& inst,
                                            const std::vector<ItemSet>& alloc) {
  return supporting_prices(inst, alloc, /*liquid_prices=*/true).prices;
}

inline std::vector<ItemSet> baseline_allocation(const Instance& inst,
                                                AllocAlg alg) {
  if (alg == AllocAlg::Exact) return opt_welfare(inst, Objective::Lw).allocation;
  return greedy_alloc(inst, identity_order(inst.n())).allocation;
}

struct PriceEstimate {
  PriceVector prices;
  int samples_used = 0;
  std::vector<double> std_error;  // of each price estimate
};

// Prices each item at half its mean contribution to the baseline
// allocation's liquid welfare over k independently drawn ghost profiles.
inline PriceEstimate estimate_prices(const DistributionSpec& dist, AllocAlg alg,
                                     int k, std::uint64_t seed) {
  require(k >= 1, "estimate_prices: needs at least one sample");
  CoinStream ghosts = CoinStream(seed).fork(kGhostStreamTag);
  std::vector<double> sum(static_cast<std::size_t>(dist.m), 0.0);
  std::vector<double> sumsq(static_cast<std::size_t>(dist.m), 0.0);
  for (int t = 0; t < k; ++t) {
    Instance inst = dist.draw(ghosts);
    auto contrib = lw_contributions(inst, baseline_allocation(inst, alg));
    for (int j = 0; j < dist.m; ++j) {
      sum[static_cast<std::size_t>(j)] += contrib[static_cast<std::size_t>(j)];
      sumsq[static_cast<std::size_t>(j)] +=
          contrib[static_cast<std::size_t>(j)] * contrib[static_cast<std::size_t>(j)];
    }
  }
  PriceEstimate e;
  e.samples_used = k;
  std::vector<double> p(static_cast<std::size_t>(dist.m));
  e.std_error.resize(static_cast<std::size_t>(dist.m), 0.0);
  for (int j = 0; j < dist.m; ++j) {
    auto js = static_cast<std::size_t>(j);
    double mean = sum[js] / k;
    p[js] = mean / 2.0;
    if (k > 1) {
      double var = std::max(0.0, (sumsq[js] - k * mean * mean) / (k - 1));
      e.std_error[js] = std::sqrt(var / k) / 2.0;
    }
  }
  e.prices = PriceVector(std::move(p));
  return e;
}

struct BayesRun {
  Instance realized;
  Outcome outcome;
};

// Draws one fresh profile and runs the fixed-price auction on it: budget-
// constrained demand queries in the given arrival order, no price updates,
// every provisional bundle allocated.
inline BayesRun run_bayes(const DistributionSpec& dist,
                          const PriceVector& prices,
                          const std::vector<int>& order, std::uint64_t seed) {
  require(prices.size() == dist.m, "run_bayes: price vector mismatch");
  CoinStream coins(seed);
  Instance realized = dist.draw(coins);
  PostedPriceConfig cfg;
  cfg.order = order.empty() ? identity_order(realized.n()) : order;
  cfg.init = prices;
  cfg.q = 1.0;
  Outcome outcome = run_posted_price(realized, cfg, coins);
  return BayesRun{std::move(realized), std::move(outcome)};
}

struct GuaranteeReport {
  bool pass = false;
  int trials = 0;
  double mech_mean = 0.0;
  double mech_std_error = 0.0;
  double alg_mean = 0.0;
  double alg_std_error = 0.0;
  double ratio = 0.0;  // mech_mean / alg_mean (0 when alg_mean is 0)
  double combined_std_error = 0.0;
  PriceEstimate prices;
};

// Estimates the mechanism's expected liquid welfare over fresh profiles and
// the baseline's expected liquid welfare over independent ghost profiles,
// then checks mech >= alg/4 up to three combined standard errors.
inline GuaranteeReport evaluate_guarantee(const DistributionSpec& dist,
                                          AllocAlg alg, int k_prices,
                                          int trials, std::uint64_t seed,
                                          const std::vector<int>& order = {}) {
  require(trials >= 1, "evaluate_guarantee: needs at least one trial");
  GuaranteeReport r;
  r.trials = trials;
  r.prices = estimate_prices(dist, alg, k_prices, seed);

  double mech_sum = 0.0, mech_sumsq = 0.0;
  for (int t = 0; t < trials; ++t) {
    BayesRun run = run_bayes(dist, r.prices.prices, order,
                             mix_seed(seed, kTrialStreamTag) + static_cast<std::uint64_t>(t));
    double lw = outcome_welfare(run.realized, run.outcome).lw;
    mech_sum += lw;
    mech_sumsq += lw * lw;
  }

  CoinStream alg_coins = CoinStream(seed).fork(kAlgStreamTag);
  double alg_sum = 0.0, alg_sumsq = 0.0;
  for (int t = 0; t < trials; ++t) {
    Instance inst = dist.draw(alg_coins);
    double lw = allocation_lw(inst, baseline_allocation(inst, alg));
    alg_sum += lw;
    alg_sumsq += lw * lw;
  }

  auto finish = [&](double sum, double sumsq, double& mean, double& se) {
    mean = sum / trials;
    if (trials > 1) {
      double var = std::max(0.0, (sumsq - trials * mean * mean) / (trials - 1));
      se = std::sqrt(var / trials);
    } else {
      se = 0.0;
    }
  };
  finish(mech_sum, mech_sumsq, r.mech_mean, r.mech_std_error);
  finish(alg_sum, alg_sumsq, r.alg_mean, r.alg_std_error);
  r.ratio = r.alg_mean > 0.0 ? r.mech_mean / r.alg_mean : 0.0;
  r.combined_std_error = std::sqrt(r.mech_std_error * r.mech_std_error +
                                   0.0625 * r.alg_std_error * r.alg_std_error);
  r.pass = r.mech_mean >=
           r.alg_mean / 4.0 - 3.0 * r.combined_std_error - kTol;
  return r;
}

}  // namespace lwca

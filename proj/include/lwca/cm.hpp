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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "lwca/coin_stream.hpp"
#include "lwca/engine.hpp"
#include "lwca/oracles.hpp"

namespace lwca {

enum class AllocAlg { Greedy, Exact };

// Allocation over a bidder subset together with the per-item contribution
// each allocated item made to its winner's liquid value. Contributions sum
// to the allocation's liquid welfare; unallocated items contribute zero.
struct GreedyResult {
  std::vector<ItemSet> allocation;  // indexed by original bidder index
  std::vector<double> contribution;  // per item
};

// Greedy liquid-welfare allocation over the listed bidders: items are
// processed in ascending index, each going to the bidder with the largest
// marginal liquid value (lowest bidder index on ties; items with zero best
// marginal stay unassigned). The recorded contribution of an item is the
// marginal realized at its assignment step.
inline GreedyResult greedy_alloc(const Instance& inst,
                                 const std::vector<int>& bidders) {
  GreedyResult r;
  r.allocation.assign(static_cast<std::size_t>(inst.n()),
                      ItemSet::empty(inst.m));
  r.contribution.assign(static_cast<std::size_t>(inst.m), 0.0);
  std::vector<double> current(static_cast<std::size_t>(inst.n()), 0.0);
  for (int j = 0; j < inst.m; ++j) {
    int best_bidder = -1;
    double best_marginal = 0.0;
    for (int i : bidders) {
      const Bidder& b = inst.bidders[static_cast<std::size_t>(i)];
      double marginal =
          liquid_value(b, r.allocation[static_cast<std::size_t>(i)].with(j)) -
          current[static_cast<std::size_t>(i)];
      if (marginal > best_marginal + kTol) {
        best_marginal = marginal;
        best_bidder = i;
      }
    }
    if (best_bidder >= 0) {
      auto bi = static_cast<std::size_t>(best_bidder);
      r.allocation[bi] = r.allocation[bi].with(j);
      current[bi] += best_marginal;
      r.contribution[static_cast<std::size_t>(j)] = best_marginal;
    }
  }
  return r;
}

// Brute-force liquid-welfare optimum over the listed bidders, with item
// contributions read off the winners' prefix-capped liquid clauses.
inline GreedyResult exact_alloc(const Instance& inst,
                                const std::vector<int>& bidders) {
  Instance sub = subset_instance(inst, bidders);
  OptResult opt = opt_welfare(sub, Objective::Lw);
  GreedyResult r;
  r.allocation.assign(static_cast<std::size_t>(inst.n()),
                      ItemSet::empty(inst.m));
  for (std::size_t k = 0; k < bidders.size(); ++k)
    r.allocation[static_cast<std::size_t>(bidders[k])] = opt.allocation[k];
  PriceVector q = supporting_prices(inst, r.allocation, /*liquid_prices=*/true);
  r.contribution = q.prices;
  return r;
}

// Competitive-market mechanism configuration. beta scales the posted prices
// down from the per-item contributions; halved_prices additionally posts
// half of that (the variant the fixed-price analysis runs on).
struct CmConfig {
  double beta = 2.0;
  AllocAlg alg = AllocAlg::Greedy;
  bool halved_prices = false;
};

struct CmRun {
  Outcome outcome;
  std::vector<int> price_setters;  // S: compute prices, never receive items
  std::vector<int> buyers;         // T: face the posted prices
  PriceVector posted;
  GreedyResult pricing;
};

// Splits the bidders uniformly at random into price-setters S (ceil(n/2))
// and buyers T, prices every item at contribution/(2 beta) from an
// allocation computed on S alone, then runs a fixed-price auction over T in
// ascending index order. Bidders in S receive nothing and pay nothing.
inline CmRun run_cm(const Instance& inst, const CmConfig& cfg,
                    CoinStream& coins) {
  require(inst.n() >= 2, "run_cm: needs at least two bidders");
  require(cfg.beta > 1.0, "run_cm: beta must exceed 1");

  std::vector<int> perm = identity_order(inst.n());
  coins.shuffle(perm);
  std::size_t s_size = (static_cast<std::size_t>(inst.n()) + 1) / 2;
  CmRun run;
  run.price_setters.assign(perm.begin(), perm.begin() + static_cast<long>(s_size));
  run.buyers.assign(perm.begin() + static_cast<long>(s_size), perm.end());
  std::sort(run.price_setters.begin(), run.price_setters.end());
  std::sort(run.buyers.begin(), run.buyers.end());

  // Greedy needs submodular liquid valuations; fall back to the exact
  // allocator when the check fails (or cannot run).
  AllocAlg alg = cfg.alg;
  if (alg == AllocAlg::Greedy && inst.m <= kMaxClassCheckItems) {
    for (int i : run.price_setters) {
      auto res = check_class(liquid(inst.bidders[static_cast<std::size_t>(i)]),
                             SetFunctionClass::Submodular);
      if (!res.holds) {
        alg = AllocAlg::Exact;
        break;
      }
    }
  }
  run.pricing = alg == AllocAlg::Greedy ? greedy_alloc(inst, run.price_setters)
                                        : exact_alloc(inst, run.price_setters);

  double denom = 2.0 * cfg.beta * (cfg.halved_prices ? 2.0 : 1.0);
  std::vector<double> p(static_cast<std::size_t>(inst.m));
  for (int j = 0; j < inst.m; ++j)
    p[static_cast<std::size_t>(j)] =
        run.pricing.contribution[static_cast<std::size_t>(j)] / denom;
  run.posted = PriceVector(std::move(p));

  PostedPriceConfig pp;
  pp.order = run.buyers;
  pp.init = run.posted;
  pp.q = 1.0;
  run.outcome = run_posted_price(inst, pp, coins);
  return run;
}

// Closed-form lower-bound constant on the fraction of the optimal liquid
// welfare the competitive-market mechanism attains in expectation, clamped
// below at zero.
inline double cm_bound(double eps, double delta, double beta) {
  require(eps >= 0.0 && eps < 2.0, "cm_bound: eps outside [0,2)");
  require(delta >= 0.0 && delta <= 0.5, "cm_bound: delta outside [0,1/2]");
  require(beta > 1.0, "cm_bound: beta must exceed 1");
  double value = (1.0 - 2.0 * delta) *
                 (2.0 * (beta - 1.0) - eps * (3.0 * beta - 1.0)) /
                 (16.0 * beta * (beta - 1.0));
  return std::max(value, 0.0);
}

// Empirical competitiveness of a market: the frequency, over random
// half-splits, with which the surviving half loses more than an eps/2
// fraction of the optimal liquid welfare.
struct CompetitivenessReport {
  double eps = 0.0;
  int trials = 0;
  int failures = 0;
  double delta_hat = 0.0;
  double std_error = 0.0;
  double upper95 = 0.0;  // Wilson upper confidence bound
  double opt_lw = 0.0;
};

inline CompetitivenessReport measure_competitiveness(const Instance& inst,
                                                     double eps, int trials,
                                                     std::uint64_t seed) {
  require(inst.m <= 8 && inst.n() <= 6,
          "measure_competitiveness: instance too large for brute-force splits");
  require(eps >= 0.0 && eps < 2.0, "measure_competitiveness: eps outside [0,2)");
  require(trials >= 1, "measure_competitiveness: needs at least one trial");

  CompetitivenessReport r;
  r.eps = eps;
  r.trials = trials;
  r.opt_lw = opt_welfare(inst, Objective::Lw).value;
  double threshold = (1.0 - eps / 2.0) * r.opt_lw;

  CoinStream coins(seed);
  std::size_t removed = (static_cast<std::size_t>(inst.n()) + 1) / 2;
  for (int t = 0; t < trials; ++t) {
    std::vector<int> perm = identity_order(inst.n());
    coins.shuffle(perm);
    std::vector<int> survivors(perm.begin() + static_cast<long>(removed),
                               perm.end());
    std::sort(survivors.begin(), survivors.end());
    double opt_t =
        opt_welfare(subset_instance(inst, survivors), Objective::Lw).value;
    if (opt_t < threshold - kTol) ++r.failures;
  }
  r.delta_hat = static_cast<double>(r.failures) / trials;
  r.std_error = std::sqrt(r.delta_hat * (1.0 - r.delta_hat) / trials);
  const double z = 1.959963984540054;
  double nt = static_cast<double>(trials);
  double center = r.delta_hat + z * z / (2.0 * nt);
  double margin = z * std::sqrt(r.delta_hat * (1.0 - r.delta_hat) / nt +
                                z * z / (4.0 * nt * nt));
  r.upper95 = std::min(1.0, (center + margin) / (1.0 + z * z / nt));
  return r;
}

}  // namespace lwca

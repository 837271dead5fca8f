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
#include <vector>

#include "lwca/engine.hpp"
#include "lwca/oracles.hpp"

namespace lwca {

// Worst-case posted-price mechanism: uniform initial item prices L/(4m),
// a coin with success probability q per bidder, and price doubling on every
// provisional demand.
struct KvConfig {
  double L = 0.0;
  double q = 1.0;
  std::vector<int> order;  // empty = index order
};

// The statistical scale parameter: the largest liquid value any single
// bidder has for the whole universe. Exactly one bidder (the argmax, lowest
// index on ties) weakly exceeds it.
inline double compute_L(const Instance& inst) {
  double best = 0.0;
  for (const auto& b : inst.bidders)
    best = std::max(best, std::min(b.valuation.value(ItemSet::full(inst.m)),
                                   b.budget));
  require(best > 0.0, "compute_L: all liquid valuations are zero");
  return best;
}

// Allocation probability 1 / (4 (log2(4m) + 1)).
inline double default_q(int m) {
  require(m >= 1, "default_q: m must be positive");
  return 1.0 / (4.0 * (std::log2(4.0 * static_cast<double>(m)) + 1.0));
}

inline PostedPriceConfig kv_engine_config(const Instance& inst,
                                          const KvConfig& cfg,
                                          bool overselling) {
  require(cfg.L > 0.0, "run_kv: L must be positive");
  require(cfg.q > 0.0 && cfg.q <= 1.0, "run_kv: q outside (0,1]");
  PostedPriceConfig pp;
  pp.order = cfg.order.empty() ? identity_order(inst.n()) : cfg.order;
  pp.init = PriceVector::uniform(inst.m, cfg.L / (4.0 * inst.m));
  pp.q = overselling ? 1.0 : cfg.q;
  pp.update = doubling_price_update();
  pp.overselling = overselling;
  return pp;
}

inline Outcome run_kv(const Instance& inst, const KvConfig& cfg,
                      CoinStream& coins) {
  return run_posted_price(inst, kv_engine_config(inst, cfg, false), coins);
}

// Analysis-only variant: every provisional demand is allocated (q = 1) and
// items are never removed, so each item can be sold multiple times. The
// outcome is deterministic.
inline Outcome run_kv_overselling(const Instance& inst, double L) {
  KvConfig cfg;
  cfg.L = L;
  cfg.q = 1.0;
  CoinStream coins(0);
  return run_posted_price(inst, kv_engine_config(inst, cfg, true), coins);
}

// Inequalities the overselling run must satisfy on every instance:
//   lb1:    lw(S) >= sum_j p_j - L/4          (final prices)
//   lb2:    lw(S) >= OPT - sum_j p_j
//   apx:    lw(S) >= (3/8) OPT
//   copies: every item is sold at most log2(4m) + 2 times
struct KvLemmaReport {
  bool pass = false;
  bool lb1 = false, lb2 = false, apx = false, copies_ok = false;
  double lw = 0.0;
  double price_sum = 0.0;
  double opt_lw = 0.0;
  double L = 0.0;
  double slack_lb1 = 0.0, slack_lb2 = 0.0, slack_apx = 0.0;
  int max_copies = 0;
  double copy_bound = 0.0;
};

inline KvLemmaReport check_kv_lemmas(const Instance& inst, double L) {
  require(inst.m <= 8 && inst.n() <= 4,
          "check_kv_lemmas: instance too large for brute-force baseline");
  Outcome o = run_kv_overselling(inst, L);

  KvLemmaReport r;
  r.L = L;
  r.lw = outcome_welfare(inst, o).lw;
  for (int j = 0; j < inst.m; ++j) r.price_sum += o.final_prices[j];
  r.opt_lw = opt_welfare(inst, Objective::Lw).value;

  r.slack_lb1 = r.lw - (r.price_sum - L / 4.0);
  r.slack_lb2 = r.lw - (r.opt_lw - r.price_sum);
  r.slack_apx = r.lw - 0.375 * r.opt_lw;
  r.lb1 = r.slack_lb1 >= -kTol;
  r.lb2 = r.slack_lb2 >= -kTol;
  r.apx = r.slack_apx >= -kTol;

  auto copies = o.copy_counts();
  for (int c : copies) r.max_copies = std::max(r.max_copies, c);
  r.copy_bound = std::log2(4.0 * inst.m) + 2.0;
  r.copies_ok = static_cast<double>(r.max_copies) <= r.copy_bound + kTol;

  r.pass = r.lb1 && r.lb2 && r.apx && r.copies_ok;
  return r;
}

}  // namespace lwca
